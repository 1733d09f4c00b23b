#pragma once

#include "ballpot/core.hpp"
#include "ballpot/quadrature.hpp"

namespace ballpot {

/// Renormalize a near-unit vector onto S^{n-1}; rejects points further than
/// tol from the sphere.
Vec to_boundary(VecRef eta, double tol = 1e-9);

/// Poisson kernel of the unit ball, (1 - |x|^2) / |x - eta|^n, for interior
/// x and unit eta.  Its integral against the normalized surface measure is
/// identically one.
double poisson_kernel(VecRef x, VecRef eta);

/// Gradient of the Poisson kernel in its first argument:
///   -2x / |x-eta|^n - n (1 - |x|^2) (x - eta) / |x-eta|^{n+2}.
Vec poisson_kernel_gradient(VecRef x, VecRef eta);

/// Green function of the unit ball (n >= 3):
///   c_n ( |x-y|^{2-n} - (1 + |x|^2 |y|^2 - 2<x,y>)^{(2-n)/2} ).
/// Positive and symmetric in (x, y); callers must split the x = y
/// singularity (points closer than 1e-12 raise std::domain_error).
double green_function(VecRef x, VecRef y);

/// Gradient of the Green function in its first argument:
///   c_n (n-2) [ (y - x)/|x-y|^n + (|y|^2 x - y)/s^{n/2} ],
/// with s = 1 + |x|^2 |y|^2 - 2<x,y>.  At x = 0 this reduces to
/// (|y|^{-n} - 1) y / omega_{n-1}, so |G_x(0,y)| = (|y|^{1-n} - |y|)/omega_{n-1}.
Vec green_function_gradient(VecRef x, VecRef y);

}  // namespace ballpot
