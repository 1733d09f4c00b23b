#pragma once

#include "ballpot/random.hpp"
#include "ballpot/smooth_map.hpp"

namespace ballpot {

SmoothMap identity_map(int n);

/// u(x) = A x (m x n matrix allowed).
SmoothMap linear_map(const Mat& a);

/// Moebius automorphism of the unit ball determined by a pole |a| < 1:
/// maps a to 0 and 0 to -a; conformal (K = 1), not harmonic for n >= 3.
SmoothMap mobius_map(const Vec& a);

/// Radial stretch |x|^{s-1} x; quasiconformal self-map of the ball with
/// distortion max(s, 1/s)^{n-1} for s >= 1 resp. s^{1-n}-type for s < 1.
SmoothMap radial_stretch(int n, double s);

/// Closed-form distortion of the radial stretch.
double radial_stretch_distortion(int n, double s);

/// Harmonic-plus-quadratic test map scaled into the closed unit ball of
/// R^m, with analytic gradient/Laplacian; |Lap u| is the constant lap_norm,
/// so (a, lap_norm) certifies the differential inequality for any a >= 0.
struct HqInstance {
  SmoothMap map;
  double lap_norm = 0.0;
};

HqInstance make_hq_instance(int n, int m, Rng& rng, bool include_quadratic);

/// Scalar instance (|x|^2 - 1)/2: range [-1/2, 0], Laplacian n, zero
/// boundary values.
SmoothMap radial_bowl(int n);

}  // namespace ballpot
