#pragma once

#include "ballpot/kernels.hpp"
#include "ballpot/quadrature.hpp"
#include "ballpot/smooth_map.hpp"

namespace ballpot {

/// Radius margin below which Poisson integrals at the given level are
/// fully resolved; evaluation closer to the sphere only triggers an
/// accuracy note in reports, not an error.
double poisson_margin(int level);

bool poisson_eval_reliable(VecRef x, const SphereRule& rule);

/// Harmonic extension P[f](x): quadrature of P(x,.) f against the
/// normalized surface measure.
Vec poisson_integral(const BoundaryData& f, VecRef x, const SphereRule& rule);

/// Gradient of P[f] at x, an m x n matrix with rows indexed by target
/// components: integral of P_x(x,.) tensor f.
Mat poisson_gradient(const BoundaryData& f, VecRef x, const SphereRule& rule);

/// Green potential int_B G(x,y) g(y) dy through the singularity-splitting
/// rule.
Vec green_potential(const SmoothMap& g, VecRef x, const SingularRule& rule);

/// Gradient of the Green potential at x (rows = target components).
Mat green_potential_gradient(const SmoothMap& g, VecRef x, const SingularRule& rule);

/// Representation-formula solution of Delta u = g with boundary values f:
/// P[f](x) - int_B G(x,y) g(y) dy.
Vec solve_dirichlet(const BoundaryData& f, const SmoothMap& g, VecRef x,
                    const SphereRule& sphere, const SingularRule& singular);

/// Defect of the mean-value identity on the ball B(x, rho):
///   |int_S (u(x + rho eta) - u(x)) dsigma
///      - int_{|y-x|<=rho} (c_n |y-x|^{2-n} - c_n rho^{2-n}) Lap u(y) dy|,
/// with dsigma the probability measure.  Near zero for any C^2 map.
double mean_value_residual(const SmoothMap& u, VecRef x, double rho,
                           const SphereRule& sphere, const SingularRule& singular);

/// Gradient of u at x reconstructed from its boundary values and Laplacian
/// via the differentiated representation formula.
Mat gradient_representation(const SmoothMap& u, VecRef x,
                            const SphereRule& sphere, const SingularRule& singular);

}  // namespace ballpot
