#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "ballpot/report.hpp"
#include "ballpot/smooth_map.hpp"

namespace ballpot {

/// Pointwise distortion data of a square map.
struct DistortionReport {
  double grad_norm = 0.0;
  double min_stretch = 0.0;
  double jacobian = 0.0;
  double K_estimate = 1.0;
  bool degenerate = false;
};

DistortionReport distortion(const SmoothMap& u, VecRef x);

/// Distortion of a linear map: max(|A|^n / |det A|, |det A| / l(A)^n).
double linear_distortion(const Mat& a);

/// Double inequality for the generalized cross product under a
/// K-quasiconformal linear map:
///   K^{1-n} |A|^{n-1} |v_1 x...x v_{n-1}| <= |A v_1 x...x A v_{n-1}|
///                                         <= |A|^{n-1} |v_1 x...x v_{n-1}|.
EstimateReport cross_inequality_check(const Mat& a, const std::vector<Vec>& vs, double K);

/// A bounded C^2 target domain exposed through distance/curvature oracles.
/// signed_distance is positive inside; principal curvatures are taken with
/// respect to the inward normal (positive for convex domains) and reach
/// satisfies 1/reach > kappa_max.
struct C2Domain {
  std::string kind;
  int n = 3;
  Vec params;
  bool convex = true;
  double reach = 0.0;
  double kappa_max = 0.0;
  std::function<double(VecRef)> signed_distance;
  std::function<Vec(VecRef)> boundary_projection;   // interior point -> nearest boundary point
  std::function<Vec(VecRef)> inward_normal;         // boundary point -> unit inward normal
  std::function<Vec(VecRef)> principal_curvatures;  // boundary point -> n-1 curvatures
  std::function<Mat(VecRef)> principal_basis;       // boundary point -> n x (n-1) directions

  bool in_collar(VecRef x, double frac = 0.8) const {
    const double d = signed_distance(x);
    return d > 0.0 && d < frac * reach;
  }
};

C2Domain ball_domain(int n, double radius);
C2Domain ellipsoid_domain(const Vec& semiaxes);

/// Text format: "ball:R" or "ellipsoid:a1,a2,...,an".
C2Domain parse_domain(int n, const std::string& text);

/// Orthonormal basis of the orthogonal complement of a unit vector,
/// returned as the n x (n-1) matrix of tangent columns.
Mat tangent_basis(VecRef normal);

/// Hessian of the distance function at a collar point, assembled from the
/// projection's principal curvatures: sum_i -kappa_i/(1 - kappa_i d) p_i p_i^T.
Mat distance_hessian(const C2Domain& dom, VecRef x);

/// Finite-difference check of the Hessian eigenstructure
/// {-kappa_i/(1 - kappa_i d), 0}, the trace identity and the alignment of
/// the null direction with the inward normal.
EstimateReport distance_identities(const C2Domain& dom, VecRef x);

/// chi(x) = -d(u(x)) with chain-rule gradient and the curvature-assembled
/// Laplacian; gradient/Laplacian require u(x) in the collar.
SmoothMap chi_compose(const SmoothMap& u, const C2Domain& dom);

/// |grad chi| <= |grad u| <= K^{2/n} |grad chi| at a collar sample.
EstimateReport gradient_sandwich_check(const SmoothMap& u, const C2Domain& dom, double K,
                                       VecRef x);

/// |Lap chi| <= K^{4/n} (a + n kappa0/(1 - mu kappa0)) |grad chi|^2 + b.
EstimateReport laplacian_transfer_check(const SmoothMap& u, double a, double b,
                                        const C2Domain& dom, double K, VecRef x);

/// Near-boundary Jacobian lower bound for a quasiconformal map onto a
/// convex domain: J_u(rt) >= dist(u(0), boundary)^n / (2K)^{n^2-n} at
/// r = 1 - 1e-3.
EstimateReport boundary_jacobian_bound(const SmoothMap& u, double K, const C2Domain& dom,
                                       VecRef t);

/// Sampled Hoelder probe at exponent K^{1/(1-n)}: fits the smallest M1 with
/// |u(x) - u(y)| <= M1 |x - y|^{K^{1/(1-n)}} over random pairs.
EstimateReport mori_exponent_probe(const SmoothMap& u, double K, int pairs, uint64_t seed);

}  // namespace ballpot
