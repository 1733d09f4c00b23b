#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ballpot/core.hpp"

namespace ballpot {

using VecRef = Eigen::Ref<const Vec>;

/// One-dimensional Gauss rule on [-1,1].
struct Rule1D {
  Vec nodes;
  Vec weights;
};

/// Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta, via the
/// Golub-Welsch eigensolve of the three-term recurrence.
Rule1D gauss_jacobi(int npts, double alpha, double beta);

/// Gauss-Legendre rule (Jacobi with alpha = beta = 0).
Rule1D gauss_legendre(int npts);

/// Tensor-product rule on S^{n-1}: Gauss-Jacobi in the cosine of each polar
/// angle, trapezoid in the periodic angle.  Weights sum to omega_{n-1} and
/// polynomials of degree <= 2*level - 1 are integrated exactly.  The node
/// count per polar angle is polar_nodes(n, level), chosen well above the
/// exactness requirement so that Poisson-kernel integrands stay resolvable
/// up to |x| = 0.9 at level 8 (certified_tolerance below).
struct SphereRule {
  int n = 3;
  int level = 1;
  Mat nodes;    // n x count, unit columns
  Vec weights;  // positive, sum omega_{n-1}

  int count() const { return static_cast<int>(weights.size()); }

  /// Integral against the unnormalized surface measure.
  template <class F>
  double integrate(F&& f) const {
    std::vector<double> terms(static_cast<size_t>(count()));
    for (int i = 0; i < count(); ++i) terms[i] = weights(i) * f(nodes.col(i));
    return pairwise_sum(terms);
  }

  /// Integral against the probability measure d-sigma = dS / omega_{n-1};
  /// every operation implementing a kernel identity goes through this.
  template <class F>
  double integrate_normalized(F&& f) const {
    return integrate(std::forward<F>(f)) / surface_measure(n);
  }

  /// Vector-valued variant of integrate_normalized.
  Vec integrate_normalized_vec(int m, const std::function<Vec(VecRef)>& f) const;

  /// Quadrature error bound documented for normalization-class integrands
  /// (Poisson kernel at |x| <= 0.9, smooth boundary data).
  double certified_tolerance() const;
};

/// Nodes-per-polar-angle schedule; 14*level for n = 3,4 (calibrated so the
/// Poisson normalization at |x| = 0.9 is exact to ~1e-10 at level 8),
/// coarser for n = 5,6 where tensor counts explode.
int polar_nodes(int n, int level);

SphereRule build_sphere_rule(int n, int level);

/// Product rule on the unit ball: radial Gauss-Jacobi with weight r^{n-1}
/// tensorized with a SphereRule.  Weights sum to omega_{n-1}/n.
struct BallRule {
  int n = 3;
  int level = 1;
  Mat nodes;
  Vec weights;

  int count() const { return static_cast<int>(weights.size()); }

  template <class F>
  double integrate(F&& f) const {
    std::vector<double> terms(static_cast<size_t>(count()));
    for (int i = 0; i < count(); ++i) terms[i] = weights(i) * f(nodes.col(i));
    return pairwise_sum(terms);
  }

  Vec integrate_vec(int m, const std::function<Vec(VecRef)>& f) const;
};

BallRule build_ball_rule(int n, int level);

/// Polar rule about a singular point x for integrands with a weak
/// |y-x|^(2-n) (or |y-x|^(1-n)) singularity.  Directions come from a shared
/// SphereRule; each ray [0, R(eta)] to the sphere exit is split at an inner
/// radius delta.  The polar Jacobian r^{n-1} cancels the singularity, so
/// the radial integrand is smooth on both panels; the inner panel
/// integrates the model kernel r^(2-n) * r^(n-1) = r exactly.
struct SingularRule {
  std::shared_ptr<const SphereRule> directions;
  Rule1D inner;   // Gauss-Legendre reference rule for [0, delta]
  Rule1D outer;   // Gauss-Legendre reference rule for [delta, R(eta)]
  double delta_floor = 1e-3;
  double delta_cap = 0.25;

  int n() const { return directions->n; }

  /// Inner radius for singular center x: half the distance to the sphere,
  /// clamped to [delta_floor, delta_cap] and kept below the ray exit.
  double delta_for(VecRef x) const;
};

SingularRule build_singular_rule(int n, int level);

/// Integral of f over the whole unit ball; f may blow up like |y-x|^(2-n)
/// at x (and only there).
double integrate_singular(const std::function<double(VecRef)>& f, VecRef x,
                          const SingularRule& rule);

Vec integrate_singular_vec(int m, const std::function<Vec(VecRef)>& f, VecRef x,
                           const SingularRule& rule);

/// Same integrand class, but over the ball B(x, rho) (which must be a
/// subset of the unit ball for the potential-theory identities to apply;
/// this routine integrates over B(x, rho) regardless).
double integrate_ball_singular(const std::function<double(VecRef)>& f, VecRef x,
                               double rho, const SingularRule& rule);

Vec integrate_ball_singular_vec(int m, const std::function<Vec(VecRef)>& f,
                                VecRef x, double rho, const SingularRule& rule);

/// Flat CSV serialization: one "x1,...,xn,w" row per node.
void save_rule_csv(const std::string& path, const Mat& nodes, const Vec& weights);
bool load_rule_csv(const std::string& path, int n, Mat* nodes, Vec* weights);

/// Load the sphere rule from <cache_dir>/sphere_n<n>_L<level>.csv if present,
/// otherwise build it and (best-effort) save.  Empty cache_dir just builds.
SphereRule cached_sphere_rule(int n, int level, const std::string& cache_dir);

}  // namespace ballpot
