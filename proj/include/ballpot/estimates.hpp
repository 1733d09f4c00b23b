#pragma once

#include <cstdint>
#include <functional>

#include "ballpot/potential.hpp"
#include "ballpot/report.hpp"
#include "ballpot/smooth_map.hpp"

namespace ballpot {

/// Certificate for the differential inequality |Lap u| <= a |grad u|^2 + b.
/// sup_check is the sampled maximum of |Lap u| - a |grad u|^2 - b; the
/// certificate is valid when it is <= 0 (up to sampling tolerance).
struct PoissonCertificate {
  double a = 0.0;
  double b = 0.0;
  double sup_check = 0.0;
};

/// Samples the inequality defect for a given coefficient a and returns the
/// certificate with b = max(0, sup(|Lap u| - a |grad u|^2)).
PoissonCertificate certify_poisson_inequality(const SmoothMap& u, double a,
                                              int samples, uint64_t seed,
                                              double radius = 0.98);

/// Parameters of the interior gradient-bound machinery.
struct MainLemmaParams {
  double alpha = 2.0;   // bound on |grad G| of the auxiliary function
  double beta = 2.0;    // coefficient of |grad u|^2 in Lap(G(u)) >= ...
  double gamma = 0.0;   // constant subtracted there
  double theta = 0.5;   // radius fraction, 0 < lambda < theta < 1
  double lambda = 0.0;
  double epsilon = std::numeric_limits<double>::infinity();  // continuity scale
  double d = 1.0;       // distance weight at the maximizing point
  double r0 = 1.0;      // distance from the base point to the domain boundary
  double k_max = 0.0;   // max |u(x) - u(x0)| over the ball
};

enum class SubstitutionKind { squared_modulus, exponential };

/// The (alpha, beta, gamma) triples induced by G(u) = |u|^2 (needs a < 1)
/// and by phi(t) = e^{2at} (needs a > 0).
MainLemmaParams theorem_substitutions(SubstitutionKind kind, const PoissonCertificate& cert);

/// Finite-difference check of Lap |u|^2 = 2 ||grad u||_F^2 + 2 <u, Lap u>.
EstimateReport check_chain_rule(const SmoothMap& u, VecRef x);

/// Finite-difference check of Lap phi >= beta |grad u|^2 - gamma for the
/// substituted auxiliary function.
EstimateReport check_substitution_inequality(const SmoothMap& u, const PoissonCertificate& cert,
                                             SubstitutionKind kind, VecRef x);

/// Energy bound: int_{B(x,rho1)} c_n |grad u|^2 dy against the explicit
/// annulus constant times (gamma rho^2 / (2 n beta) + (alpha/beta) max_{|y-x|=rho} |u - u(x)|).
EstimateReport verify_energy_bound(const SmoothMap& u, VecRef x, double rho, double rho1,
                                   const MainLemmaParams& params, const BallRule& unit_ball,
                                   const SphereRule& sphere, uint64_t seed);

/// Interior gradient bound at x0 through boundary mean deviation plus the
/// kernel-weighted Laplacian mass; evaluates both the mean-deviation form
/// and the Schwarz-constant form (reported as rhs and params["rhs_schwarz"];
/// pass requires both margins).
EstimateReport verify_gradient_bound(const SmoothMap& y_map, VecRef x0, double rho, const Vec& z,
                                     const SphereRule& sphere, const SingularRule& singular);

/// One evaluation of the quadratic-inequality machinery at fixed theta.
struct MainLemmaEval {
  double a_coeff = 0.0;  // A
  double b_coeff = 0.0;  // B
  double four_ab = 0.0;
  bool feasible = false;
  double bound = std::numeric_limits<double>::infinity();  // 2B/(1+sqrt(1-4AB))
};

MainLemmaEval main_lemma_bound(const MainLemmaParams& params, const PoissonCertificate& cert,
                               int n);

/// Golden-section-refined grid search over theta in (0,1) with
/// lambda = sin(theta).  delta_u is the empirical modulus of continuity;
/// when use_modulus is false the continuity branch is disabled and
/// feasibility is the a-priori one (possible exactly when the first-term
/// constant stays below 1/(4 A'(0+) ...), i.e. small a).
struct ThetaSearch {
  bool feasible = false;
  double theta = 0.0;
  double bound = std::numeric_limits<double>::infinity();
  double four_ab = std::numeric_limits<double>::infinity();
  double theta_prefix_end = 0.0;  // feasible interval (grid prefix) right end
};

ThetaSearch search_theta(const MainLemmaParams& base, const PoissonCertificate& cert, int n,
                         const std::function<double(double)>& delta_u, bool use_modulus);

/// Empirical modulus of continuity: delta such that |x - y| < delta keeps
/// |u(x) - u(y)| <= eps on the sampled mesh, shrunk by the 1.5 safety
/// factor.  A lower bound of the true delta_u.
double empirical_modulus_delta(const SmoothMap& u, double eps, int samples, uint64_t seed,
                               double radius = 0.98);

/// Full driver: measures M = max (r0 - |x - x0|) |grad u|, K_max and d on a
/// sampled grid, runs the theta search with the substituted constants, and
/// checks that the certified bound dominates M (and the final inequality
/// |grad u(x0)| <= c1 (1 + K_max / r0)).
EstimateReport verify_main_lemma(const SmoothMap& u, const PoissonCertificate& cert,
                                 SubstitutionKind kind, VecRef x0, double r0, int grid,
                                 uint64_t seed);

/// Boundary comparison |u(x) - u(t)| against the harmonic majorants
/// P[u] and P[|u|^2]; requires cert.a < 1/2 and |u| <= 1.
EstimateReport verify_lemma9(const SmoothMap& u, const PoissonCertificate& cert, VecRef x,
                             VecRef t, const SphereRule& sphere);

/// Boundary comparison for scalar chi through P[e^{a chi}] and P[e^{-a chi}];
/// requires cert.a > 0 and |chi| <= 1.
EstimateReport verify_lemma15(const SmoothMap& chi, const PoissonCertificate& cert, VecRef x,
                              VecRef t, const SphereRule& sphere);

/// Sampled estimate of the boundary C^{1,alpha} seminorm: value sup plus
/// tangential-gradient sup plus the alpha-quotient of the tangential
/// gradient over nearby pairs.  A lower-bound estimator, nondecreasing in
/// the sample count.
double holder_seminorm(const BoundaryData& f, double alpha, int samples, uint64_t seed);

}  // namespace ballpot
