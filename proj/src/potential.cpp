#include "ballpot/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace ballpot {

double poisson_margin(int level) { return 0.4 / std::max(1, level); }

bool poisson_eval_reliable(VecRef x, const SphereRule& rule) {
  return x.norm() <= 1.0 - poisson_margin(rule.level);
}

Vec poisson_integral(const BoundaryData& f, VecRef x, const SphereRule& rule) {
  if (x.size() != rule.n) throw std::invalid_argument("poisson_integral: dimension mismatch");
  if (x.squaredNorm() >= 1.0) throw std::domain_error("poisson_integral: x must be interior");
  if (f.m == 1 && f.scalar_f) {
    Vec out(1);
    out(0) = rule.integrate_normalized(
        [&](VecRef eta) { return poisson_kernel(x, eta) * f.eval1(eta); });
    return out;
  }
  return rule.integrate_normalized_vec(
      f.m, [&](VecRef eta) -> Vec { return poisson_kernel(x, eta) * f.eval(eta); });
}

Mat poisson_gradient(const BoundaryData& f, VecRef x, const SphereRule& rule) {
  const int n = rule.n;
  const int m = f.m;
  if (x.squaredNorm() >= 1.0) throw std::domain_error("poisson_gradient: x must be interior");
  Vec flat = rule.integrate_normalized_vec(m * n, [&](VecRef eta) -> Vec {
    Vec px = poisson_kernel_gradient(x, eta);
    Vec fv = f.eval(eta);
    Vec out(m * n);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) out(r * n + c) = fv(r) * px(c);
    return out;
  });
  Mat g(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = flat(r * n + c);
  return g;
}

Vec green_potential(const SmoothMap& g, VecRef x, const SingularRule& rule) {
  if (x.squaredNorm() >= 1.0) throw std::domain_error("green_potential: x must be interior");
  if (g.m == 1 && g.scalar_value) {
    Vec out(1);
    out(0) = integrate_singular(
        [&](VecRef y) { return green_function(x, y) * g.eval1(y); }, x, rule);
    return out;
  }
  return integrate_singular_vec(
      g.m, [&](VecRef y) -> Vec { return green_function(x, y) * g.eval(y); }, x, rule);
}

Mat green_potential_gradient(const SmoothMap& g, VecRef x, const SingularRule& rule) {
  const int n = rule.n();
  const int m = g.m;
  Vec flat = integrate_singular_vec(
      m * n,
      [&](VecRef y) -> Vec {
        Vec gx = green_function_gradient(x, y);
        Vec gv = g.eval(y);
        Vec out(m * n);
        for (int r = 0; r < m; ++r)
          for (int c = 0; c < n; ++c) out(r * n + c) = gv(r) * gx(c);
        return out;
      },
      x, rule);
  Mat out(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = flat(r * n + c);
  return out;
}

Vec solve_dirichlet(const BoundaryData& f, const SmoothMap& g, VecRef x,
                    const SphereRule& sphere, const SingularRule& singular) {
  if (f.m != g.m) throw std::invalid_argument("solve_dirichlet: target dimensions differ");
  return poisson_integral(f, x, sphere) - green_potential(g, x, singular);
}

double mean_value_residual(const SmoothMap& u, VecRef x, double rho,
                           const SphereRule& sphere, const SingularRule& singular) {
  if (rho <= 0.0) throw std::invalid_argument("mean_value_residual: rho must be positive");
  if (x.norm() + rho > 1.0)
    throw std::domain_error("mean_value_residual: ball B(x, rho) leaves the domain");
  const int n = u.n;
  const double cn = green_constant(n);
  const double rho_pow = pow_int(rho, n - 2);

  Vec ux = u.eval(x);
  Vec lhs = sphere.integrate_normalized_vec(
      u.m, [&](VecRef eta) -> Vec { return u.eval(x + rho * eta) - ux; });

  Vec rhs = integrate_ball_singular_vec(
      u.m,
      [&](VecRef y) -> Vec {
        const double d2 = (y - x).squaredNorm();
        const double kern = cn / pow_half_int(d2, n - 2) - cn / rho_pow;
        return kern * u.laplacian(y);
      },
      x, rho, singular);

  return (lhs - rhs).norm();
}

Mat gradient_representation(const SmoothMap& u, VecRef x,
                            const SphereRule& sphere, const SingularRule& singular) {
  Mat p = poisson_gradient(boundary_trace(u), x, sphere);
  SmoothMap lap;
  lap.n = u.n;
  lap.m = u.m;
  lap.value = [&u](VecRef y) { return u.laplacian(y); };
  Mat g = green_potential_gradient(lap, x, singular);
  return p - g;
}

}  // namespace ballpot
