#include "ballpot/estimates.hpp"

#include <cmath>
#include <stdexcept>

#include "ballpot/random.hpp"

namespace ballpot {

namespace {

double fd_laplacian_scalar(const std::function<double(VecRef)>& f, VecRef x, double h) {
  double acc = 0.0;
  const double center = f(x);
  Vec xp = x;
  for (int j = 0; j < x.size(); ++j) {
    xp(j) = x(j) + h;
    const double up = f(xp);
    xp(j) = x(j) - h;
    const double um = f(xp);
    xp(j) = x(j);
    acc += up + um - 2.0 * center;
  }
  return acc / (h * h);
}

// max_{|y-x|=rho} |u(y) - u(x)| sampled at rule nodes plus 10x random
// directions, inflated 5% when used on the right-hand side of a bound.
double sampled_sphere_max_dev(const SmoothMap& u, VecRef x, double rho,
                              const SphereRule& sphere, uint64_t seed) {
  Vec ux = u.eval(x);
  double best = 0.0;
  for (int i = 0; i < sphere.count(); ++i)
    best = std::max(best, (u.eval(x + rho * sphere.nodes.col(i)) - ux).norm());
  Rng rng(seed);
  const int extra = 10 * sphere.count();
  for (int i = 0; i < extra; ++i)
    best = std::max(best, (u.eval(x + rho * rng.unit_vector(u.n)) - ux).norm());
  return best;
}

}  // namespace

PoissonCertificate certify_poisson_inequality(const SmoothMap& u, double a, int samples,
                                              uint64_t seed, double radius) {
  Rng rng(seed);
  double b = 0.0;
  for (int i = 0; i < samples; ++i) {
    Vec x = rng.ball_point(u.n, radius);
    const double lap = u.laplacian(x).norm();
    const double grad = operator_norm(u.gradient(x));
    b = std::max(b, lap - a * grad * grad);
  }
  PoissonCertificate cert;
  cert.a = a;
  cert.b = std::max(0.0, b);
  cert.sup_check = b - cert.b;
  return cert;
}

MainLemmaParams theorem_substitutions(SubstitutionKind kind, const PoissonCertificate& cert) {
  MainLemmaParams p;
  if (kind == SubstitutionKind::squared_modulus) {
    if (cert.a >= 1.0)
      throw std::invalid_argument("theorem_substitutions: squared_modulus needs a < 1");
    p.alpha = 2.0;
    p.beta = 2.0 * (1.0 - cert.a);
    p.gamma = 2.0 * cert.b;
  } else {
    if (cert.a <= 0.0)
      throw std::invalid_argument("theorem_substitutions: exponential needs a > 0");
    const double e2a = std::exp(2.0 * cert.a);
    p.alpha = 2.0 * cert.a * e2a;
    p.beta = 2.0 * cert.a * cert.a / e2a;
    p.gamma = 2.0 * cert.a * cert.b * e2a;
  }
  return p;
}

EstimateReport check_chain_rule(const SmoothMap& u, VecRef x) {
  auto phi = [&u](VecRef y) { return u.eval(y).squaredNorm(); };
  const double lap_fd = fd_laplacian_scalar(phi, x, 1e-3);
  Mat g = u.gradient(x);
  const double exact = 2.0 * g.squaredNorm() + 2.0 * u.eval(x).dot(u.laplacian(x));

  EstimateReport r;
  r.name = "chain_rule";
  r.n = u.n;
  r.lhs = std::abs(lap_fd - exact);
  r.rhs = 0.0;
  r.tol = 1e-4;
  r.with("lap_fd", lap_fd).with("exact", exact);
  return r.finalize();
}

EstimateReport check_substitution_inequality(const SmoothMap& u, const PoissonCertificate& cert,
                                             SubstitutionKind kind, VecRef x) {
  MainLemmaParams p = theorem_substitutions(kind, cert);
  double lap_fd;
  double grad2;
  if (kind == SubstitutionKind::squared_modulus) {
    auto phi = [&u](VecRef y) { return u.eval(y).squaredNorm(); };
    lap_fd = fd_laplacian_scalar(phi, x, 1e-3);
    const double g = operator_norm(u.gradient(x));
    grad2 = g * g;
  } else {
    if (u.m != 1)
      throw std::invalid_argument("check_substitution_inequality: exponential needs scalar map");
    const double a = cert.a;
    auto phi = [&u, a](VecRef y) { return std::exp(2.0 * a * u.eval(y)(0)); };
    lap_fd = fd_laplacian_scalar(phi, x, 1e-3);
    const double g = u.gradient(x).row(0).norm();
    grad2 = g * g;
  }

  EstimateReport r;
  r.name = kind == SubstitutionKind::squared_modulus ? "diff_ineq_sq" : "diff_ineq_exp";
  r.n = u.n;
  r.lhs = p.beta * grad2 - p.gamma;
  r.rhs = lap_fd;
  r.tol = 1e-4;
  r.with("a", cert.a).with("b", cert.b).with("beta", p.beta).with("gamma", p.gamma);
  return r.finalize();
}

EstimateReport verify_energy_bound(const SmoothMap& u, VecRef x, double rho, double rho1,
                                   const MainLemmaParams& params, const BallRule& unit_ball,
                                   const SphereRule& sphere, uint64_t seed) {
  if (!(0.0 < rho1 && rho1 < rho)) throw std::invalid_argument("verify_energy_bound: need 0 < rho1 < rho");
  if (x.norm() + rho > 1.0) throw std::domain_error("verify_energy_bound: ball leaves the domain");

  const int n = u.n;
  const double cn = green_constant(n);
  const double lhs = pow_int(rho1, n) * unit_ball.integrate([&](VecRef z) {
    const double g = operator_norm(u.gradient(x + rho1 * z));
    return cn * g * g;
  });

  const double max_dev = 1.05 * sampled_sphere_max_dev(u, x, rho, sphere, seed);
  const double rp = pow_int(rho, n - 2);
  const double r1p = pow_int(rho1, n - 2);
  const double annulus = r1p * rp / (rp - r1p);
  const double rhs = annulus * (params.gamma * rho * rho / (2.0 * n * params.beta) +
                                params.alpha / params.beta * max_dev);

  EstimateReport r;
  r.name = "energy_bound";
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = 1e-6;
  r.with("rho", rho).with("rho1", rho1).with("alpha", params.alpha).with("beta", params.beta)
      .with("gamma", params.gamma).with("max_dev", max_dev);
  return r.finalize();
}

EstimateReport verify_gradient_bound(const SmoothMap& y_map, VecRef x0, double rho, const Vec& z,
                                     const SphereRule& sphere, const SingularRule& singular) {
  const int n = y_map.n;
  if (x0.norm() + rho > 1.0 + 1e-12)
    throw std::domain_error("verify_gradient_bound: ball leaves the domain");

  const double lhs = operator_norm(y_map.gradient(x0));

  const double mean_dev = sphere.integrate_normalized(
      [&](VecRef eta) { return (y_map.eval(x0 + rho * eta) - z).norm(); });
  const double surface_term = n / rho * mean_dev;

  const double omega = surface_measure(n);
  const double rho_n = pow_int(rho, n);
  const double green_term = integrate_ball_singular(
      [&](VecRef y) {
        const double r2 = (y - x0).squaredNorm();
        const double w = 1.0 / pow_half_int(r2, n - 1) - std::sqrt(r2) / rho_n;
        return w * y_map.laplacian(y).norm() / omega;
      },
      x0, rho, singular);

  const double rhs_mean = surface_term + green_term;
  const double rhs_schwarz = schwarz_constant(n) / rho + green_term;

  EstimateReport r;
  r.name = "gradient_bound";
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs_mean;
  r.tol = 1e-6;
  r.with("rho", rho).with("surface_term", surface_term).with("green_term", green_term)
      .with("rhs_schwarz", rhs_schwarz).with("margin_schwarz", rhs_schwarz - lhs);
  r.pass = (r.margin() >= -r.tol) && (rhs_schwarz - lhs >= -r.tol);
  return r;
}

MainLemmaEval main_lemma_bound(const MainLemmaParams& p, const PoissonCertificate& cert, int n) {
  if (!(0.0 < p.lambda && p.lambda < p.theta && p.theta < 1.0))
    throw std::invalid_argument("main_lemma_bound: need 0 < lambda < theta < 1");

  const double a = cert.a;
  const double b = cert.b;
  const double theta = p.theta;
  const double lambda = p.lambda;
  const double gamma_n = schwarz_constant(n);

  MainLemmaEval ev;
  ev.a_coeff = a * (lambda - pow_int(lambda, n + 1) / ((n + 1) * pow_int(theta, n))) /
               ((1.0 - lambda) * (1.0 - lambda));

  const double first = std::min(n * p.epsilon, gamma_n) / theta;
  const double second = b * n / (n + 1.0) * p.d * p.d * theta;
  const double ratio = lambda / (theta * theta) * (pow_int(theta / lambda, n) - 1.0);
  const double third = (n - 2) * a / (1.0 - pow_int(theta, n - 2)) * ratio *
                       (p.gamma * theta * theta * p.d * p.d / (2.0 * p.beta * n) +
                        2.0 * p.k_max * p.alpha / p.beta);
  ev.b_coeff = first + second + third;

  ev.four_ab = 4.0 * ev.a_coeff * ev.b_coeff;
  ev.feasible = ev.four_ab < 1.0;
  if (ev.feasible)
    ev.bound = 2.0 * ev.b_coeff / (1.0 + std::sqrt(1.0 - ev.four_ab));
  return ev;
}

ThetaSearch search_theta(const MainLemmaParams& base, const PoissonCertificate& cert, int n,
                         const std::function<double(double)>& delta_u, bool use_modulus) {
  const double eps = (n + 1.0) / (4.0 * cert.a * n * n + 1.0);

  auto eval_at = [&](double theta) -> MainLemmaEval {
    MainLemmaParams p = base;
    p.theta = theta;
    p.lambda = std::sin(theta);
    p.epsilon = std::numeric_limits<double>::infinity();
    if (use_modulus && delta_u && p.d * theta < delta_u(eps)) p.epsilon = eps;
    return main_lemma_bound(p, cert, n);
  };

  ThetaSearch out;
  const int grid = 240;
  const double lo = 1e-3;
  const double hi = 0.99;
  double prev_theta = 0.0;
  double best_theta = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double theta = lo * std::pow(hi / lo, static_cast<double>(i) / (grid - 1));
    MainLemmaEval ev = eval_at(theta);
    if (!ev.feasible) break;  // feasible grid prefix only
    out.feasible = true;
    out.theta_prefix_end = theta;
    if (ev.bound < out.bound) {
      out.bound = ev.bound;
      out.theta = theta;
      out.four_ab = ev.four_ab;
      best_theta = theta;
    }
    prev_theta = theta;
  }
  (void)prev_theta;
  if (!out.feasible) return out;

  // golden-section refinement of the bound around the best grid theta
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a_end = std::max(lo, best_theta / 1.6);
  double b_end = std::min(out.theta_prefix_end, best_theta * 1.6);
  for (int it = 0; it < 60 && b_end - a_end > 1e-10; ++it) {
    const double x1 = b_end - phi * (b_end - a_end);
    const double x2 = a_end + phi * (b_end - a_end);
    MainLemmaEval e1 = eval_at(x1);
    MainLemmaEval e2 = eval_at(x2);
    const double f1 = e1.feasible ? e1.bound : std::numeric_limits<double>::infinity();
    const double f2 = e2.feasible ? e2.bound : std::numeric_limits<double>::infinity();
    if (f1 <= f2) b_end = x2; else a_end = x1;
  }
  const double theta_ref = 0.5 * (a_end + b_end);
  MainLemmaEval ev = eval_at(theta_ref);
  if (ev.feasible && ev.bound < out.bound) {
    out.bound = ev.bound;
    out.theta = theta_ref;
    out.four_ab = ev.four_ab;
  }
  return out;
}

double empirical_modulus_delta(const SmoothMap& u, double eps, int samples, uint64_t seed,
                               double radius) {
  Vec center = Vec::Zero(u.n);
  Rng rng(seed);
  double lip = 0.0;
  for (int i = 0; i < samples; ++i) {
    Vec p = center + rng.ball_point(u.n, radius);
    const double step = rng.uniform(1e-4, 0.05);
    Vec q = p + step * rng.unit_vector(u.n);
    if (q.norm() > radius) continue;
    const double quot = (u.eval(p) - u.eval(q)).norm() / step;
    lip = std::max(lip, quot);
  }
  if (lip <= 0.0) return 1.0;  // constant map: any separation works
  return eps / (1.5 * lip);
}

EstimateReport verify_main_lemma(const SmoothMap& u, const PoissonCertificate& cert,
                                 SubstitutionKind kind, VecRef x0, double r0, int grid,
                                 uint64_t seed) {
  if (x0.norm() + r0 > 1.0 + 1e-12)
    throw std::domain_error("verify_main_lemma: B(x0, r0) leaves the unit ball");

  Rng rng(seed);
  const int n = u.n;
  Vec ux0 = u.eval(x0);

  double m_val = r0 * operator_norm(u.gradient(x0));
  double d_at_max = r0;
  double k_max = 0.0;
  const int shells = std::max(8, grid / 64);
  const int dirs = std::max(16, grid / shells);
  for (int i = 0; i <= shells; ++i) {
    const double frac = static_cast<double>(i) / shells;
    const double r = frac * r0;
    for (int j = 0; j < dirs; ++j) {
      Vec p = x0 + r * rng.unit_vector(n);
      k_max = std::max(k_max, (u.eval(p) - ux0).norm());
      if (frac < 1.0) {
        const double w = (r0 - r) * operator_norm(u.gradient(p));
        if (w > m_val) {
          m_val = w;
          d_at_max = r0 - r;
        }
      }
    }
  }
  k_max *= 1.05;

  // empirical modulus of continuity over B(x0, r0)
  double lip = 0.0;
  for (int i = 0; i < 800; ++i) {
    Vec p = x0 + rng.ball_point(n, r0);
    const double step = rng.uniform(1e-4, 0.05);
    Vec q = p + step * rng.unit_vector(n);
    if ((q - x0).norm() > r0) continue;
    lip = std::max(lip, (u.eval(p) - u.eval(q)).norm() / step);
  }
  auto delta_u = [lip](double eps) { return lip > 0.0 ? eps / (1.5 * lip) : 1.0; };

  MainLemmaParams base = theorem_substitutions(kind, cert);
  base.d = d_at_max;
  base.r0 = r0;
  base.k_max = k_max;

  ThetaSearch search = search_theta(base, cert, n, delta_u, true);

  EstimateReport r;
  r.name = "main_lemma";
  r.n = n;
  r.lhs = m_val;
  r.rhs = search.bound;
  r.tol = 1e-6;
  r.with("a", cert.a).with("b", cert.b).with("alpha", base.alpha).with("beta", base.beta)
      .with("gamma", base.gamma).with("theta", search.theta).with("four_ab", search.four_ab)
      .with("d", d_at_max).with("r0", r0).with("k_max", k_max)
      .with("feasible", search.feasible ? 1.0 : 0.0);

  if (!search.feasible) {
    r.pass = false;
    r.note = "no feasible theta";
    return r;
  }

  // final-inequality form: |grad u(x0)| <= c1 (1 + k_max / r0) with
  // c1 = 2B / (r0 + k_max)
  MainLemmaParams at = base;
  at.theta = search.theta;
  at.lambda = std::sin(search.theta);
  at.epsilon = std::numeric_limits<double>::infinity();
  const double eps = (n + 1.0) / (4.0 * cert.a * n * n + 1.0);
  if (at.d * at.theta < delta_u(eps)) at.epsilon = eps;
  MainLemmaEval ev = main_lemma_bound(at, cert, n);
  const double c1 = 2.0 * ev.b_coeff / (r0 + k_max);
  const double grad_x0 = operator_norm(u.gradient(x0));
  const bool final_ok = grad_x0 <= c1 * (1.0 + k_max / r0) + r.tol;
  r.with("c1", c1).with("grad_x0", grad_x0).with("final_ok", final_ok ? 1.0 : 0.0);
  r.pass = (r.margin() >= -r.tol) && final_ok;
  return r;
}

EstimateReport verify_lemma9(const SmoothMap& u, const PoissonCertificate& cert, VecRef x,
                             VecRef t, const SphereRule& sphere) {
  if (!(cert.a < 0.5)) throw std::invalid_argument("verify_lemma9: requires a < 1/2");
  const int n = u.n;
  const double a = cert.a;
  const double b = cert.b;

  Vec ut = u.eval(t);
  Vec ux = u.eval(x);
  if (ut.norm() > 1.0 + 1e-9 || ux.norm() > 1.0 + 1e-9)
    throw std::invalid_argument("verify_lemma9: map must satisfy |u| <= 1");

  BoundaryData trace = boundary_trace(u);
  Vec y_val = poisson_integral(trace, x, sphere);
  BoundaryData sq = make_scalar_boundary(n, [&u](VecRef eta) { return u.eval(eta).squaredNorm(); });
  const double f_val = poisson_integral(sq, x, sphere)(0);

  const double lhs = (ux - ut).norm();
  const double rhs = (1.0 - a) / (1.0 - 2.0 * a) * (y_val - ut).norm() +
                     a / (2.0 * (1.0 - 2.0 * a)) * std::abs(f_val - ut.squaredNorm()) +
                     b / (2.0 * n * (1.0 - 2.0 * a)) * (1.0 - x.squaredNorm());

  EstimateReport r;
  r.name = "lemma9";
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = 1e-6 + 10.0 * sphere.certified_tolerance();
  r.with("a", a).with("b", b).with("x_norm", x.norm());
  return r.finalize();
}

EstimateReport verify_lemma15(const SmoothMap& chi, const PoissonCertificate& cert, VecRef x,
                              VecRef t, const SphereRule& sphere) {
  if (chi.m != 1) throw std::invalid_argument("verify_lemma15: chi must be scalar");
  if (!(cert.a > 0.0))
    throw std::invalid_argument("verify_lemma15: requires a > 0 (use lemma9 for a = 0)");
  const int n = chi.n;
  const double a = cert.a;
  const double b = cert.b;

  const double chi_x = chi.eval(x)(0);
  const double chi_t = chi.eval(t)(0);
  if (std::abs(chi_x) > 1.0 + 1e-9 || std::abs(chi_t) > 1.0 + 1e-9)
    throw std::invalid_argument("verify_lemma15: map must satisfy |chi| <= 1");

  BoundaryData plus = make_scalar_boundary(n, [&chi, a](VecRef eta) {
    return std::exp(a * chi.eval(eta)(0));
  });
  BoundaryData minus = make_scalar_boundary(n, [&chi, a](VecRef eta) {
    return std::exp(-a * chi.eval(eta)(0));
  });
  const double hp = poisson_integral(plus, x, sphere)(0);
  const double hm = poisson_integral(minus, x, sphere)(0);

  const double ea = std::exp(a);
  const double lhs = std::abs(chi_x - chi_t);
  const double rhs = ea / a *
                     (std::abs(hp - std::exp(a * chi_t)) + std::abs(hm - std::exp(-a * chi_t)) +
                      2.0 * a * b / n * ea * (1.0 - x.norm()));

  EstimateReport r;
  r.name = "lemma15";
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = 1e-6 + 10.0 * std::exp(2.0 * a) / a * sphere.certified_tolerance();
  r.with("a", a).with("b", b).with("x_norm", x.norm());
  return r.finalize();
}

double holder_seminorm(const BoundaryData& f, double alpha, int samples, uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder_seminorm: alpha must lie in (0, 1]");
  const int n = f.n;
  Rng rng(seed);

  // tangential Jacobian through the radial extension F(x) = f(x/|x|)
  auto tangential = [&](VecRef eta) -> Mat {
    const double h = 1e-5;
    Mat j(f.m, n);
    Vec xp(n);
    for (int c = 0; c < n; ++c) {
      xp = eta;
      xp(c) += h;
      Vec up = f.eval(xp / xp.norm());
      xp(c) = eta(c) - h;
      Vec um = f.eval(xp / xp.norm());
      j.col(c) = (up - um) / (2.0 * h);
    }
    return j;
  };

  double value_sup = 0.0;
  double grad_sup = 0.0;
  double quot_sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    Vec eta = rng.unit_vector(n);
    value_sup = std::max(value_sup, f.eval(eta).norm());
    Mat j = tangential(eta);
    grad_sup = std::max(grad_sup, operator_norm(j));

    // alpha-quotient over nearby pairs; separation ~1e-2 keeps this a
    // stable lower-bound estimator for C^{1,1} data
    Vec step = rng.unit_vector(n);
    step -= step.dot(eta) * eta;
    if (step.norm() < 1e-8) continue;
    Vec eta2 = eta + 0.01 * step / step.norm();
    eta2 /= eta2.norm();
    const double dist = (eta - eta2).norm();
    const double quot = operator_norm(Mat(j - tangential(eta2))) / std::pow(dist, alpha);
    quot_sup = std::max(quot_sup, quot);
  }
  return value_sup + grad_sup + quot_sup;
}

}  // namespace ballpot
