#include "ballpot/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ballpot {

namespace {
constexpr double kPi = 3.14159265358979323846;

double jacobi_mu0(double alpha, double beta) {
  return std::pow(2.0, alpha + beta + 1.0) * std::tgamma(alpha + 1.0) *
         std::tgamma(beta + 1.0) / std::tgamma(alpha + beta + 2.0);
}
}  // namespace

Rule1D gauss_jacobi(int npts, double alpha, double beta) {
  if (npts < 1) throw std::invalid_argument("gauss_jacobi: npts must be >= 1");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("gauss_jacobi: weight exponents must exceed -1");

  Vec diag(npts);
  Vec sub(std::max(0, npts - 1));
  const double ab = alpha + beta;
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < npts; ++k) {
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag(k) = (beta * beta - alpha * alpha) / den;
  }
  for (int k = 1; k < npts; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) /
           ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double t = 2.0 * k + ab;
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           (t * t * (t + 1.0) * (t - 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }

  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.computeFromTridiagonal(diag, sub);
  Rule1D rule;
  rule.nodes = es.eigenvalues();
  rule.weights = Vec(npts);
  const double mu0 = jacobi_mu0(alpha, beta);
  for (int i = 0; i < npts; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.weights(i) = mu0 * v0 * v0;
  }
  return rule;
}

Rule1D gauss_legendre(int npts) { return gauss_jacobi(npts, 0.0, 0.0); }

int polar_nodes(int n, int level) {
  if (level < 1) throw std::invalid_argument("polar_nodes: level must be >= 1");
  switch (n) {
    case 3:
    case 4:
      return 14 * level;
    case 5:
      return 4 * level;
    case 6:
      return 2 * level;
    default:
      throw std::invalid_argument("build_sphere_rule: supported dimensions are 3..6");
  }
}

SphereRule build_sphere_rule(int n, int level) {
  const int npolar = polar_nodes(n, level);  // validates n, level
  const int nazim = 2 * npolar;

  // Gauss-Jacobi in t_k = cos(phi_k); polar angle k of S^{n-1} carries the
  // surface factor sin^{n-1-k}(phi_k), i.e. the weight (1-t^2)^((n-2-k)/2).
  std::vector<Rule1D> polar(static_cast<size_t>(n - 2));
  for (int k = 1; k <= n - 2; ++k) {
    const double a = 0.5 * (n - 2 - k);
    polar[k - 1] = gauss_jacobi(npolar, a, a);
  }

  long total = nazim;
  for (int k = 0; k < n - 2; ++k) total *= npolar;

  SphereRule rule;
  rule.n = n;
  rule.level = level;
  rule.nodes = Mat(n, total);
  rule.weights = Vec(total);

  std::vector<int> idx(static_cast<size_t>(n - 2), 0);
  const double wazim = 2.0 * kPi / nazim;
  long col = 0;
  while (true) {
    double wpolar = 1.0;
    for (int k = 0; k < n - 2; ++k) wpolar *= polar[k].weights(idx[k]);

    // coordinates x_1..x_{n-2} from the polar cosines, then the circle
    Vec base(n);
    double sinprod = 1.0;
    for (int k = 0; k < n - 2; ++k) {
      const double t = polar[k].nodes(idx[k]);
      base(k) = sinprod * t;
      sinprod *= std::sqrt(std::max(0.0, 1.0 - t * t));
    }
    for (int j = 0; j < nazim; ++j) {
      const double psi = 2.0 * kPi * j / nazim;
      Vec node = base;
      node(n - 2) = sinprod * std::cos(psi);
      node(n - 1) = sinprod * std::sin(psi);
      node /= node.norm();  // pin |node| = 1 against roundoff drift
      rule.nodes.col(col) = node;
      rule.weights(col) = wpolar * wazim;
      ++col;
    }

    int k = n - 3;
    while (k >= 0 && ++idx[k] == npolar) idx[k--] = 0;
    if (k < 0) break;
  }

  return rule;
}

Vec SphereRule::integrate_normalized_vec(int m, const std::function<Vec(VecRef)>& f) const {
  std::vector<std::vector<double>> terms(static_cast<size_t>(m));
  for (auto& t : terms) t.resize(static_cast<size_t>(count()));
  for (int i = 0; i < count(); ++i) {
    Vec v = f(nodes.col(i));
    for (int c = 0; c < m; ++c) terms[c][i] = weights(i) * v(c);
  }
  Vec out(m);
  for (int c = 0; c < m; ++c) out(c) = pairwise_sum(terms[c]);
  return out / surface_measure(n);
}

double SphereRule::certified_tolerance() const {
  if (level >= 8) return 1e-9;
  if (level >= 4) return 1e-6;
  return 1e-3;
}

BallRule build_ball_rule(int n, int level) {
  const SphereRule sphere = build_sphere_rule(n, level);
  const int nrad = std::max(8, 2 * level);
  // int_0^1 f(r) r^{n-1} dr with r = (1+t)/2: Jacobi weight (1+t)^{n-1}.
  const Rule1D rad = gauss_jacobi(nrad, 0.0, static_cast<double>(n - 1));

  BallRule rule;
  rule.n = n;
  rule.level = level;
  const long total = static_cast<long>(sphere.count()) * nrad;
  rule.nodes = Mat(n, total);
  rule.weights = Vec(total);
  const double scale = pow_int(0.5, n);  // (1/2)^n from the [0,1] map
  long col = 0;
  for (int i = 0; i < sphere.count(); ++i) {
    for (int j = 0; j < nrad; ++j) {
      const double r = 0.5 * (1.0 + rad.nodes(j));
      rule.nodes.col(col) = r * sphere.nodes.col(i);
      rule.weights(col) = sphere.weights(i) * scale * rad.weights(j);
      ++col;
    }
  }
  return rule;
}

Vec BallRule::integrate_vec(int m, const std::function<Vec(VecRef)>& f) const {
  std::vector<std::vector<double>> terms(static_cast<size_t>(m));
  for (auto& t : terms) t.resize(static_cast<size_t>(count()));
  for (int i = 0; i < count(); ++i) {
    Vec v = f(nodes.col(i));
    for (int c = 0; c < m; ++c) terms[c][i] = weights(i) * v(c);
  }
  Vec out(m);
  for (int c = 0; c < m; ++c) out(c) = pairwise_sum(terms[c]);
  return out;
}

SingularRule build_singular_rule(int n, int level) {
  SingularRule rule;
  rule.directions = std::make_shared<SphereRule>(build_sphere_rule(n, level));
  rule.inner = gauss_legendre(std::max(8, level));
  rule.outer = gauss_legendre(std::max(10, 2 * level));
  return rule;
}

double SingularRule::delta_for(VecRef x) const {
  const double dist = 1.0 - x.norm();
  return std::min(delta_cap, std::max(delta_floor, 0.5 * dist));
}

namespace {

// Ray exit radius: positive root of |x + r*eta| = 1 for a unit direction.
double exit_radius(VecRef x, VecRef eta) {
  const double b = x.dot(eta);
  const double c = 1.0 - x.squaredNorm();
  return -b + std::sqrt(std::max(0.0, b * b + c));
}

// Shared driver: accumulates per-direction radial integrals of
// f(x + r*eta) r^{n-1} over [0, rmax(eta)], split at delta.
template <class EvalTerm>
void polar_accumulate(VecRef x, const SingularRule& rule,
                      const std::function<double(VecRef)>& rmax,
                      EvalTerm&& eval_term) {
  const SphereRule& sph = *rule.directions;
  const int n = sph.n;
  Vec y(n);
  for (int i = 0; i < sph.count(); ++i) {
    const auto eta = sph.nodes.col(i);
    const double big_r = rmax(eta);
    if (big_r <= 0.0) {
      eval_term(i, 0.0, y, true);
      continue;
    }
    const double delta = std::min(rule.delta_for(x), 0.5 * big_r);

    // The radial integrand f(x + r eta) r^{n-1} is analytic in r for the
    // admissible singularity classes (r^{2-n} and r^{1-n} leading terms),
    // so plain Gauss panels converge geometrically; the split at delta
    // keeps the kernel peak on its own panel.
    const double ih = 0.5 * delta;
    for (int j = 0; j < rule.inner.nodes.size(); ++j) {
      const double r = ih * (1.0 + rule.inner.nodes(j));
      y = x + r * eta;
      eval_term(i, ih * rule.inner.weights(j) * pow_int(r, n - 1), y, false);
    }
    const double half = 0.5 * (big_r - delta);
    const double mid = 0.5 * (big_r + delta);
    for (int j = 0; j < rule.outer.nodes.size(); ++j) {
      const double r = mid + half * rule.outer.nodes(j);
      y = x + r * eta;
      eval_term(i, half * rule.outer.weights(j) * pow_int(r, n - 1), y, false);
    }
    eval_term(i, 0.0, y, true);
  }
}

}  // namespace

double integrate_singular(const std::function<double(VecRef)>& f, VecRef x,
                          const SingularRule& rule) {
  const SphereRule& sph = *rule.directions;
  std::vector<double> terms(static_cast<size_t>(sph.count()), 0.0);
  double acc = 0.0;
  polar_accumulate(x, rule,
                   [&x](VecRef eta) { return exit_radius(x, eta); },
                   [&](int i, double w, VecRef y, bool flush) {
                     if (flush) {
                       terms[i] = sph.weights(i) * acc;
                       acc = 0.0;
                     } else {
                       acc += w * f(y);
                     }
                   });
  return pairwise_sum(terms);
}

Vec integrate_singular_vec(int m, const std::function<Vec(VecRef)>& f, VecRef x,
                           const SingularRule& rule) {
  const SphereRule& sph = *rule.directions;
  std::vector<std::vector<double>> terms(static_cast<size_t>(m));
  for (auto& t : terms) t.assign(static_cast<size_t>(sph.count()), 0.0);
  Vec acc = Vec::Zero(m);
  polar_accumulate(x, rule,
                   [&x](VecRef eta) { return exit_radius(x, eta); },
                   [&](int i, double w, VecRef y, bool flush) {
                     if (flush) {
                       for (int c = 0; c < m; ++c) terms[c][i] = sph.weights(i) * acc(c);
                       acc.setZero();
                     } else {
                       acc += w * f(y);
                     }
                   });
  Vec out(m);
  for (int c = 0; c < m; ++c) out(c) = pairwise_sum(terms[c]);
  return out;
}

double integrate_ball_singular(const std::function<double(VecRef)>& f, VecRef x,
                               double rho, const SingularRule& rule) {
  if (rho <= 0.0) throw std::invalid_argument("integrate_ball_singular: rho must be positive");
  const SphereRule& sph = *rule.directions;
  std::vector<double> terms(static_cast<size_t>(sph.count()), 0.0);
  double acc = 0.0;
  polar_accumulate(x, rule, [rho](VecRef) { return rho; },
                   [&](int i, double w, VecRef y, bool flush) {
                     if (flush) {
                       terms[i] = sph.weights(i) * acc;
                       acc = 0.0;
                     } else {
                       acc += w * f(y);
                     }
                   });
  return pairwise_sum(terms);
}

Vec integrate_ball_singular_vec(int m, const std::function<Vec(VecRef)>& f,
                                VecRef x, double rho, const SingularRule& rule) {
  if (rho <= 0.0) throw std::invalid_argument("integrate_ball_singular: rho must be positive");
  const SphereRule& sph = *rule.directions;
  std::vector<std::vector<double>> terms(static_cast<size_t>(m));
  for (auto& t : terms) t.assign(static_cast<size_t>(sph.count()), 0.0);
  Vec acc = Vec::Zero(m);
  polar_accumulate(x, rule, [rho](VecRef) { return rho; },
                   [&](int i, double w, VecRef y, bool flush) {
                     if (flush) {
                       for (int c = 0; c < m; ++c) terms[c][i] = sph.weights(i) * acc(c);
                       acc.setZero();
                     } else {
                       acc += w * f(y);
                     }
                   });
  Vec out(m);
  for (int c = 0; c < m; ++c) out(c) = pairwise_sum(terms[c]);
  return out;
}

void save_rule_csv(const std::string& path, const Mat& nodes, const Vec& weights) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_rule_csv: cannot open " + path);
  char buf[32];
  for (int i = 0; i < weights.size(); ++i) {
    std::string row;
    for (int d = 0; d < nodes.rows(); ++d) {
      std::snprintf(buf, sizeof(buf), "%.17g", nodes(d, i));
      row += buf;
      row += ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", weights(i));
    row += buf;
    row += '\n';
    out << row;
  }
}

bool load_rule_csv(const std::string& path, int n, Mat* nodes, Vec* weights) {
  std::ifstream in(path);
  if (!in) return false;
  std::vector<double> xs;
  std::vector<double> ws;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != n + 1)
      throw std::runtime_error("load_rule_csv: bad row width in " + path);
    for (int d = 0; d < n; ++d) xs.push_back(row[d]);
    ws.push_back(row[n]);
  }
  const long count = static_cast<long>(ws.size());
  if (count == 0) return false;
  nodes->resize(n, count);
  weights->resize(count);
  for (long i = 0; i < count; ++i) {
    for (int d = 0; d < n; ++d) (*nodes)(d, i) = xs[i * n + d];
    (*weights)(i) = ws[i];
  }
  return true;
}

SphereRule cached_sphere_rule(int n, int level, const std::string& cache_dir) {
  if (!cache_dir.empty()) {
    const std::string path =
        cache_dir + "/sphere_n" + std::to_string(n) + "_L" + std::to_string(level) + ".csv";
    SphereRule rule;
    rule.n = n;
    rule.level = level;
    if (load_rule_csv(path, n, &rule.nodes, &rule.weights)) {
      const double sum_err = std::abs(rule.weights.sum() - surface_measure(n));
      if (sum_err > 1e-8) throw std::runtime_error("cached_sphere_rule: corrupt cache " + path);
      return rule;
    }
    rule = build_sphere_rule(n, level);
    try {
      save_rule_csv(path, rule.nodes, rule.weights);
    } catch (const std::exception&) {
      // cache directory not writable; rule is still valid
    }
    return rule;
  }
  return build_sphere_rule(n, level);
}

}  // namespace ballpot
