#include "ballpot/instances.hpp"

#include <cmath>
#include <stdexcept>

namespace ballpot {

SmoothMap identity_map(int n) { return linear_map(Mat::Identity(n, n)); }

SmoothMap linear_map(const Mat& a) {
  SmoothMap u;
  u.n = static_cast<int>(a.cols());
  u.m = static_cast<int>(a.rows());
  u.value = [a](VecRef x) -> Vec { return a * x; };
  u.gradient_fn = [a](VecRef) -> Mat { return a; };
  u.laplacian_fn = [m = u.m](VecRef) -> Vec { return Vec::Zero(m); };
  return u;
}

SmoothMap mobius_map(const Vec& pole) {
  const int n = static_cast<int>(pole.size());
  if (pole.norm() >= 1.0) throw std::invalid_argument("mobius_map: pole must be interior");
  const double one_minus = 1.0 - pole.squaredNorm();

  SmoothMap u;
  u.n = n;
  u.m = n;
  u.value = [pole, one_minus](VecRef x) -> Vec {
    Vec w = x - pole;
    const double rho = 1.0 - 2.0 * x.dot(pole) + x.squaredNorm() * pole.squaredNorm();
    return (one_minus * w - w.squaredNorm() * pole) / rho;
  };
  u.gradient_fn = [pole, one_minus, n](VecRef x) -> Mat {
    Vec w = x - pole;
    const double s = w.squaredNorm();
    const double rho = 1.0 - 2.0 * x.dot(pole) + x.squaredNorm() * pole.squaredNorm();
    Vec grad_rho = 2.0 * (pole.squaredNorm() * x - pole);
    Mat j = (one_minus * Mat::Identity(n, n) - 2.0 * pole * w.transpose()) / rho;
    j -= (one_minus * w - s * pole) * grad_rho.transpose() / (rho * rho);
    return j;
  };
  // Laplacian left to finite differences (nonzero for n >= 3).
  return u;
}

SmoothMap radial_stretch(int n, double s) {
  if (s <= 0.0) throw std::invalid_argument("radial_stretch: exponent must be positive");
  SmoothMap u;
  u.n = n;
  u.m = n;
  u.value = [s](VecRef x) -> Vec {
    const double r = x.norm();
    if (r < 1e-300) return Vec::Zero(x.size());
    return std::pow(r, s - 1.0) * x;
  };
  u.gradient_fn = [s, n](VecRef x) -> Mat {
    const double r = x.norm();
    if (r < 1e-12) throw std::domain_error("radial_stretch: gradient singular at the origin");
    Vec xh = x / r;
    return std::pow(r, s - 1.0) * (Mat::Identity(n, n) + (s - 1.0) * xh * xh.transpose());
  };
  u.laplacian_fn = [s, n](VecRef x) -> Vec {
    const double r = x.norm();
    if (r < 1e-12) throw std::domain_error("radial_stretch: Laplacian singular at the origin");
    return (s - 1.0) * (s + n - 1.0) * std::pow(r, s - 3.0) * x;
  };
  return u;
}

double radial_stretch_distortion(int n, double s) {
  // singular values s r^{s-1} (radial) and r^{s-1} (tangential, n-1 fold)
  return pow_int(std::max(s, 1.0 / s), n - 1);
}

HqInstance make_hq_instance(int n, int m, Rng& rng, bool include_quadratic) {
  struct Component {
    Vec lin;
    int hi = 0, hj = 1;
    double hq = 0.0;   // coefficient of x_i^2 - x_j^2
    double quad = 0.0; // coefficient of |x|^2
  };
  std::vector<Component> comps(static_cast<size_t>(m));
  for (auto& c : comps) {
    c.lin = Vec::Zero(n);
    for (int i = 0; i < n; ++i) c.lin(i) = rng.uniform(-0.6, 0.6);
    c.hi = rng.index(n);
    c.hj = (c.hi + 1 + rng.index(n - 1)) % n;
    c.hq = rng.uniform(-0.5, 0.5);
    c.quad = include_quadratic ? rng.uniform(-0.5, 0.5) : 0.0;
  }

  auto raw = [comps, m](VecRef x) -> Vec {
    Vec out(m);
    for (int k = 0; k < m; ++k) {
      const auto& c = comps[k];
      out(k) = c.lin.dot(x) + c.hq * (x(c.hi) * x(c.hi) - x(c.hj) * x(c.hj)) +
               c.quad * x.squaredNorm();
    }
    return out;
  };

  // scale so the image stays in the closed unit ball of R^m
  double sup = 1e-12;
  for (int i = 0; i < 4096; ++i) {
    Vec x = (i % 4 == 0) ? Vec(rng.unit_vector(n)) : Vec(rng.ball_point(n));
    sup = std::max(sup, raw(x).norm());
  }
  const double scale = 1.0 / (1.05 * sup);

  SmoothMap u;
  u.n = n;
  u.m = m;
  u.value = [raw, scale](VecRef x) -> Vec { return scale * raw(x); };
  u.gradient_fn = [comps, scale, n, m](VecRef x) -> Mat {
    Mat g(m, n);
    for (int k = 0; k < m; ++k) {
      const auto& c = comps[k];
      Vec row = c.lin + 2.0 * c.quad * x;
      row(c.hi) += 2.0 * c.hq * x(c.hi);
      row(c.hj) -= 2.0 * c.hq * x(c.hj);
      g.row(k) = scale * row.transpose();
    }
    return g;
  };
  u.laplacian_fn = [comps, scale, n, m](VecRef) -> Vec {
    Vec lap(m);
    for (int k = 0; k < m; ++k) lap(k) = scale * 2.0 * n * comps[k].quad;
    return lap;
  };

  HqInstance inst;
  inst.map = u;
  double l2 = 0.0;
  for (const auto& c : comps) l2 += c.quad * c.quad;
  inst.lap_norm = scale * 2.0 * n * std::sqrt(l2);
  return inst;
}

SmoothMap radial_bowl(int n) {
  return make_scalar_map(
      n, [](VecRef x) { return 0.5 * (x.squaredNorm() - 1.0); },
      [](VecRef x) -> Vec { return x; },
      [n](VecRef) { return static_cast<double>(n); });
}

}  // namespace ballpot
