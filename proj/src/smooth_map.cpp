#include "ballpot/smooth_map.hpp"

#include <stdexcept>

namespace ballpot {

Mat SmoothMap::gradient(VecRef x) const {
  if (gradient_fn) return gradient_fn(x);
  const double h = fd_gradient_step;
  Mat g(m, n);
  Vec xp = x;
  for (int j = 0; j < n; ++j) {
    xp(j) = x(j) + h;
    Vec up = value(xp);
    xp(j) = x(j) - h;
    Vec um = value(xp);
    xp(j) = x(j);
    g.col(j) = (up - um) / (2.0 * h);
  }
  return g;
}

Vec SmoothMap::laplacian(VecRef x) const {
  if (laplacian_fn) return laplacian_fn(x);
  const double h = fd_laplacian_step;
  Vec acc = Vec::Zero(m);
  Vec center = value(x);
  Vec xp = x;
  for (int j = 0; j < n; ++j) {
    xp(j) = x(j) + h;
    Vec up = value(xp);
    xp(j) = x(j) - h;
    Vec um = value(xp);
    xp(j) = x(j);
    acc += up + um - 2.0 * center;
  }
  return acc / (h * h);
}

SmoothMap make_scalar_map(int n, std::function<double(VecRef)> value,
                          std::function<Vec(VecRef)> gradient,
                          std::function<double(VecRef)> laplacian) {
  SmoothMap u;
  u.n = n;
  u.m = 1;
  u.scalar_value = std::move(value);
  u.value = [f = u.scalar_value](VecRef x) {
    Vec out(1);
    out(0) = f(x);
    return out;
  };
  if (gradient) {
    u.gradient_fn = [gradient = std::move(gradient)](VecRef x) {
      Vec g = gradient(x);
      Mat out(1, g.size());
      out.row(0) = g.transpose();
      return out;
    };
  }
  if (laplacian) {
    u.laplacian_fn = [laplacian = std::move(laplacian)](VecRef x) {
      Vec out(1);
      out(0) = laplacian(x);
      return out;
    };
  }
  return u;
}

BoundaryData make_scalar_boundary(int n, std::function<double(VecRef)> f) {
  BoundaryData b;
  b.n = n;
  b.m = 1;
  b.scalar_f = std::move(f);
  b.f = [f = b.scalar_f](VecRef eta) {
    Vec out(1);
    out(0) = f(eta);
    return out;
  };
  return b;
}

BoundaryData boundary_trace(const SmoothMap& u) {
  if (!u.value) throw std::invalid_argument("boundary_trace: map has no value oracle");
  BoundaryData b;
  b.n = u.n;
  b.m = u.m;
  b.f = [value = u.value](VecRef eta) { return value(eta); };
  if (u.m == 1 && u.scalar_value) b.scalar_f = u.scalar_value;
  return b;
}

}  // namespace ballpot
