#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ballpot/core.hpp"
#include "ballpot/quadrature.hpp"

namespace ballpot {

/// An evaluable map u: B^n -> R^m with value, gradient and Laplacian
/// oracles.  Missing oracles fall back to central finite differences
/// (gradient step 1e-5, Laplacian step 1e-3); the fd_* flags let callers
/// widen their tolerance budgets accordingly.
struct SmoothMap {
  int n = 3;
  int m = 1;
  std::function<Vec(VecRef)> value;
  std::function<double(VecRef)> scalar_value;  // allocation-free path for m = 1
  std::function<Mat(VecRef)> gradient_fn;      // m x n, rows = target components
  std::function<Vec(VecRef)> laplacian_fn;     // componentwise Laplacian

  double fd_gradient_step = 1e-5;
  double fd_laplacian_step = 1e-3;

  bool fd_gradient() const { return !gradient_fn; }
  bool fd_laplacian() const { return !laplacian_fn; }

  Vec eval(VecRef x) const { return value(x); }
  double eval1(VecRef x) const { return scalar_value ? scalar_value(x) : value(x)(0); }
  Mat gradient(VecRef x) const;
  Vec laplacian(VecRef x) const;
};

/// Scalar convenience constructor.
SmoothMap make_scalar_map(int n, std::function<double(VecRef)> value,
                          std::function<Vec(VecRef)> gradient = nullptr,
                          std::function<double(VecRef)> laplacian = nullptr);

/// Boundary data f: S^{n-1} -> R^m, with optional Hoelder metadata
/// (alpha, K) bounding |f|_{1,alpha}.
struct BoundaryData {
  int n = 3;
  int m = 1;
  std::function<Vec(VecRef)> f;
  std::function<double(VecRef)> scalar_f;  // allocation-free path for m = 1
  std::optional<double> alpha;
  std::optional<double> holder_bound;

  Vec eval(VecRef eta) const { return f(eta); }
  double eval1(VecRef eta) const { return scalar_f ? scalar_f(eta) : f(eta)(0); }
};

BoundaryData make_scalar_boundary(int n, std::function<double(VecRef)> f);

/// Boundary trace of a map that is evaluable up to |x| = 1.
BoundaryData boundary_trace(const SmoothMap& u);

}  // namespace ballpot
