#include "ballpot/core.hpp"

#include <cmath>
#include <stdexcept>

namespace ballpot {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double surface_measure(int n) {
  if (n < 2) throw std::domain_error("surface_measure: requires n >= 2");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double green_constant(int n) {
  if (n < 3) throw std::domain_error("green_constant: requires n >= 3");
  return 1.0 / ((n - 2) * surface_measure(n));
}

double schwarz_constant(int n) {
  if (n < 2) throw std::domain_error("schwarz_constant: requires n >= 2");
  const double g = 2.0 * std::tgamma(1.0 + 0.5 * n) /
                   (std::sqrt(kPi) * std::tgamma(0.5 * (n + 1)));
  if (!(g < std::sqrt(static_cast<double>(n))))
    throw std::logic_error("schwarz_constant: gamma_n < sqrt(n) violated");
  return g;
}

double admissibility_threshold(int n) {
  if (n < 3) throw std::domain_error("admissibility_threshold: requires n >= 3");
  return (n + 1) * std::sqrt(kPi) * std::tgamma(0.5 * (n + 1)) /
         (8.0 * n * std::tgamma(0.5 * n + 1.0));
}

Constants Constants::of(int n) {
  return Constants{n, surface_measure(n), green_constant(n),
                   schwarz_constant(n), admissibility_threshold(n)};
}

double operator_norm(const Mat& a) {
  if (!a.allFinite()) throw std::invalid_argument("operator_norm: non-finite entries");
  if (a.size() == 0) return 0.0;
  Mat ata = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Mat> es(ata, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double min_stretch(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("min_stretch: matrix must be square");
  if (!a.allFinite()) throw std::invalid_argument("min_stretch: non-finite entries");
  Mat ata = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Mat> es(ata, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
}

Vec cross_product(const std::vector<Vec>& vs) {
  const int n = static_cast<int>(vs.size()) + 1;
  if (n < 2) throw std::invalid_argument("cross_product: needs n-1 >= 1 vectors");
  for (const Vec& v : vs)
    if (v.size() != n)
      throw std::invalid_argument("cross_product: expected n-1 vectors of dimension n");

  // Component j is the cofactor of entry (n, j) in the matrix whose first
  // n-1 rows are the inputs and whose last row is e_j.
  Vec out(n);
  Mat minor(n - 1, n - 1);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < n - 1; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r, cc++) = vs[r](c);
      }
    }
    const double sign = ((n - 1 + j) % 2 == 0) ? 1.0 : -1.0;
    out(j) = sign * minor.determinant();
  }
  return out;
}

double pow_int(double x, int k) {
  if (k < 0) return 1.0 / pow_int(x, -k);
  double acc = 1.0;
  double base = x;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

double pow_half_int(double x, int k) {
  if (k % 2 == 0) return pow_int(x, k / 2);
  const int whole = (k - (k > 0 ? 1 : -1)) / 2;
  double out = pow_int(x, whole) * std::sqrt(x);
  if (k < 0) out /= x;  // k = 2*whole - 1 for negative odd k
  return out;
}

double pairwise_sum(const std::vector<double>& terms) {
  struct Rec {
    static double run(const double* p, size_t len) {
      if (len <= 16) {
        double s = 0.0;
        for (size_t i = 0; i < len; ++i) s += p[i];
        return s;
      }
      const size_t half = len / 2;
      return run(p, half) + run(p + half, len - half);
    }
  };
  return terms.empty() ? 0.0 : Rec::run(terms.data(), terms.size());
}

}  // namespace ballpot
