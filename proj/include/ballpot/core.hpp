#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ballpot {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Dimension pair: source ball sits in R^n (n >= 3 for the Green kernel),
/// targets live in R^m.
struct Dim {
  int n = 3;
  int m = 1;
};

/// Surface measure omega_{n-1} of the unit sphere S^{n-1}, n >= 2.
double surface_measure(int n);

/// Green normalization c_n = 1/((n-2) * omega_{n-1}), n >= 3.
double green_constant(int n);

/// Sharp gradient constant gamma_n = 2*Gamma(1+n/2)/(sqrt(pi)*Gamma((n+1)/2))
/// for bounded harmonic maps of the ball; always < sqrt(n).
double schwarz_constant(int n);

/// Admissibility threshold C_n = (n+1)*sqrt(pi)*Gamma((n+1)/2)/(8n*Gamma(n/2+1)),
/// equivalently (n+1)/(4n*gamma_n).
double admissibility_threshold(int n);

/// The four dimension constants bundled for table output.
struct Constants {
  int n = 0;
  double omega = 0;
  double c_n = 0;
  double gamma_n = 0;
  double C_n = 0;

  static Constants of(int n);
};

/// Largest singular value |A| = max{|Ax| : |x| = 1}, via a symmetric
/// eigensolve of A^T A.
double operator_norm(const Mat& a);

/// Smallest singular value l(A) = inf{|Ax| : |x| = 1}; A must be square.
double min_stretch(const Mat& a);

/// Generalized cross product of n-1 vectors in R^n: the vector c with
/// <c, x> = det(rows v_1..v_{n-1}, x) for all x.  For n = 3 this is the
/// right-hand-rule product.
Vec cross_product(const std::vector<Vec>& vs);

/// x^k by repeated multiplication, k >= 0.
double pow_int(double x, int k);

/// x^(k/2) for integer k (x > 0 when k is odd).
double pow_half_int(double x, int k);

/// Deterministic pairwise sum of a buffer; the reduction tree depends only
/// on the buffer length.
double pairwise_sum(const std::vector<double>& terms);

}  // namespace ballpot
