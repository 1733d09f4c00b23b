#include "ballpot/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ballpot {

Vec to_boundary(VecRef eta, double tol) {
  const double r = eta.norm();
  if (std::abs(r - 1.0) > tol)
    throw std::invalid_argument("to_boundary: point is not within tol of the sphere");
  return eta / r;
}

double poisson_kernel(VecRef x, VecRef eta) {
  const int n = static_cast<int>(x.size());
  if (eta.size() != n) throw std::invalid_argument("poisson_kernel: dimension mismatch");
  const double xx = x.squaredNorm();
  if (xx >= 1.0) throw std::domain_error("poisson_kernel: x must be interior");
  const double d2 = (x - eta).squaredNorm();
  return (1.0 - xx) / pow_half_int(d2, n);
}

Vec poisson_kernel_gradient(VecRef x, VecRef eta) {
  const int n = static_cast<int>(x.size());
  if (eta.size() != n) throw std::invalid_argument("poisson_kernel_gradient: dimension mismatch");
  const double xx = x.squaredNorm();
  if (xx >= 1.0) throw std::domain_error("poisson_kernel_gradient: x must be interior");
  Vec diff = x - eta;
  const double d2 = diff.squaredNorm();
  const double dn = pow_half_int(d2, n);
  return (-2.0 / dn) * x - (n * (1.0 - xx) / (dn * d2)) * diff;
}

double green_function(VecRef x, VecRef y) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw std::domain_error("green_function: requires n >= 3");
  if (y.size() != n) throw std::invalid_argument("green_function: dimension mismatch");
  const double d2 = (x - y).squaredNorm();
  if (d2 < 1e-24) throw std::domain_error("green_function: singular at x = y");
  const double s = 1.0 + x.squaredNorm() * y.squaredNorm() - 2.0 * x.dot(y);
  const double cn = green_constant(n);
  return cn * (1.0 / pow_half_int(d2, n - 2) - 1.0 / pow_half_int(s, n - 2));
}

Vec green_function_gradient(VecRef x, VecRef y) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw std::domain_error("green_function_gradient: requires n >= 3");
  if (y.size() != n) throw std::invalid_argument("green_function_gradient: dimension mismatch");
  Vec diff = x - y;
  const double d2 = diff.squaredNorm();
  if (d2 < 1e-24) throw std::domain_error("green_function_gradient: singular at x = y");
  const double s = 1.0 + x.squaredNorm() * y.squaredNorm() - 2.0 * x.dot(y);
  const double cn = green_constant(n);
  const double c = cn * (n - 2);
  return (-c / pow_half_int(d2, n)) * diff + (c / pow_half_int(s, n)) * (y.squaredNorm() * x - y);
}

}  // namespace ballpot
