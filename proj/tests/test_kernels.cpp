#include <doctest.h>

#include <cmath>

#include "ballpot/kernels.hpp"
#include "ballpot/random.hpp"

using namespace ballpot;

namespace {
constexpr double kPi = 3.14159265358979323846;

Vec fd_gradient_x(const std::function<double(VecRef)>& f, VecRef x, double h = 1e-5) {
  Vec g(x.size());
  Vec xp(x.size());
  for (int i = 0; i < x.size(); ++i) {
    xp = x;
    xp(i) += h;
    const double up = f(xp);
    xp(i) = x(i) - h;
    const double um = f(xp);
    g(i) = (up - um) / (2.0 * h);
  }
  return g;
}

double fd_laplacian_x(const std::function<double(VecRef)>& f, VecRef x, double h = 1e-3) {
  double acc = 0.0;
  const double c = f(x);
  Vec xp(x.size());
  for (int i = 0; i < x.size(); ++i) {
    xp = x;
    xp(i) += h;
    acc += f(xp);
    xp(i) = x(i) - h;
    acc += f(xp);
  }
  return (acc - 2.0 * x.size() * c) / (h * h);
}
}  // namespace

TEST_CASE("poisson kernel point values") {
  Vec zero = Vec::Zero(3);
  Rng rng(1);
  for (int i = 0; i < 5; ++i) CHECK(poisson_kernel(zero, rng.unit_vector(3)) == doctest::Approx(1.0));

  Vec x = Vec::Zero(3);
  x(0) = 0.5;
  Vec eta = Vec::Unit(3, 0);
  CHECK(poisson_kernel(x, eta) == doctest::Approx(6.0).epsilon(1e-14));

  Vec outside = Vec::Zero(3);
  outside(0) = 1.0;
  CHECK_THROWS_AS(poisson_kernel(outside, eta), std::domain_error);
}

TEST_CASE("poisson kernel normalizes against d-sigma") {
  Rng rng(2);
  for (int n : {3, 4}) {
    SphereRule rule = build_sphere_rule(n, n == 3 ? 8 : 5);
    for (int i = 0; i < 6; ++i) {
      Vec x = rng.ball_point(n, 0.9);
      const double mass =
          rule.integrate_normalized([&](VecRef eta) { return poisson_kernel(x, eta); });
      CHECK(std::abs(mass - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("green function point values and symmetry") {
  Vec zero = Vec::Zero(3);
  Vec y = Vec::Zero(3);
  y(0) = 0.5;
  CHECK(green_function(zero, y) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));

  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    Vec a = rng.ball_point(3, 0.98);
    Vec b = rng.ball_point(3, 0.98);
    if ((a - b).norm() < 1e-6) continue;
    CHECK(std::abs(green_function(a, b) - green_function(b, a)) < 1e-12);
    CHECK(green_function(a, b) > 0.0);
  }

  // boundary vanishing
  Vec x = Vec::Zero(3);
  x(0) = 0.3;
  Vec near = Vec::Zero(3);
  near(1) = 1.0 - 1e-6;
  CHECK(std::abs(green_function(x, near)) < 1e-4);

  CHECK_THROWS_AS(green_function(y, y), std::domain_error);
}

TEST_CASE("positivity on random interior pairs") {
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    Vec a = rng.ball_point(3, 0.999);
    Vec b = rng.ball_point(3, 0.999);
    if ((a - b).norm() < 1e-9) continue;
    CHECK(green_function(a, b) > 0.0);
  }
}

TEST_CASE("poisson kernel gradient") {
  const int n = 3;
  Rng rng(5);
  Vec zero = Vec::Zero(n);
  for (int i = 0; i < 5; ++i) {
    Vec eta = rng.unit_vector(n);
    Vec g = poisson_kernel_gradient(zero, eta);
    CHECK((g - n * eta).norm() < 1e-13);        // P_x(0, eta) = n eta
    CHECK(std::abs(g.norm() - n) < 1e-13);      // |P_x(0, eta)| = n
  }
  for (int nn : {3, 4}) {
    Vec e = Vec::Unit(nn, 1);
    CHECK(std::abs(poisson_kernel_gradient(Vec(Vec::Zero(nn)), e).norm() - nn) < 1e-13);
  }

  Vec x = Vec::Zero(3);
  x(0) = 0.2;
  x(1) = 0.1;
  Vec eta = Vec::Unit(3, 1);
  Vec fd = fd_gradient_x([&](VecRef z) { return poisson_kernel(z, eta); }, x);
  CHECK((poisson_kernel_gradient(x, eta) - fd).norm() < 1e-6);
}

TEST_CASE("green function gradient") {
  const int n = 3;
  const double omega = surface_measure(n);
  Rng rng(6);
  Vec zero = Vec::Zero(n);
  for (int i = 0; i < 5; ++i) {
    Vec y = rng.ball_point(n, 0.9);
    if (y.norm() < 0.1) continue;
    Vec g = green_function_gradient(zero, y);
    const double r = y.norm();
    // |G_x(0,y)| = (|y|^{1-n} - |y|)/omega, directed along +y
    CHECK(std::abs(g.norm() - (std::pow(r, 1 - n) - r) / omega) < 1e-12);
    CHECK(g.dot(y) > 0.0);
  }
}

TEST_CASE("gradients match finite differences on random instances") {
  Rng rng(7);
  for (int n : {3, 4}) {
    for (int i = 0; i < 500; ++i) {
      Vec x = rng.ball_point(n, 0.8);
      Vec eta = rng.unit_vector(n);
      Vec fd = fd_gradient_x([&](VecRef z) { return poisson_kernel(z, eta); }, x);
      CHECK((poisson_kernel_gradient(x, eta) - fd).norm() < 1e-6 * std::max(1.0, fd.norm()));

      Vec y = rng.ball_point(n, 0.9);
      if ((x - y).norm() < 0.05) continue;
      Vec fdg = fd_gradient_x([&](VecRef z) { return green_function(z, y); }, x);
      CHECK((green_function_gradient(x, y) - fdg).norm() < 1e-6 * std::max(1.0, fdg.norm()));
    }
  }
}

TEST_CASE("kernels are harmonic in x away from singularities") {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    Vec x = rng.ball_point(3, 0.5);
    Vec eta = rng.unit_vector(3);
    CHECK(std::abs(fd_laplacian_x([&](VecRef z) { return poisson_kernel(z, eta); }, x)) < 1e-4);

    Vec y = rng.ball_point(3, 0.9);
    if ((x - y).norm() < 0.3) continue;
    CHECK(std::abs(fd_laplacian_x([&](VecRef z) { return green_function(z, y); }, x)) < 1e-4);
  }
}

TEST_CASE("boundary renormalization helper") {
  Vec near = Vec::Unit(3, 0) * (1.0 + 5e-10);
  Vec eta = to_boundary(near);
  CHECK(std::abs(eta.norm() - 1.0) < 1e-16);
  Vec off = Vec::Unit(3, 0) * 1.5;
  CHECK_THROWS_AS(to_boundary(off), std::invalid_argument);
}
