#include <doctest.h>

#include <cmath>

#include "ballpot/instances.hpp"
#include "ballpot/potential.hpp"
#include "ballpot/random.hpp"

using namespace ballpot;

namespace {
struct Fixture {
  int n = 3;
  SphereRule sphere = build_sphere_rule(3, 6);
  SingularRule singular = build_singular_rule(3, 6);
  Fixture() { singular.directions = std::make_shared<SphereRule>(sphere); }
};
}  // namespace

TEST_CASE("poisson integral reproduces harmonic data") {
  Fixture fx;
  Rng rng(1);
  BoundaryData one = make_scalar_boundary(3, [](VecRef) { return 1.0; });
  BoundaryData eta1 = make_scalar_boundary(3, [](VecRef e) { return e(0); });
  BoundaryData eta1sq = make_scalar_boundary(3, [](VecRef e) { return e(0) * e(0); });

  for (int i = 0; i < 10; ++i) {
    Vec x = rng.ball_point(3, 0.8);
    CHECK(std::abs(poisson_integral(one, x, fx.sphere)(0) - 1.0) < 1e-8);
    CHECK(std::abs(poisson_integral(eta1, x, fx.sphere)(0) - x(0)) < 1e-8);
  }
  CHECK(std::abs(poisson_integral(eta1sq, Vec(Vec::Zero(3)), fx.sphere)(0) - 1.0 / 3.0) < 1e-8);
}

TEST_CASE("maximum principle for harmonic extensions") {
  Fixture fx;
  Rng rng(2);
  BoundaryData f = make_scalar_boundary(3, [](VecRef e) { return e(0) * e(0) - 0.3 * e(1); });
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -fmin;
  for (int i = 0; i < fx.sphere.count(); ++i) {
    const double v = f.eval1(fx.sphere.nodes.col(i));
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  for (int i = 0; i < 25; ++i) {
    const double u = poisson_integral(f, Vec(rng.ball_point(3, 0.8)), fx.sphere)(0);
    CHECK(u >= fmin - 1e-9);
    CHECK(u <= fmax + 1e-9);
  }
}

TEST_CASE("green potential examples") {
  Fixture fx;
  Vec zero = Vec::Zero(3);
  SmoothMap g2n = make_scalar_map(3, [](VecRef) { return 6.0; });
  CHECK(std::abs(green_potential(g2n, zero, fx.singular)(0) - 1.0) < 1e-4);

  SmoothMap gz = make_scalar_map(3, [](VecRef) { return 0.0; });
  CHECK(green_potential(gz, zero, fx.singular)(0) == 0.0);

  // even source: value at x equals value at -x
  SmoothMap geven = make_scalar_map(3, [](VecRef y) { return y(0) * y(0) + 0.5; });
  Rng rng(3);
  for (int i = 0; i < 5; ++i) {
    Vec x = rng.ball_point(3, 0.6);
    const double a = green_potential(geven, x, fx.singular)(0);
    const double b = green_potential(geven, Vec(-x), fx.singular)(0);
    CHECK(std::abs(a - b) < 1e-8);
  }
}

TEST_CASE("dirichlet solver oracles") {
  Fixture fx;
  Rng rng(4);
  BoundaryData one = make_scalar_boundary(3, [](VecRef) { return 1.0; });
  SmoothMap g2n = make_scalar_map(3, [](VecRef) { return 6.0; });
  for (int i = 0; i < 15; ++i) {
    Vec x = rng.ball_point(3, 0.7);
    const double u = solve_dirichlet(one, g2n, x, fx.sphere, fx.singular)(0);
    CHECK(std::abs(u - x.squaredNorm()) < 1e-4);
  }

  BoundaryData eta1 = make_scalar_boundary(3, [](VecRef e) { return e(0); });
  SmoothMap gz = make_scalar_map(3, [](VecRef) { return 0.0; });
  Vec x = rng.ball_point(3, 0.7);
  CHECK(std::abs(solve_dirichlet(eta1, gz, x, fx.sphere, fx.singular)(0) - x(0)) < 1e-8);

  BoundaryData eta1sq = make_scalar_boundary(3, [](VecRef e) { return e(0) * e(0); });
  SmoothMap g2 = make_scalar_map(3, [](VecRef) { return 2.0; });
  CHECK(std::abs(solve_dirichlet(eta1sq, g2, x, fx.sphere, fx.singular)(0) - x(0) * x(0)) < 1e-4);
}

TEST_CASE("solver output has the right Laplacian") {
  Fixture fx;
  Rng rng(5);
  BoundaryData one = make_scalar_boundary(3, [](VecRef) { return 1.0; });
  SmoothMap g2n = make_scalar_map(3, [](VecRef) { return 6.0; });
  const double h = 1e-3;
  for (int i = 0; i < 3; ++i) {
    Vec x = rng.ball_point(3, 0.6);
    double acc = -6.0 * solve_dirichlet(one, g2n, x, fx.sphere, fx.singular)(0);
    Vec xp(3);
    for (int c = 0; c < 3; ++c) {
      xp = x;
      xp(c) += h;
      acc += solve_dirichlet(one, g2n, xp, fx.sphere, fx.singular)(0);
      xp(c) = x(c) - h;
      acc += solve_dirichlet(one, g2n, xp, fx.sphere, fx.singular)(0);
    }
    CHECK(std::abs(acc / (h * h) - 6.0) < 1e-3);
  }
}

TEST_CASE("mean value identity") {
  Fixture fx;
  // harmonic map: both sides vanish
  Mat e1 = Mat::Zero(1, 3);
  e1(0, 0) = 1.0;
  SmoothMap lin = linear_map(e1);
  Vec x = Vec::Zero(3);
  x(1) = 0.2;
  CHECK(mean_value_residual(lin, x, 0.4, fx.sphere, fx.singular) < 1e-8);

  // |x|^2: both sides equal rho^2
  SmoothMap sq = make_scalar_map(3, [](VecRef y) { return y.squaredNorm(); },
                                 [](VecRef y) -> Vec { return 2.0 * y; },
                                 [](VecRef) { return 6.0; });
  Rng rng(6);
  for (int i = 0; i < 5; ++i) {
    Vec c = rng.ball_point(3, 0.5);
    const double rho = rng.uniform(0.1, 1.0 - c.norm() - 0.01);
    CHECK(mean_value_residual(sq, c, rho, fx.sphere, fx.singular) < 1e-6);
  }

  // odd cubic at the origin: both sides vanish by symmetry
  SmoothMap cubic = make_scalar_map(3, [](VecRef y) { return y(0) * y(0) * y(0); },
                                    [](VecRef y) -> Vec {
                                      Vec g = Vec::Zero(3);
                                      g(0) = 3.0 * y(0) * y(0);
                                      return g;
                                    },
                                    [](VecRef y) { return 6.0 * y(0); });
  CHECK(mean_value_residual(cubic, Vec(Vec::Zero(3)), 0.3, fx.sphere, fx.singular) < 1e-5);

  CHECK_THROWS_AS(mean_value_residual(sq, Vec(Vec::Zero(3)), 1.5, fx.sphere, fx.singular),
                  std::domain_error);
}

TEST_CASE("gradient representation") {
  Fixture fx;
  Mat e1 = Mat::Zero(1, 3);
  e1(0, 0) = 1.0;
  SmoothMap lin = linear_map(e1);
  Mat g0 = gradient_representation(lin, Vec(Vec::Zero(3)), fx.sphere, fx.singular);
  CHECK((g0 - e1).norm() < 1e-6);

  SmoothMap sq = make_scalar_map(3, [](VecRef y) { return y.squaredNorm(); },
                                 [](VecRef y) -> Vec { return 2.0 * y; },
                                 [](VecRef) { return 6.0; });
  CHECK(gradient_representation(sq, Vec(Vec::Zero(3)), fx.sphere, fx.singular).norm() < 1e-5);

  Vec x = Vec::Zero(3);
  x(0) = 0.3;
  Mat g = gradient_representation(sq, x, fx.sphere, fx.singular);
  Mat want = Mat::Zero(1, 3);
  want(0, 0) = 0.6;
  CHECK((g - want).norm() < 1e-4);
}

TEST_CASE("gradient of the harmonic part obeys the sharp constant") {
  const int n = 3;
  SphereRule rule = build_sphere_rule(n, 12);
  const double gamma_n = schwarz_constant(n);
  Rng rng(7);

  // random data bounded by one
  double sup = 0.0;
  for (int i = 0; i < 200; ++i) {
    Vec dir = rng.unit_vector(3);
    Vec w = rng.unit_vector(n) * rng.uniform(0.5, 4.0);
    const double phase = rng.uniform(-1.0, 1.0);
    BoundaryData f;
    f.n = n;
    f.m = 3;
    f.f = [dir, w, phase](VecRef eta) -> Vec { return std::tanh(w.dot(eta) + phase) * dir; };
    Mat g = poisson_gradient(f, Vec(Vec::Zero(n)), rule);
    sup = std::max(sup, operator_norm(g));
    CHECK(operator_norm(g) <= gamma_n + 1e-6);
  }

  // hemisphere-sign data attains the constant; the 1-d polar oracle gives
  // n * omega_{n-2}/omega_{n-1} * 2/(n-1) for the same quantity
  BoundaryData hemi;
  hemi.n = n;
  hemi.m = 1;
  hemi.f = [](VecRef eta) -> Vec {
    Vec v(1);
    v(0) = eta(2) >= 0.0 ? 1.0 : -1.0;
    return v;
  };
  const double attained = operator_norm(poisson_gradient(hemi, Vec(Vec::Zero(n)), rule));
  const double oracle = n * surface_measure(n - 1) / surface_measure(n) * 2.0 / (n - 1);
  CHECK(std::abs(oracle - gamma_n) < 1e-13);
  CHECK(attained >= 0.95 * gamma_n);
  CHECK(attained <= gamma_n + 1e-6);
  CHECK(sup <= gamma_n + 1e-6);
}

TEST_CASE("gradient bound constants at the origin") {
  Fixture fx;
  // |grad P[f](0)| <= n max|f|
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    Vec w = rng.unit_vector(3) * rng.uniform(0.5, 3.0);
    BoundaryData f = make_scalar_boundary(3, [w](VecRef eta) { return std::sin(w.dot(eta)); });
    double fmax = 0.0;
    for (int k = 0; k < fx.sphere.count(); ++k)
      fmax = std::max(fmax, std::abs(f.eval1(fx.sphere.nodes.col(k))));
    CHECK(operator_norm(poisson_gradient(f, Vec(Vec::Zero(3)), fx.sphere)) <= 3.0 * fmax + 1e-9);
  }

  // Green-gradient term bounded by (1/omega) int (|y|^{1-n} - |y|) |lap| dy
  SmoothMap g = make_scalar_map(3, [](VecRef y) { return 1.0 + y(0); });
  Mat gg = green_potential_gradient(g, Vec(Vec::Zero(3)), fx.singular);
  const double omega = surface_measure(3);
  const double budget = integrate_singular(
      [&](VecRef y) {
        const double r = y.norm();
        return (1.0 / (r * r) - r) / omega * std::abs(g.eval1(y));
      },
      Vec(Vec::Zero(3)), fx.singular);
  CHECK(operator_norm(gg) <= budget + 1e-9);
}

TEST_CASE("evaluation margin helper") {
  Fixture fx;
  CHECK(poisson_margin(8) == doctest::Approx(0.05));
  Vec deep = Vec::Zero(3);
  CHECK(poisson_eval_reliable(deep, fx.sphere));
  Vec shallow = Vec::Unit(3, 0) * 0.99;
  CHECK_FALSE(poisson_eval_reliable(shallow, fx.sphere));
}
