#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "ballpot/kernels.hpp"
#include "ballpot/quadrature.hpp"
#include "ballpot/random.hpp"

using namespace ballpot;

namespace {
constexpr double kPi = 3.14159265358979323846;

// closed form for sphere monomials: all even exponents, else zero
double sphere_monomial(int n, const std::vector<int>& exps) {
  for (int e : exps)
    if (e % 2 == 1) return 0.0;
  double num = 2.0;
  double sum = 0.0;
  for (int e : exps) {
    num *= std::tgamma(0.5 * (e + 1));
    sum += 0.5 * (e + 1);
  }
  for (int i = static_cast<int>(exps.size()); i < n; ++i) {
    num *= std::tgamma(0.5);
    sum += 0.5;
  }
  return num / std::tgamma(sum);
}
}  // namespace

TEST_CASE("gauss rules reproduce classical nodes") {
  Rule1D gl2 = gauss_legendre(2);
  CHECK(gl2.nodes(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(gl2.weights(0) == doctest::Approx(1.0).epsilon(1e-14));

  // Chebyshev second kind: alpha = beta = 1/2
  const int m = 5;
  Rule1D cheb = gauss_jacobi(m, 0.5, 0.5);
  for (int i = 0; i < m; ++i) {
    const double t = std::cos(kPi * (m - i) / (m + 1));
    CHECK(cheb.nodes(i) == doctest::Approx(t).epsilon(1e-12));
    const double w = kPi / (m + 1) * (1.0 - t * t);
    CHECK(cheb.weights(i) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("sphere rule invariants and examples") {
  for (int n : {3, 4}) {
    SphereRule rule = build_sphere_rule(n, n == 3 ? 8 : 4);
    CHECK(std::abs(rule.weights.sum() - surface_measure(n)) < 1e-10);
    CHECK(rule.weights.minCoeff() > 0.0);
    double node_drift = 0.0;
    for (int i = 0; i < rule.count(); ++i)
      node_drift = std::max(node_drift, std::abs(rule.nodes.col(i).norm() - 1.0));
    CHECK(node_drift < 1e-12);
  }

  SphereRule r3 = build_sphere_rule(3, 8);
  CHECK(std::abs(r3.integrate([](VecRef) { return 1.0; }) - 4.0 * kPi) < 1e-10);
  CHECK(std::abs(r3.integrate([](VecRef e) { return e(0) * e(0); }) - 4.0 * kPi / 3.0) < 1e-9);
  CHECK(std::abs(r3.integrate([](VecRef e) { return e(0); })) < 1e-12);

  CHECK_THROWS_AS(build_sphere_rule(7, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_sphere_rule(3, 0), std::invalid_argument);
}

TEST_CASE("sphere rule integrates low-degree monomials exactly") {
  Rng rng(3);
  for (int n : {3, 4, 5}) {
    SphereRule rule = build_sphere_rule(n, n == 5 ? 2 : 3);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<int> exps(n, 0);
      int budget = 2 * rule.level - 1;
      for (int i = 0; i < n && budget > 0; ++i) {
        exps[i] = rng.index(std::min(4, budget + 1));
        budget -= exps[i];
      }
      const double want = sphere_monomial(n, exps);
      const double got = rule.integrate([&](VecRef e) {
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= pow_int(e(i), exps[i]);
        return v;
      });
      CHECK(std::abs(got - want) < 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("ball rule examples") {
  BallRule rule = build_ball_rule(3, 8);
  CHECK(std::abs(rule.weights.sum() - 4.0 * kPi / 3.0) < 1e-8);
  CHECK(rule.weights.minCoeff() > 0.0);
  CHECK(std::abs(rule.integrate([](VecRef) { return 1.0; }) - 4.0 * kPi / 3.0) < 1e-9);
  CHECK(std::abs(rule.integrate([](VecRef y) { return y.squaredNorm(); }) - 4.0 * kPi / 5.0) <
        1e-8);
  CHECK(std::abs(rule.integrate([](VecRef y) { return y(0); })) < 1e-12);
}

TEST_CASE("singular rule examples") {
  SingularRule rule = build_singular_rule(3, 6);
  Vec zero = Vec::Zero(3);

  // int_{B^3} |y|^{-1} dy = 2 pi
  const double inv = integrate_singular([](VecRef y) { return 1.0 / y.norm(); }, zero, rule);
  CHECK(std::abs(inv - 2.0 * kPi) < 1e-6);

  // int_{|y-x| <= rho} (c_n |y-x|^{2-n} - c_n rho^{2-n}) dy = rho^2 / (2n)
  const int n = 3;
  const double cn = green_constant(n);
  Vec x = Vec::Zero(3);
  x(0) = 0.25;
  for (double rho : {0.3, 0.6}) {
    const double got = integrate_ball_singular(
        [&](VecRef y) {
          const double r = (y - x).norm();
          return cn / pow_int(r, n - 2) - cn / pow_int(rho, n - 2);
        },
        x, rho, rule);
    CHECK(std::abs(got - rho * rho / (2.0 * n)) < 1e-9);
  }

  // int G(0, y) dy = 1/6 for n = 3
  const double gmass =
      integrate_singular([&](VecRef y) { return green_function(zero, y); }, zero, rule);
  CHECK(std::abs(gmass - 1.0 / 6.0) < 1e-5);

  CHECK_THROWS_AS(integrate_ball_singular([](VecRef) { return 1.0; }, zero, -1.0, rule),
                  std::invalid_argument);
}

TEST_CASE("singular rule matches the plain ball rule on smooth integrands") {
  SingularRule srule = build_singular_rule(3, 6);
  BallRule brule = build_ball_rule(3, 6);
  Vec x = Vec::Zero(3);
  x(1) = 0.4;
  auto smooth = [](VecRef y) { return std::exp(y(0)) * (1.0 + y(1) * y(1)); };
  const double a = integrate_singular(smooth, x, srule);
  const double b = brule.integrate(smooth);
  CHECK(std::abs(a - b) < 2e-6);
}

TEST_CASE("refinement convergence is monotone to the stated tolerances") {
  Vec x = Vec::Zero(3);
  x(0) = 0.2;
  // a non-polynomial integrand with the admissible singularity at x
  auto f = [&](VecRef y) { return std::exp(y(1)) / (y - x).norm(); };
  double reference;
  {
    SingularRule fine = build_singular_rule(3, 20);
    reference = integrate_singular(f, x, fine);
  }
  double prev = std::numeric_limits<double>::infinity();
  for (int level : {4, 8, 12, 16}) {
    SingularRule rule = build_singular_rule(3, level);
    const double err = std::abs(integrate_singular(f, x, rule) - reference);
    CHECK(err <= prev + 1e-12);
    prev = err;
  }
  CHECK(prev < 1e-9);

  // the three documented integrals at increasing level
  Vec zero = Vec::Zero(3);
  double prev_mass = std::numeric_limits<double>::infinity();
  for (int level : {4, 8, 12, 16}) {
    SingularRule rule = build_singular_rule(3, level);
    const double e1 =
        std::abs(integrate_singular([](VecRef y) { return 1.0 / y.norm(); }, zero, rule) -
                 2.0 * kPi);
    const double e3 = std::abs(
        integrate_singular([&](VecRef y) { return green_function(zero, y); }, zero, rule) -
        1.0 / 6.0);
    const double err = std::max(e1, e3);
    CHECK(err <= prev_mass + 1e-12);
    prev_mass = err;
  }
  CHECK(prev_mass < 1e-6);
}

TEST_CASE("rule serialization round trip and cache") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ballpot_rule_cache_test";
  fs::create_directories(dir);

  SphereRule rule = build_sphere_rule(3, 2);
  const std::string path = (dir / "probe.csv").string();
  save_rule_csv(path, rule.nodes, rule.weights);

  Mat nodes;
  Vec weights;
  REQUIRE(load_rule_csv(path, 3, &nodes, &weights));
  CHECK(nodes.cols() == rule.count());
  CHECK((nodes - rule.nodes).cwiseAbs().maxCoeff() == 0.0);
  CHECK((weights - rule.weights).cwiseAbs().maxCoeff() == 0.0);

  // cached build writes the documented file name and reloads identically
  SphereRule first = cached_sphere_rule(3, 2, dir.string());
  CHECK(fs::exists(dir / "sphere_n3_L2.csv"));
  SphereRule second = cached_sphere_rule(3, 2, dir.string());
  CHECK((first.nodes - second.nodes).cwiseAbs().maxCoeff() == 0.0);
  CHECK((first.weights - second.weights).cwiseAbs().maxCoeff() == 0.0);

  fs::remove_all(dir);
}
