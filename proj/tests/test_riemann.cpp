#include <cmath>
#include <random>

#include "avt/riemann.hpp"
#include "doctest.h"
#include "oracle/godunov_oracle.hpp"
#include "support.hpp"

using namespace avt;

namespace {

double rel_residual(const Model& m, const Wave& w) {
  const double s = w.speed();
  const State l = w.left, r = w.right;
  const double f0 = m.flux(r) - m.flux(l), f1 = m.flux(r) * r.w - m.flux(l) * l.w;
  const double u0 = r.rho - l.rho, u1 = r.rho * r.w - l.rho * l.w;
  const double scale = 1.0 + std::abs(m.flux(l)) + std::abs(m.flux(r));
  return std::max(std::abs(f0 - s * u0), std::abs(f1 - s * u1)) / scale;
}

}  // namespace

TEST_CASE("identical states give an empty fan") {
  Model m;
  CHECK(solve_riemann(m, {0.8, 2.5}, {0.8, 2.5}).empty());
}

TEST_CASE("congested data: 1-shock then contact") {
  Model m;
  const WaveFan fan = solve_riemann(m, {0.8, 2.5}, {0.9, 3.0});
  REQUIRE(fan.waves.size() == 2);
  CHECK(fan.waves[0].kind == WaveKind::First);
  CHECK_FALSE(fan.waves[0].rarefaction);
  CHECK(fan.waves[0].right.rho == doctest::Approx(0.88).epsilon(1e-14));
  CHECK(fan.waves[0].right.w == 2.5);
  CHECK(fan.waves[0].speed() == doctest::Approx(-1.7).epsilon(1e-13));
  CHECK(fan.waves[1].kind == WaveKind::Second);
  CHECK(fan.waves[1].speed() == doctest::Approx(0.3).epsilon(1e-14));

  const State mid = sample_fan(m, fan, 0.0);
  CHECK(mid.rho == doctest::Approx(0.88));
  CHECK(mid.w == 2.5);
  CHECK(sample_fan(m, fan, -1e300) == fan.left);
  CHECK(sample_fan(m, fan, INFINITY) == fan.right);
}

TEST_CASE("free data: one linear wave at V") {
  Model m;
  const WaveFan fan = solve_riemann(m, {0.1, 2.6}, {0.2, 2.9});
  REQUIRE(fan.waves.size() == 1);
  CHECK(fan.waves[0].kind == WaveKind::Linear);
  CHECK(fan.waves[0].speed() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sample_fan(m, WaveFan{}, 3.0) == State{});
}

TEST_CASE("rarefaction discretization") {
  Model m;
  const WaveFan fan = solve_riemann(m, {0.88, 2.5}, {0.8, 2.5});
  REQUIRE(fan.waves.size() == 1);
  REQUIRE(fan.waves[0].rarefaction);
  const auto fronts = discretize_rarefactions(m, fan, 10.0);
  CHECK(fronts.size() >= 2);
  for (const auto& f : fronts) CHECK(std::abs(m.v_tilde(f.right) - m.v_tilde(f.left)) <= 0.1 + 1e-12);
  for (std::size_t i = 1; i < fronts.size(); ++i) CHECK(fronts[i - 1].speed <= fronts[i].speed);

  const WaveFan plain = solve_riemann(m, {0.8, 2.5}, {0.9, 3.0});
  CHECK(discretize_rarefactions(m, plain, 10.0).size() == plain.waves.size());
}

TEST_CASE("discretized fan approaches the exact fan at rate 1/nu") {
  Model m;
  const State l{0.95, 2.8}, r{0.3, 2.6};  // rarefaction into the free phase
  const WaveFan fan = solve_riemann(m, l, r);
  auto err = [&](double nu) {
    const auto fronts = discretize_rarefactions(m, fan, nu);
    auto approx = [&](double x) {
      State s = l;
      for (const auto& f : fronts)
        if (f.speed <= x) s = f.right;
      return s;
    };
    // midpoint rule on a grid far finer than 1/nu
    const int n = 200000;
    const double a = -4.0, b = 2.0, h = (b - a) / n;
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = a + (i + 0.5) * h;
      const State s = sample_fan(m, fan, x), t = approx(x);
      e += std::abs(s.rho - t.rho) + std::abs(s.rho * s.w - t.rho * t.w);
    }
    return e * h;
  };
  const double e10 = err(10), e20 = err(20), e40 = err(40);
  const double C = e10 * 10;
  CHECK(e20 <= C / 20 * 1.05);
  CHECK(e40 <= C / 40 * 1.05);
  CHECK(e40 < e20);
  CHECK(e20 < e10);
}

TEST_CASE("random pairs: Rankine-Hugoniot, ordering, self-similarity") {
  Model m;
  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    const State l = testing_support::random_state(m, rng), r = testing_support::random_state(m, rng);
    const WaveFan fan = solve_riemann(m, l, r);
    for (std::size_t i = 0; i < fan.waves.size(); ++i) {
      const auto& w = fan.waves[i];
      if (!w.rarefaction) CHECK(rel_residual(m, w) < 1e-10);
      if (i) CHECK(fan.waves[i - 1].speed_max <= w.speed_min + 1e-12);
      if (i) CHECK(fan.waves[i - 1].right == w.left);
    }
    if (!fan.empty()) {
      CHECK(fan.waves.front().left == l);
      CHECK(fan.waves.back().right == r);
    }
    for (const auto& f : discretize_rarefactions(m, fan, 20.0)) CHECK(rel_residual(m, Wave{f.kind, f.left, f.right, f.speed, f.speed, false}) < 1e-10);
  }
}

TEST_CASE("fine-grid oracle agrees and rejects a wrong fan") {
  Model m;
  const auto P = oracle::from(m.params());
  const State l{0.95, 2.8}, r{0.3, 2.6};
  const WaveFan fan = solve_riemann(m, l, r);
  const auto g1 = oracle::solve(P, l.rho, l.w, r.rho, r.w, -4, 2, 400, 1.0, 3.0);
  const auto g2 = oracle::solve(P, l.rho, l.w, r.rho, r.w, -4, 2, 800, 1.0, 3.0);
  const double tol = 3.0 * oracle::distance(g1, g2);
  CHECK(oracle::distance_to(g2, [&](double x) { return sample_fan(m, fan, x); }) < tol);

  // the same jumps as entropy-violating shocks
  WaveFan wrong = fan;
  for (auto& w : wrong.waves) {
    w.rarefaction = false;
    w.speed_min = w.speed_max = rh_speed(m, w.left, w.right);
  }
  CHECK(oracle::distance_to(g2, [&](double x) { return sample_fan(m, wrong, x); }) > tol);
}

TEST_CASE("invalid states are rejected") {
  Model m;
  CHECK_THROWS_AS(solve_riemann(m, {1.2, 2.5}, {0.5, 2.5}), InvalidState);
  CHECK_THROWS_AS(solve_riemann(m, {0.5, 2.0}, {0.5, 2.5}), InvalidState);
}
