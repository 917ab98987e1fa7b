#include <cmath>

#include "avt/diagnostics.hpp"
#include "avt/scenario.hpp"
#include "doctest.h"

using namespace avt;

namespace {

InitialData constant(State s) { return InitialData{{}, {s}}; }

std::size_t classical(const SimState& sim) {
  std::size_t n = 0;
  for (const auto& f : sim.fronts)
    if (!is_av(f.kind)) ++n;
  return n;
}

}  // namespace

TEST_CASE("constant data with a free-flowing AV") {
  Model m;
  SimState sim = init(m, constant({0.8, 2.5}), ControlFn::constant(0.5), 0.0, 10.0);
  CHECK(classical(sim) == 0);
  CHECK(sim.av_kind() == WaveKind::Fictitious);
  CHECK(sim.av_front().speed == doctest::Approx(0.5));
  CHECK(next_event(sim).none());
  run_until(sim, 3.0);
  CHECK(sim.y() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(sim.ledger.front().classification == "FW present at t=0");
}

TEST_CASE("constant data with an active constraint") {
  Model m;
  SimState sim = init(m, constant({0.7, 2.5}), ControlFn::constant(0.3), 0.0, 10.0);
  CHECK(classical(sim) == 2);
  CHECK(sim.av_kind() == WaveKind::NonFictitious);
  CHECK(sim.av_front().speed == 0.3);
  CHECK(sim.ledger.front().classification == "NFW present at t=0");
  CHECK(next_event(sim).none());

  // with a control jump, that is the next event
  SimState j = init(m, constant({0.7, 2.5}), ControlFn{{2.0}, {0.3, 0.6}}, 0.0, 10.0);
  const Event e = next_event(j);
  CHECK(e.kind == EventKind::ControlJump);
  CHECK(e.t == 2.0);
}

TEST_CASE("empty road: no classical fronts") {
  Model m;
  for (double u : {0.2, 1.0}) {
    SimState sim = init(m, constant({0.0, 2.8}), ControlFn::constant(u), 1.0, 20.0);
    CHECK(classical(sim) == 0);
    run_until(sim, 2.0);
    CHECK(sim.y() == doctest::Approx(1.0 + 2.0 * u));
  }
}

TEST_CASE("two fronts meeting") {
  Model m;
  InitialData d{{0.0, 1.0}, {{0.0, 2.5}, {0.3, 2.5}, {0.8, 2.5}}};
  SimState sim = init(m, d, ControlFn::constant(1.0), -5.0, 10.0);
  // LW at x=0 with speed 1, PT from (0.3,2.5) to (0.8,2.5) at x=1 with speed (0.4-0.3)/0.5 = 0.2
  const Event e = next_event(sim);
  CHECK(e.kind == EventKind::WaveWave);
  CHECK(e.t == doctest::Approx(1.25));
  CHECK(e.x == doctest::Approx(1.25));
}

TEST_CASE("AV velocity law") {
  Model m;
  SimState a = init(m, constant({0.3, 2.5}), ControlFn::constant(0.4), 0.0, 10.0);
  CHECK(av_velocity(a) == doctest::Approx(0.4));
  SimState b = init(m, constant({0.8, 2.5}), ControlFn::constant(0.9), 0.0, 10.0);
  CHECK(av_velocity(b) == doctest::Approx(0.5));
  SimState c = init(m, constant({0.7, 2.5}), ControlFn::constant(0.3), 0.0, 10.0);
  CHECK(av_velocity(c) == 0.3);
}

TEST_CASE("profiles advect linearly between events") {
  Model m;
  // fronts far enough apart that their swept strips do not overlap before t = 1
  InitialData d{{-3.0, 3.0, 7.0}, {{0.1, 2.6}, {0.2, 2.9}, {0.8, 2.9}, {0.8, 2.5}}};
  SimState sim = init(m, d, ControlFn::constant(0.5), 12.0, 10.0);
  REQUIRE(next_event(sim, 1.0).none());
  run_until(sim, 1.0);
  const Profile p0 = profile_at(sim, 0.0), p1 = profile_at(sim, 1.0);
  double expect = 0.0;
  for (const auto& f : sim.fronts)
    expect += (std::abs(f.right.rho - f.left.rho) + std::abs(f.right.rho * f.right.w - f.left.rho * f.left.w)) *
              std::abs(f.speed);
  CHECK(l1_distance(p0, p1, -10, 20) == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(profile_at(sim, 1.5), OutOfSpan);
  // mass in a window the waves do not reach is unchanged
  const auto m0 = mass(p0, -1, 1), m1 = mass(p1, -1, 1);
  CHECK(m0.first == doctest::Approx(m1.first).epsilon(1e-14));
  CHECK(m0.second == doctest::Approx(m1.second).epsilon(1e-14));
}

TEST_CASE("control drop at a free trace leaving full speed") {
  Model m;
  SimState sim = init(m, constant({0.45, 2.88}), ControlFn{{0.5}, {1.0, 0.4}}, 0.0, 10.0);
  run_until(sim, 1.0);
  REQUIRE(sim.ledger.size() >= 2);
  CHECK(sim.ledger[1].row == "FW/PT-NFW-LW");
  CHECK(sim.ledger[1].dN == 3);
  CHECK(std::abs(sim.ledger[1].dFv) < 1e-12);
  CHECK(sim.violations.empty());
}

TEST_CASE("control drop at a congested trace") {
  Model m;
  SimState sim = init(m, constant({0.7, 2.5}), ControlFn{{0.5}, {0.8, 0.3}}, 0.0, 10.0);
  CHECK(sim.av_kind() == WaveKind::Fictitious);
  run_until(sim, 1.0);
  REQUIRE(sim.ledger.size() >= 2);
  CHECK(sim.ledger[1].row == "FW/1-NFW-PT");
  CHECK(sim.ledger[1].dN == 3);
  CHECK(sim.av_kind() == WaveKind::NonFictitious);
}

TEST_CASE("release of an NFW to full speed rides a linear wave") {
  Model m;
  SimState sim = init(m, constant({0.7, 2.5}), ControlFn{{0.5}, {0.3, 1.0}}, 0.0, 10.0);
  run_until(sim, 0.6);
  CHECK(sim.ledger[1].kind == EventKind::ControlJump);
  CHECK(sim.ledger[1].row == "NFW/1-SNFW");
  CHECK(sim.av_kind() == WaveKind::SpecialNonFictitious);
  CHECK(sim.violations.empty());
}

TEST_CASE("bad inputs are rejected") {
  Model m;
  CHECK_THROWS_AS(init(m, InitialData{{0.0}, {{0.5, 2.5}}}, ControlFn::constant(0.5), 0.0, 10.0),
                  InvalidInitialData);
  CHECK_THROWS_AS(init(m, constant({1.5, 2.5}), ControlFn::constant(0.5), 0.0, 10.0), InvalidInitialData);
  CHECK_THROWS_AS(init(m, constant({0.5, 2.5}), ControlFn::constant(1.5), 0.0, 10.0), InvalidControl);
  CHECK_THROWS_AS(init(m, constant({0.5, 2.5}), ControlFn{{-1.0}, {0.5, 0.4}}, 0.0, 10.0), InvalidControl);
}

TEST_CASE("front count guard trips when the bound is forced low") {
  Model m;
  // rarefaction fronts reach the AV near t = 1.26
  InitialData d{{0.0, 2.0}, {{0.95, 2.5}, {0.3, 2.5}, {0.3, 2.9}}};
  SimState sim = init(m, d, ControlFn::constant(0.5), -3.0, 50.0);
  sim.n_ref = 0;  // pretend the reference count was zero
  CHECK_THROWS_AS(run_until(sim, 5.0), GuardTripped);
}

TEST_CASE("random scenarios run clean") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario sc = random_scenario(seed);
    const RunSpec rs = sc.run_spec();
    SimState sim = init(rs.model, rs.data, rs.control, rs.y0, sc.nu);
    CHECK_NOTHROW(run_until(sim, sc.horizon));
    CHECK(sim.violations.empty());
  }
}
