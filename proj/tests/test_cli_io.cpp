#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "avt/output.hpp"
#include "doctest.h"

using namespace avt;

namespace {

const char* kMinimal = R"({"initial": [{"rho": 0.8, "w": 2.5}]})";

std::string field_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "";
}

std::string read(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream o;
  o << f.rdbuf();
  return o.str();
}

}  // namespace

TEST_CASE("minimal document") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.params == ModelParams::defaults());
  REQUIRE(s.initial.size() == 1);
  CHECK_FALSE(s.initial[0].has_x);
  CHECK(s.control.size() == 1);
  CHECK(s.control[0].u == 1.0);
  // params read from a scenario with no params block
  CHECK(parse_params(kMinimal) == ModelParams::defaults());
  CHECK(parse_params(R"({"v_max": 1})") == ModelParams::defaults());
}

TEST_CASE("field-level validation") {
  CHECK(field_of(R"({"initial": [{"rho": 0.5, "w": 5.0}]})") == "initial[0].w");
  CHECK(field_of(R"({"initial": [{"rho": 0.5, "w": 2.5}, {"x": 1, "rho": 0.2, "w": 2.5},
                                 {"x": 0.5, "rho": 0.3, "w": 2.5}]})") == "initial[2].x");
  CHECK(field_of(R"({"initial": [{"rho": 0.5, "w": 2.5}], "control": [{"t": 0.1, "u": 0.5}]})") ==
        "control[0].t");
  CHECK(field_of(R"({"initial": [{"rho": 0.5, "w": 2.5}], "control": [{"t": 0, "u": 2}]})") ==
        "control[0].u");
  CHECK(field_of(R"({"initial": [{"rho": 0.5, "w": 2.5}], "nu": 0.5})") == "nu");
  CHECK(field_of(R"({"initial": [{"rho": 0.5, "w": 2.5}], "color": 1})") == "color");
  CHECK_THROWS_AS(parse_scenario("{\"initial\": ["), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"params": {"v_max": 3}, "initial": [{"rho": 0.5, "w": 2.5}]})"),
                  HypothesisViolation);
}

TEST_CASE("round trip") {
  for (std::uint64_t seed : {1u, 2u, 3u, 77u}) {
    const Scenario s = random_scenario(seed);
    CHECK(parse_scenario(to_json(s)) == s);
  }
  const Scenario m = parse_scenario(kMinimal);
  CHECK(parse_scenario(to_json(m)) == m);
}

TEST_CASE("ledger records survive JSON") {
  Model m;
  const Scenario sc = random_scenario(4);
  const RunSpec rs = sc.run_spec();
  SimState sim = init(rs.model, rs.data, rs.control, rs.y0, sc.nu);
  run_until(sim, sc.horizon);
  for (const auto& r : sim.ledger) {
    const auto back = record_from_json(record_to_json(r));
    CHECK(back.t == r.t);
    CHECK(back.classification == r.classification);
    CHECK(back.row == r.row);
    CHECK(back.dFv == r.dFv);
    CHECK(back.dN == r.dN);
    CHECK(back.wave_left == r.wave_left);
    CHECK(back.av_right == r.av_right);
  }
}

TEST_CASE("outputs are deterministic and well formed") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "avt_cli_io_test";
  fs::remove_all(base);

  auto run = [&](const Scenario& sc, const fs::path& dir) {
    const RunSpec rs = sc.run_spec();
    SimState sim = init(rs.model, rs.data, rs.control, rs.y0, sc.nu);
    run_until(sim, sc.horizon);
    write_outputs(dir.string(), sim, sc, make_report(sim, sc));
  };

  const Scenario sc = random_scenario(12);
  run(sc, base / "a");
  run(sc, base / "b");
  for (const char* f : {"fronts.csv", "av.csv", "snapshots.csv", "ledger.jsonl", "functionals.csv", "report.txt"})
    CHECK(read(base / "a" / f) == read(base / "b" / f));

  Scenario c2 = parse_scenario(R"({"initial": [{"rho": 0.7, "w": 2.5}],
                                   "control": [{"t": 0, "u": 0.3}], "horizon": 2})");
  run(c2, base / "c");
  const std::string ledger = read(base / "c" / "ledger.jsonl");
  CHECK(record_from_json(ledger.substr(0, ledger.find('\n'))).classification == "NFW present at t=0");

  // constant data: one linear segment for the AV
  Scenario flat = parse_scenario(R"({"initial": [{"rho": 0.8, "w": 2.5}],
                                     "control": [{"t": 0, "u": 0.5}], "horizon": 2})");
  run(flat, base / "d");
  std::istringstream av(read(base / "d" / "av.csv"));
  std::string line;
  std::getline(av, line);
  CHECK(line == "t,y,ydot,u");
  std::vector<std::string> rows;
  while (std::getline(av, line)) rows.push_back(line);
  REQUIRE(rows.size() == 2);
  double t0, y0, v0, u0, t1, y1, v1, u1;
  REQUIRE(std::sscanf(rows[0].c_str(), "%lf,%lf,%lf,%lf", &t0, &y0, &v0, &u0) == 4);
  REQUIRE(std::sscanf(rows[1].c_str(), "%lf,%lf,%lf,%lf", &t1, &y1, &v1, &u1) == 4);
  CHECK(t0 == 0.0);
  CHECK(t1 == 2.0);
  CHECK(v0 == v1);
  CHECK(v0 == doctest::Approx(0.5));
  CHECK(y1 - y0 == v0 * 2.0);
  fs::remove_all(base);
}
