#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avt/diagnostics.hpp"

namespace avt {

struct Piece {
  bool has_x = false;  // the first piece extends to -infinity
  double x = 0.0;
  double rho = 0.0;
  double w = 0.0;

  friend bool operator==(const Piece&, const Piece&) = default;
};

struct ControlPiece {
  double t = 0.0;
  double u = 0.0;

  friend bool operator==(const ControlPiece&, const ControlPiece&) = default;
};

struct Scenario {
  ModelParams params;
  std::vector<Piece> initial;
  std::vector<ControlPiece> control;
  double y0 = 0.0;
  double nu = 10.0;
  double xmin = -5.0, xmax = 5.0;
  double horizon = 1.0;
  std::vector<double> probes;
  std::uint64_t seed = 0;

  friend bool operator==(const Scenario&, const Scenario&) = default;

  InitialData initial_data() const;
  ControlFn control_fn() const;
  RunSpec run_spec() const;
};

// Throws ParseError on malformed JSON, ValidationError naming the field on bad
// values, HypothesisViolation when the parameters fail a hypothesis.
Scenario parse_scenario(const std::string& text);
std::string to_json(const Scenario& s);

// Validates a parameter block alone ("params" object or a whole scenario).
ModelParams parse_params(const std::string& text);

struct RandomScenarioOptions {
  int max_fronts = 50;       // initial breakpoints
  int max_jumps = 10;        // control jumps
  double horizon = 10.0;
  double nu = 20.0;
  double p_full_speed = 0.25;  // chance that a control value is V_max
};

// Deterministic random Cauchy problem under the default parameters.
Scenario random_scenario(std::uint64_t seed, const RandomScenarioOptions& opt = {});

}  // namespace avt
