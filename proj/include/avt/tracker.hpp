#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "avt/constrained.hpp"
#include "avt/functionals.hpp"
#include "avt/interaction_table.hpp"
#include "avt/profile.hpp"

namespace avt {

// Piecewise-constant, right-continuous control: values[k] on [jump_times[k-1], jump_times[k]).
struct ControlFn {
  std::vector<double> jump_times;
  std::vector<double> values;

  static ControlFn constant(double u) { return ControlFn{{}, {u}}; }
  // Drops jumps that do not change the value; throws InvalidControl on bad data.
  ControlFn normalized(const Model& m) const;
  double at(double t) const;
  double tv() const;
};

struct InitialData {
  std::vector<double> breaks;  // strictly increasing
  std::vector<State> states;   // breaks.size() + 1
};

struct Guards {
  std::size_t max_events = 2'000'000;
  bool check_wave_bound = true;  // N(t) <= (6 + V/nu) N(tau+)
  bool strict = true;            // throw on table violations
};

struct Event {
  double t = std::numeric_limits<double>::infinity();
  EventKind kind = EventKind::WaveWave;
  std::size_t i = 0;  // left front of the colliding pair
  double x = 0.0;
  bool none() const { return !(t < std::numeric_limits<double>::infinity()); }
};

struct AvSample {
  double t, y, ydot, u;
};

struct FunctionalSample {
  double t;
  FunctionalSnapshot f;
};

struct HistoryEntry {
  double t;
  std::vector<Front> fronts;
  std::size_t av;
};

struct SimState {
  Model model;
  ControlFn control;
  double nu = 10.0;
  double t = 0.0;
  std::vector<Front> fronts;  // ordered by position; contains the AV entry
  std::size_t av = 0;

  std::size_t next_jump = 0;
  std::size_t events = 0;
  int n_ref = 0;  // N right after the last control change (or t = 0)
  double n_ratio_max = 0.0;
  double constraint_excess_max = -std::numeric_limits<double>::infinity();
  double y_gap_max = 0.0;

  std::vector<InteractionRecord> ledger;
  std::vector<AvSample> trajectory;
  std::vector<FunctionalSample> functional_trace;
  std::vector<HistoryEntry> history;
  std::vector<std::string> violations;

  const Front& av_front() const { return fronts[av]; }
  WaveKind av_kind() const { return fronts[av].kind; }
  double y() const { return fronts[av].position(t); }
  // One-sided traces at the AV; for an SNFW these are the carrier's states.
  State av_left() const;
  State av_right() const;
  FunctionalSnapshot snapshot() const { return functionals(model, fronts, av); }
};

SimState init(const Model& m, const InitialData& data, const ControlFn& control, double y0, double nu);

Event next_event(const SimState& sim, double horizon = std::numeric_limits<double>::infinity());
void apply_event(SimState& sim, const Event& e, const Guards& g = {});

struct RunSummary {
  std::size_t events = 0;
  double n_ratio_max = 0.0;
};

// Processes every event up to T and advances the clock to T.
RunSummary run_until(SimState& sim, double T, const Guards& g = {});

double av_velocity(const SimState& sim);

// Profile at time t by advecting the fronts after the last event before t.
Profile profile_at(const SimState& sim, double t);
Profile profile_of(const std::vector<Front>& fronts, double t);

}  // namespace avt
