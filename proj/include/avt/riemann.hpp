#pragma once

#include <string>
#include <vector>

#include "avt/model.hpp"

namespace avt {

enum class WaveKind {
  First,
  Second,
  Linear,
  PhaseTransition,
  Fictitious,
  NonFictitious,
  SpecialNonFictitious,
};

// Short labels used in classification strings: 1, 2, LW, PT, FW, NFW, SNFW.
const char* label(WaveKind k);
bool is_av(WaveKind k);

struct Wave {
  WaveKind kind = WaveKind::First;
  State left, right;
  double speed_min = 0.0;  // equal to speed_max except for rarefactions
  double speed_max = 0.0;
  bool rarefaction = false;

  double speed() const { return speed_max; }
};

struct WaveFan {
  std::vector<Wave> waves;
  State left, right;

  bool empty() const { return waves.empty(); }
};

struct Front {
  double x = 0.0;           // position at birth_time
  double speed = 0.0;
  State left, right;
  WaveKind kind = WaveKind::First;
  double birth_time = 0.0;
  bool rarefaction = false;  // piece of a discretized rarefaction fan

  double position(double t) const { return x + speed * (t - birth_time); }
};

// Density flux jump / density jump, or the characteristic speed when the
// two densities coincide.
double rh_speed(const Model& m, State l, State r);

WaveFan solve_riemann(const Model& m, State left, State right);

// Self-similar value at x/t = xi. On a discontinuity the right state is returned.
State sample_fan(const Model& m, const WaveFan& fan, double xi);

// Replaces each rarefaction by rarefaction shocks of v-tilde strength at most
// 1/nu. Returned fronts are born at x = 0, t = 0.
std::vector<Front> discretize_rarefactions(const Model& m, const WaveFan& fan, double nu);

}  // namespace avt
