#pragma once

#include "avt/riemann.hpp"

namespace avt {

struct ConstrainedSolution {
  WaveFan fan;  // includes the AV wave (FW or NFW) at speed av_speed
  double av_speed = 0.0;
  WaveKind av_wave_kind = WaveKind::Fictitious;
  bool constraint_active = false;  // true in the non-classical case

  // Index of the AV wave inside fan.waves.
  std::size_t av_index = 0;
};

// phi_{w,sigma}(rho) = F_alpha(w, sigma) + sigma rho
double phi(const Model& m, double w, double sigma, double rho);

ConstrainedSolution solve_constrained(const Model& m, State left, State right, double u_bar);

// Re-solves with the produced AV speed and compares fans and speeds to 1e-12.
bool check_consistency(const Model& m, State left, State right, double u_bar);

}  // namespace avt
