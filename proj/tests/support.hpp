#pragma once

#include <random>

#include "avt/model.hpp"

namespace testing_support {

// Admissible state: half the draws land in each phase, a few on the boundary
// or at the vacuum.
inline avt::State random_state(const avt::Model& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto& p = m.params();
  const double w = p.w_min + (p.w_max - p.w_min) * U(rng);
  const double rb = m.rho_boundary(w);
  const double pick = U(rng);
  if (pick < 0.03) return {0.0, w};
  if (pick < 0.06) return {rb, w};
  if (pick < 0.53) return {rb * U(rng), w};
  return {rb + (p.R - rb) * U(rng), w};
}

}  // namespace testing_support
