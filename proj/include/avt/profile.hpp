#pragma once

#include <vector>

#include "avt/model.hpp"

namespace avt {

// Piecewise-constant profile: states[k] lives on (breaks[k-1], breaks[k]).
// states.size() == breaks.size() + 1; the outer pieces extend to +-infinity.
struct Profile {
  std::vector<double> breaks;
  std::vector<State> states;

  State at(double x) const;  // right-continuous
};

}  // namespace avt
