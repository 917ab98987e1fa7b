#pragma once

#include <cstddef>
#include <vector>

#include "avt/riemann.hpp"

namespace avt {

struct FunctionalSnapshot {
  double F_w = 0.0;
  double F_v = 0.0;  // includes the -2|AV jump| term, may be negative
  double F = 0.0;
  int N = 0;
  int N1_minus = 0, N1_plus = 0;
  int N2_minus = 0, N2_plus = 0;
  int NPT_minus = 0, NPT_plus = 0;
  int NLW_minus = 0, NLW_plus = 0;
  int N_nfw = 0;
};

// Jump strengths of a front list. `av` indexes the AV entry (npos if absent);
// an SNFW entry takes its jump from the linear front just left of it.
FunctionalSnapshot functionals(const Model& m, const std::vector<Front>& fronts, std::size_t av);

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

}  // namespace avt
