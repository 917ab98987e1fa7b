#include "avt/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace avt {

double phi(const Model& m, double w, double sigma, double rho) {
  return m.f_alpha(w, sigma) + sigma * rho;
}

ConstrainedSolution solve_constrained(const Model& m, State l, State r, double u_bar) {
  const double V = m.v_max();
  if (!(u_bar >= -1e-12 * V && u_bar <= V * (1.0 + 1e-12))) {
    std::ostringstream os;
    os.precision(17);
    os << "control value " << u_bar << " outside [0, V_max]";
    throw InvalidControl(os.str());
  }
  u_bar = std::clamp(u_bar, 0.0, V);

  ConstrainedSolution sol;
  WaveFan classical = solve_riemann(m, l, r);
  const State s = sample_fan(m, classical, u_bar);
  const double f1 = m.flux(s);
  const double ph = phi(m, l.w, u_bar, s.rho);

  if (f1 - ph <= 1e-14 * std::max(1.0, std::abs(ph))) {
    const double u = std::min(u_bar, m.speed(s));
    const State trace = sample_fan(m, classical, u);
    Wave av;
    av.kind = WaveKind::Fictitious;
    av.left = av.right = trace;
    av.speed_min = av.speed_max = u;
    std::size_t k = 0;
    while (k < classical.waves.size() && classical.waves[k].speed_max <= u) ++k;
    sol.fan = classical;
    sol.fan.waves.insert(sol.fan.waves.begin() + static_cast<std::ptrdiff_t>(k), av);
    sol.av_index = k;
    sol.av_speed = u;
    sol.av_wave_kind = WaveKind::Fictitious;
    sol.constraint_active = false;
    return sol;
  }

  const State hat{m.hat_rho(l.w, u_bar), l.w};
  const State check{m.check_rho(l.w, u_bar), l.w};
  WaveFan lf = solve_riemann(m, l, hat);
  WaveFan rf = solve_riemann(m, check, r);
  Wave av;
  av.kind = WaveKind::NonFictitious;
  av.left = hat;
  av.right = check;
  av.speed_min = av.speed_max = u_bar;

  sol.fan.left = l;
  sol.fan.right = r;
  sol.fan.waves = lf.waves;
  sol.av_index = lf.waves.size();
  sol.fan.waves.push_back(av);
  sol.fan.waves.insert(sol.fan.waves.end(), rf.waves.begin(), rf.waves.end());
  sol.av_speed = u_bar;
  sol.av_wave_kind = WaveKind::NonFictitious;
  sol.constraint_active = true;
  return sol;
}

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }
bool close(State a, State b) { return close(a.rho, b.rho) && close(a.w, b.w); }

}  // namespace

bool check_consistency(const Model& m, State l, State r, double u_bar) {
  const auto a = solve_constrained(m, l, r, u_bar);
  const auto b = solve_constrained(m, l, r, a.av_speed);
  if (!close(a.av_speed, b.av_speed) || a.av_wave_kind != b.av_wave_kind) return false;
  if (a.fan.waves.size() != b.fan.waves.size()) return false;
  for (std::size_t i = 0; i < a.fan.waves.size(); ++i) {
    const auto& x = a.fan.waves[i];
    const auto& y = b.fan.waves[i];
    if (x.kind != y.kind || x.rarefaction != y.rarefaction) return false;
    if (!close(x.left, y.left) || !close(x.right, y.right)) return false;
    if (!close(x.speed_min, y.speed_min) || !close(x.speed_max, y.speed_max)) return false;
  }
  return true;
}

}  // namespace avt
