#include "avt/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace avt {

const char* label(WaveKind k) {
  switch (k) {
    case WaveKind::First: return "1";
    case WaveKind::Second: return "2";
    case WaveKind::Linear: return "LW";
    case WaveKind::PhaseTransition: return "PT";
    case WaveKind::Fictitious: return "FW";
    case WaveKind::NonFictitious: return "NFW";
    case WaveKind::SpecialNonFictitious: return "SNFW";
  }
  return "?";
}

bool is_av(WaveKind k) {
  return k == WaveKind::Fictitious || k == WaveKind::NonFictitious ||
         k == WaveKind::SpecialNonFictitious;
}

namespace {

constexpr double kSameRho = 1e-13;
constexpr double kSameW = 1e-13;

bool same_rho(double a, double b) { return std::abs(a - b) <= kSameRho; }
bool same_w(double a, double b, const Model& m) {
  return std::abs(a - b) <= kSameW * m.params().w_max;
}

void check_state(const Model& m, State s) {
  const auto& p = m.params();
  const double tr = 1e-12 * p.R, tw = 1e-12 * p.w_max;
  if (!(s.rho >= -tr && s.rho <= p.R + tr) || !(s.w >= p.w_min - tw && s.w <= p.w_max + tw)) {
    std::ostringstream os;
    os.precision(17);
    os << "state (" << s.rho << ", " << s.w << ") outside [0,R] x [w_min,w_max]";
    throw InvalidState(os.str());
  }
}

Wave make_jump(WaveKind k, State l, State r, double s) {
  Wave wv;
  wv.kind = k;
  wv.left = l;
  wv.right = r;
  wv.speed_min = wv.speed_max = s;
  return wv;
}

// 1-wave between two congested states sharing w.
void push_first(const Model& m, std::vector<Wave>& out, State l, State r) {
  if (same_rho(l.rho, r.rho)) return;
  if (r.rho > l.rho) {
    out.push_back(make_jump(WaveKind::First, l, r, rh_speed(m, l, r)));
  } else {
    Wave wv;
    wv.kind = WaveKind::First;
    wv.left = l;
    wv.right = r;
    wv.rarefaction = true;
    wv.speed_min = m.lambda1_raw(l);
    wv.speed_max = m.lambda1_raw(r);
    out.push_back(wv);
  }
}

}  // namespace

double rh_speed(const Model& m, State l, State r) {
  double dr = r.rho - l.rho;
  if (std::abs(dr) <= 1e-15) {
    State mid{0.5 * (l.rho + r.rho), l.w};
    return m.in_free(mid) ? m.v_max() : m.lambda1_raw(mid);
  }
  return (m.flux(r) - m.flux(l)) / dr;
}

WaveFan solve_riemann(const Model& m, State l, State r) {
  check_state(m, l);
  check_state(m, r);
  WaveFan fan;
  fan.left = l;
  fan.right = r;
  if (same_rho(l.rho, r.rho) && same_w(l.w, r.w, m)) return fan;

  const bool lF = m.in_free(l), lC = m.in_congested(l);
  const bool rF = m.in_free(r), rC = m.in_congested(r);
  const double V = m.v_max();
  auto& out = fan.waves;

  if (lF && rF) {
    out.push_back(make_jump(WaveKind::Linear, l, r, V));
  } else if (lC && rC) {
    const double vr = m.speed(r);
    State mid = same_w(l.w, r.w, m) ? r : State{m.rho_for_v_tilde(l.w, vr), l.w};
    push_first(m, out, l, mid);
    if (!(mid == r)) out.push_back(make_jump(WaveKind::Second, out.empty() ? l : mid, r, vr));
  } else if (lF) {
    // l strictly free, r strictly congested
    const double vr = m.speed(r);
    if (l.rho <= 0.0) {
      out.push_back(make_jump(WaveKind::PhaseTransition, l, r, vr));
    } else {
      State mid = same_w(l.w, r.w, m) ? r : State{m.rho_for_v_tilde(l.w, vr), l.w};
      out.push_back(make_jump(WaveKind::PhaseTransition, l, mid, rh_speed(m, l, mid)));
      if (!(mid == r)) out.push_back(make_jump(WaveKind::Second, mid, r, vr));
    }
  } else {
    // l strictly congested, r strictly free
    State mid{m.rho_boundary(l.w), l.w};
    push_first(m, out, l, mid);
    out.push_back(make_jump(WaveKind::Linear, out.empty() ? l : mid, r, V));
  }
  return fan;
}

State sample_fan(const Model& m, const WaveFan& fan, double xi) {
  for (const auto& wv : fan.waves) {
    if (xi < wv.speed_min) return wv.left;
    if (wv.rarefaction && xi < wv.speed_max) {
      double r = m.rho_for_lambda(wv.left.w, xi);
      r = std::clamp(r, wv.right.rho, wv.left.rho);
      return State{r, wv.left.w};
    }
  }
  return fan.right;
}

std::vector<Front> discretize_rarefactions(const Model& m, const WaveFan& fan, double nu) {
  std::vector<Front> out;
  for (const auto& wv : fan.waves) {
    if (!wv.rarefaction) {
      Front f;
      f.speed = wv.speed_max;
      f.left = wv.left;
      f.right = wv.right;
      f.kind = wv.kind;
      out.push_back(f);
      continue;
    }
    const double w = wv.left.w;
    const double a = m.v_tilde(wv.left), b = m.v_tilde(wv.right);
    // strength strictly below 1/nu
    const int n = static_cast<int>(std::floor((b - a) * nu)) + 1;
    State prev = wv.left;
    for (int k = 1; k <= n; ++k) {
      State next = k == n ? wv.right : State{m.rho_for_v_tilde(w, a + (b - a) * k / n), w};
      Front f;
      f.speed = rh_speed(m, prev, next);
      f.left = prev;
      f.right = next;
      f.kind = WaveKind::First;
      f.rarefaction = true;
      out.push_back(f);
      prev = next;
    }
  }
  return out;
}

}  // namespace avt
