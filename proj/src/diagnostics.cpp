#include "avt/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>

namespace avt {

void CompensatedSum::add(double x) {
  const double t = s_ + x;
  if (std::abs(s_) >= std::abs(x)) c_ += (s_ - t) + x;
  else c_ += (x - t) + s_;
  s_ = t;
}

FunctionalSnapshot functionals(const Model& m, const std::vector<Front>& fronts, std::size_t av) {
  FunctionalSnapshot out;
  CompensatedSum fw, fv;
  const bool has_av = av < fronts.size();
  double av_jump = 0.0;
  if (has_av) {
    const Front& a = fronts[av];
    if (a.kind == WaveKind::NonFictitious) av_jump = std::abs(m.v_tilde(a.right) - m.v_tilde(a.left));
    if (a.kind == WaveKind::SpecialNonFictitious && av > 0) {
      const Front& c = fronts[av - 1];
      av_jump = std::abs(m.v_tilde(c.right) - m.v_tilde(c.left));
    }
  }
  for (std::size_t k = 0; k < fronts.size(); ++k) {
    const Front& f = fronts[k];
    fw.add(std::abs(f.right.w - f.left.w));
    fv.add(std::abs(m.v_tilde(f.right) - m.v_tilde(f.left)));
    if (f.kind == WaveKind::Fictitious || f.kind == WaveKind::SpecialNonFictitious) continue;
    if (f.left == f.right) continue;
    ++out.N;
    const bool minus = !has_av || k < av;
    switch (f.kind) {
      case WaveKind::First: ++(minus ? out.N1_minus : out.N1_plus); break;
      case WaveKind::Second: ++(minus ? out.N2_minus : out.N2_plus); break;
      case WaveKind::PhaseTransition: ++(minus ? out.NPT_minus : out.NPT_plus); break;
      case WaveKind::Linear: ++(minus ? out.NLW_minus : out.NLW_plus); break;
      case WaveKind::NonFictitious: ++out.N_nfw; break;
      default: break;
    }
  }
  fv.add(-2.0 * av_jump);
  out.F_w = fw.value();
  out.F_v = fv.value();
  out.F = out.F_w + out.F_v;
  return out;
}

std::vector<std::string> verify_ledger(const Model& m, const std::vector<InteractionRecord>& ledger) {
  std::vector<std::string> out;
  for (const auto& r : ledger) {
    auto bad = check_record(m, r);
    out.insert(out.end(), bad.begin(), bad.end());
  }
  return out;
}

namespace {

double q(State s) { return s.rho * s.w; }

// Sorted cut points of a profile clipped to (xmin, xmax), with the ends.
std::vector<double> cuts(const Profile& p, double xmin, double xmax) {
  std::vector<double> c{xmin, xmax};
  for (double b : p.breaks)
    if (b > xmin && b < xmax) c.push_back(b);
  return c;
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

State state_at(const std::vector<Front>& fs, double x, double t) {
  State s = fs.front().left;
  for (const auto& f : fs) {
    if (f.position(t) < x) s = f.right;
    else break;
  }
  return s;
}

// Integral over [t0, t1] of the (rho, rho w) flux through x, fronts fixed.
std::pair<double, double> boundary_flux(const Model& m, const std::vector<Front>& fs, double x,
                                        double t0, double t1) {
  std::vector<double> ts{t0, t1};
  for (const auto& f : fs) {
    if (f.speed == 0.0) continue;
    const double tau = f.birth_time + (x - f.x) / f.speed;
    if (tau > t0 && tau < t1) ts.push_back(tau);
  }
  sort_unique(ts);
  CompensatedSum a, b;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double dt = ts[k + 1] - ts[k];
    const State s = state_at(fs, x, 0.5 * (ts[k] + ts[k + 1]));
    const double f = m.flux(s);
    a.add(f * dt);
    b.add(f * s.w * dt);
  }
  return {a.value(), b.value()};
}

}  // namespace

double l1_distance(const Profile& a, const Profile& b, double xmin, double xmax) {
  auto c = cuts(a, xmin, xmax);
  auto cb = cuts(b, xmin, xmax);
  c.insert(c.end(), cb.begin(), cb.end());
  sort_unique(c);
  CompensatedSum sum;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const double mid = 0.5 * (c[k] + c[k + 1]);
    const State sa = a.at(mid), sb = b.at(mid);
    sum.add((std::abs(sa.rho - sb.rho) + std::abs(q(sa) - q(sb))) * (c[k + 1] - c[k]));
  }
  return sum.value();
}

std::pair<double, double> mass(const Profile& p, double xmin, double xmax) {
  auto c = cuts(p, xmin, xmax);
  sort_unique(c);
  CompensatedSum r, w;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const State s = p.at(0.5 * (c[k] + c[k + 1]));
    r.add(s.rho * (c[k + 1] - c[k]));
    w.add(q(s) * (c[k + 1] - c[k]));
  }
  return {r.value(), w.value()};
}

ConservationReport conservation_audit(const SimState& sim, double xmin, double xmax) {
  const auto& h = sim.history;
  CompensatedSum in_r, in_q;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double t0 = h[k].t;
    const double t1 = k + 1 < h.size() ? h[k + 1].t : sim.t;
    if (!(t1 > t0)) continue;
    auto [ar, aq] = boundary_flux(sim.model, h[k].fronts, xmin, t0, t1);
    auto [br, bq] = boundary_flux(sim.model, h[k].fronts, xmax, t0, t1);
    in_r.add(ar);
    in_r.add(-br);
    in_q.add(aq);
    in_q.add(-bq);
  }
  const auto m0 = mass(profile_of(h.front().fronts, 0.0), xmin, xmax);
  const auto m1 = mass(profile_of(h.back().fronts, sim.t), xmin, xmax);
  ConservationReport rep;
  const double dr = std::max({std::abs(m0.first), std::abs(m1.first), 1e-12});
  const double dq = std::max({std::abs(m0.second), std::abs(m1.second), 1e-12});
  rep.drift_rho = std::abs(m1.first - m0.first - in_r.value()) / dr;
  rep.drift_q = std::abs(m1.second - m0.second - in_q.value()) / dq;
  return rep;
}

double constraint_audit(const SimState& sim) {
  const Model& m = sim.model;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : sim.history) {
    const Front& a = h.fronts[h.av];
    const State l = a.kind == WaveKind::SpecialNonFictitious ? h.fronts[h.av - 1].left : a.left;
    const double yd = a.speed;
    for (State s : {l, a.right})
      worst = std::max(worst, s.rho * (m.speed(s) - yd) - m.f_alpha(s.w, yd));
  }
  return worst;
}

TrajectoryReport trajectory_audit(const SimState& sim) {
  TrajectoryReport rep;
  const auto& tr = sim.trajectory;
  for (std::size_t k = 1; k < tr.size(); ++k) rep.tv_ydot += std::abs(tr[k].ydot - tr[k - 1].ydot);
  rep.sup_Fv = -std::numeric_limits<double>::infinity();
  for (const auto& f : sim.functional_trace) rep.sup_Fv = std::max(rep.sup_Fv, f.f.F_v);
  for (std::size_t k = 0; k < sim.next_jump; ++k)
    rep.tv_u += std::abs(sim.control.values[k + 1] - sim.control.values[k]);
  rep.y_gap = sim.y_gap_max;
  return rep;
}

namespace {

// 5-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 5> kGx{-0.9061798459386640, -0.5384693101056831, 0.0,
                                    0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGw{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                    0.4786286704993665, 0.2369268850561891};

template <class F>
double gauss(F f, double a, double b, int pieces) {
  CompensatedSum s;
  const double h = (b - a) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double c = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < kGx.size(); ++k) s.add(kGw[k] * f(c + 0.5 * h * kGx[k]) * 0.5 * h);
  }
  return s.value();
}

}  // namespace

double exact_error(const Model& m, State l, State r, double u, double y0, double t, const Profile& p,
                   double xmin, double xmax) {
  const auto sol = solve_constrained(m, l, r, u);
  auto c = cuts(p, xmin, xmax);
  for (const auto& wv : sol.fan.waves) {
    for (double s : {wv.speed_min, wv.speed_max}) {
      const double x = y0 + s * t;
      if (x > xmin && x < xmax) c.push_back(x);
    }
  }
  sort_unique(c);
  CompensatedSum sum;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const double a = c[k], b = c[k + 1];
    const double xi = (0.5 * (a + b) - y0) / t;
    bool inside_fan = false;
    for (const auto& wv : sol.fan.waves)
      if (wv.rarefaction && xi > wv.speed_min && xi < wv.speed_max) inside_fan = true;
    auto f = [&](double x) {
      const State e = sample_fan(m, sol.fan, (x - y0) / t);
      const State s = p.at(x);
      return std::abs(e.rho - s.rho) + std::abs(q(e) - q(s));
    };
    sum.add(gauss(f, a, b, inside_fan ? 64 : 1));
  }
  return sum.value();
}

ConvergenceReport convergence_study(const RunSpec& spec, const std::vector<double>& nu_list,
                                    const std::vector<double>& probes, double xmin, double xmax,
                                    const Guards& g) {
  ConvergenceReport rep;
  rep.nu_list = nu_list;
  rep.probe_times = probes;
  const double T = std::max(spec.horizon, *std::max_element(probes.begin(), probes.end()));

  struct Level {
    std::vector<Profile> profiles;
    double fw_drift = 0.0;
    double excess = 0.0;
    std::size_t events = 0;
  };
  std::vector<std::future<Level>> jobs;
  for (double nu : nu_list) {
    jobs.push_back(std::async(std::launch::async, [&spec, &probes, &g, T, nu] {
      SimState sim = init(spec.model, spec.data, spec.control, spec.y0, nu);
      run_until(sim, T, g);
      Level lv;
      for (double t : probes) lv.profiles.push_back(profile_at(sim, t));
      const double fw0 = sim.functional_trace.front().f.F_w;
      for (const auto& f : sim.functional_trace) lv.fw_drift = std::max(lv.fw_drift, std::abs(f.f.F_w - fw0));
      lv.excess = constraint_audit(sim);
      lv.events = sim.events;
      return lv;
    }));
  }
  std::vector<Level> levels;
  for (auto& j : jobs) levels.push_back(j.get());

  const std::size_t L = nu_list.size();
  rep.distance.assign(probes.size(), std::vector<std::vector<double>>(L, std::vector<double>(L, 0.0)));
  for (std::size_t p = 0; p < probes.size(); ++p) {
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = i + 1; j < L; ++j)
        rep.distance[p][i][j] = rep.distance[p][j][i] =
            l1_distance(levels[i].profiles[p], levels[j].profiles[p], xmin, xmax);
    for (std::size_t i = 0; i + 2 < L; ++i)
      if (rep.distance[p][i + 1][i + 2] > rep.distance[p][i][i + 1] + 1e-12) rep.monotone = false;
  }
  for (const auto& lv : levels) {
    rep.fw_drift.push_back(lv.fw_drift);
    rep.constraint_excess.push_back(lv.excess);
    rep.events.push_back(lv.events);
  }

  // Two-state data with the AV on the jump (or constant data) and constant
  // control is self-similar, so the exact solution is the constrained fan.
  const auto& d = spec.data;
  const bool self_similar = spec.control.jump_times.empty() &&
                            (d.breaks.empty() || (d.breaks.size() == 1 && d.breaks[0] == spec.y0));
  if (self_similar && L >= 2) {
    rep.has_exact = true;
    const State l = d.states.front(), r = d.states.back();
    const double u = spec.control.values.front();
    rep.exact_error.assign(probes.size(), std::vector<double>(L, 0.0));
    for (std::size_t p = 0; p < probes.size(); ++p) {
      for (std::size_t i = 0; i < L; ++i)
        rep.exact_error[p][i] =
            exact_error(spec.model, l, r, u, spec.y0, probes[p], levels[i].profiles[p], xmin, xmax);
      const double C = std::max(rep.exact_error[p][0] * nu_list[0], rep.exact_error[p][1] * nu_list[1]);
      rep.fitted_C.push_back(C);
      for (std::size_t i = 0; i < L; ++i)
        if (rep.exact_error[p][i] > C / nu_list[i] * (1.0 + 1e-9) + 1e-12) rep.rate_bound = false;
    }
  }
  return rep;
}

InitialData approximate_profile(const Model& m, const std::function<State(double)>& f, double xmin,
                                double xmax, double nu) {
  const auto& p = m.params();
  const int n = std::max(1, static_cast<int>(std::ceil((xmax - xmin) * nu - 1e-9)));
  const double h = (xmax - xmin) / n;
  InitialData out;
  for (int k = 0; k < n; ++k) {
    const double a = xmin + k * h, b = a + h;
    const double rho = gauss([&](double x) { return f(x).rho; }, a, b, 4) / h;
    const double qq = gauss([&](double x) { return q(f(x)); }, a, b, 4) / h;
    State s;
    s.rho = std::clamp(rho, 0.0, p.R);
    s.w = rho > 0.0 ? std::clamp(qq / rho, p.w_min, p.w_max) : f(0.5 * (a + b)).w;
    if (!out.states.empty() && out.states.back() == s) continue;
    if (!out.states.empty()) out.breaks.push_back(a);
    out.states.push_back(s);
  }
  return out;
}

}  // namespace avt
