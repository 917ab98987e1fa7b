#include "avt/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace avt {

namespace {

constexpr double kTie = 1e-12;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<Front> place(std::vector<Front> proto, double x, double t) {
  for (auto& f : proto) {
    f.x = x;
    f.birth_time = t;
  }
  return proto;
}

std::size_t find_av(const std::vector<Front>& fs, std::size_t from = 0) {
  for (std::size_t k = from; k < fs.size(); ++k)
    if (is_av(fs[k].kind)) return k;
  return fs.size();
}

void check_state(const Model& m, State s, const char* what) {
  const auto& p = m.params();
  if (!(s.rho >= 0.0 && s.rho <= p.R && s.w >= p.w_min && s.w <= p.w_max))
    throw InvalidInitialData(std::string(what) + ": state (" + num(s.rho) + ", " + num(s.w) +
                             ") outside [0,R] x [w_min,w_max]");
}

// Control value in force given the jumps processed so far.
double current_u(const SimState& s) { return s.control.values[s.next_jump]; }

// Tokens of a contiguous range; an SNFW and its carrier read as one "SNFW".
void tokens_of(const Model& m, const std::vector<Front>& fs, std::size_t lo, std::size_t hi,
               std::size_t av, bool snfw, std::vector<Token>& toks, std::vector<WaveKind>& kinds) {
  for (std::size_t k = lo; k <= hi && k < fs.size(); ++k) {
    if (snfw && k + 1 == av) continue;
    toks.push_back(token_for(m, fs[k]));
    kinds.push_back(fs[k].kind);
  }
}

void record_state(SimState& s, const FunctionalSnapshot& f) {
  const double u = current_u(s);
  s.trajectory.push_back({s.t, s.y(), s.av_front().speed, u});
  s.functional_trace.push_back({s.t, f});
  s.history.push_back({s.t, s.fronts, s.av});
}

}  // namespace

ControlFn ControlFn::normalized(const Model& m) const {
  if (values.empty() || values.size() != jump_times.size() + 1)
    throw InvalidControl("control needs one more value than jump times");
  const double V = m.v_max();
  for (double v : values)
    if (!(v >= 0.0 && v <= V)) throw InvalidControl("control value " + num(v) + " outside [0, V_max]");
  for (std::size_t k = 0; k < jump_times.size(); ++k) {
    if (!(jump_times[k] > 0.0)) throw InvalidControl("control jump times must be positive");
    if (k > 0 && !(jump_times[k] > jump_times[k - 1]))
      throw InvalidControl("control jump times must increase");
  }
  ControlFn out;
  out.values.push_back(values[0]);
  for (std::size_t k = 0; k < jump_times.size(); ++k) {
    if (values[k + 1] == out.values.back()) continue;
    out.jump_times.push_back(jump_times[k]);
    out.values.push_back(values[k + 1]);
  }
  return out;
}

double ControlFn::at(double t) const {
  auto k = std::upper_bound(jump_times.begin(), jump_times.end(), t) - jump_times.begin();
  return values[static_cast<std::size_t>(k)];
}

double ControlFn::tv() const {
  double s = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) s += std::abs(values[k] - values[k - 1]);
  return s;
}

State SimState::av_left() const {
  if (av_kind() == WaveKind::SpecialNonFictitious) return fronts[av - 1].left;
  return fronts[av].left;
}

State SimState::av_right() const { return fronts[av].right; }

SimState init(const Model& m, const InitialData& data, const ControlFn& control, double y0, double nu) {
  if (data.states.size() != data.breaks.size() + 1)
    throw InvalidInitialData("initial data needs one more state than breakpoints");
  for (std::size_t k = 1; k < data.breaks.size(); ++k)
    if (!(data.breaks[k] > data.breaks[k - 1]))
      throw InvalidInitialData("breakpoints must be strictly increasing");
  for (const auto& s : data.states) check_state(m, s, "initial data");
  if (!(nu >= 1.0)) throw InvalidInitialData("nu must be at least 1");
  if (!std::isfinite(y0)) throw InvalidInitialData("y0 must be finite");

  SimState sim;
  sim.model = m;
  sim.control = control.normalized(m);
  sim.nu = nu;
  const double u0 = sim.control.at(0.0);

  // Where the AV sits: on a breakpoint, or inside piece `piece`.
  std::size_t on_break = data.breaks.size();
  for (std::size_t k = 0; k < data.breaks.size(); ++k)
    if (std::abs(data.breaks[k] - y0) <= 1e-14 * std::max(1.0, std::abs(y0))) on_break = k;
  const std::size_t piece =
      static_cast<std::size_t>(std::upper_bound(data.breaks.begin(), data.breaks.end(), y0) -
                               data.breaks.begin());

  auto av_fan = [&](State l, State r) {
    auto sol = solve_constrained(m, l, r, u0);
    return place(discretize_rarefactions(m, sol.fan, nu), y0, 0.0);
  };

  bool placed = false;
  for (std::size_t k = 0; k <= data.breaks.size(); ++k) {
    if (!placed && on_break == data.breaks.size() && piece == k) {
      auto fs = av_fan(data.states[k], data.states[k]);
      sim.fronts.insert(sim.fronts.end(), fs.begin(), fs.end());
      placed = true;
    }
    if (k == data.breaks.size()) break;
    if (k == on_break) {
      auto fs = av_fan(data.states[k], data.states[k + 1]);
      sim.fronts.insert(sim.fronts.end(), fs.begin(), fs.end());
      placed = true;
    } else {
      auto fan = solve_riemann(m, data.states[k], data.states[k + 1]);
      auto fs = place(discretize_rarefactions(m, fan, nu), data.breaks[k], 0.0);
      sim.fronts.insert(sim.fronts.end(), fs.begin(), fs.end());
    }
  }
  sim.av = find_av(sim.fronts);

  const auto f = sim.snapshot();
  sim.n_ref = f.N;
  InteractionRecord r;
  r.t = 0.0;
  r.x = y0;
  r.kind = EventKind::Init;
  r.classification = sim.av_kind() == WaveKind::NonFictitious ? "NFW present at t=0" : "FW present at t=0";
  r.row = "init";
  r.xi_minus = r.xi_plus = sim.av_front().speed;
  r.u_minus = r.u_plus = u0;
  r.av_left = sim.av_left();
  r.av_right = sim.av_right();
  r.F_v_before = f.F_v;
  r.N_before = f.N;
  sim.ledger.push_back(r);
  record_state(sim, f);
  return sim;
}

Event next_event(const SimState& sim, double horizon) {
  struct Cand {
    double t, x;
    std::size_t i;
    EventKind kind;
  };
  std::vector<Cand> cands;
  const auto& fs = sim.fronts;
  const bool snfw = sim.av_kind() == WaveKind::SpecialNonFictitious;
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    const Front& a = fs[i];
    const Front& b = fs[i + 1];
    if (!(a.speed > b.speed)) continue;
    const double gap = b.position(sim.t) - a.position(sim.t);
    const double tc = sim.t + std::max(0.0, gap) / (a.speed - b.speed);
    if (tc > horizon) continue;
    const bool touches_av = i == sim.av || i + 1 == sim.av || (snfw && i + 2 == sim.av);
    const double x = touches_av ? fs[sim.av].position(tc) : a.position(tc);
    cands.push_back({tc, x, i, touches_av ? EventKind::WaveAV : EventKind::WaveWave});
  }
  if (sim.next_jump < sim.control.jump_times.size()) {
    const double tj = std::max(sim.t, sim.control.jump_times[sim.next_jump]);
    if (tj <= horizon) cands.push_back({tj, fs[sim.av].position(tj), sim.av, EventKind::ControlJump});
  }
  if (cands.empty()) return {};
  double tmin = cands.front().t;
  for (const auto& c : cands) tmin = std::min(tmin, c.t);
  const Cand* best = nullptr;
  for (const auto& c : cands) {
    if (c.t > tmin + kTie) continue;
    if (!best || c.x < best->x || (c.x == best->x && c.i < best->i)) best = &c;
  }
  Event e;
  e.t = best->t;
  e.kind = best->kind;
  e.i = best->i;
  e.x = best->x;
  return e;
}

void apply_event(SimState& sim, const Event& e, const Guards& g) {
  const Model& m = sim.model;
  const double te = std::max(sim.t, e.t);
  sim.t = te;

  const FunctionalSnapshot before = sim.snapshot();
  const WaveKind kind_before = sim.av_kind();
  const bool snfw = kind_before == WaveKind::SpecialNonFictitious;
  const double xi_minus = sim.av_front().speed;
  const double y_before = sim.y();

  InteractionRecord r;
  r.t = te;
  r.kind = e.kind;
  r.xi_minus = xi_minus;
  r.av_left = sim.av_left();
  r.av_right = sim.av_right();
  r.F_v_before = before.F_v;
  r.N_before = before.N;

  std::size_t lo = e.i, hi = e.i + 1;
  std::vector<Front> proto;
  double x = 0.0;
  double u_plus = current_u(sim);

  if (e.kind == EventKind::ControlJump) {
    u_plus = sim.control.values[sim.next_jump + 1];
    r.u_minus = sim.control.values[sim.next_jump];
    ++sim.next_jump;
    lo = hi = sim.av;
    if (snfw) lo = sim.av - 1;
    x = sim.y();
    r.wave_left = r.av_left;
    r.wave_right = r.av_right;
  } else {
    r.u_minus = u_plus;
  }
  r.u_plus = u_plus;

  if (e.kind == EventKind::WaveWave) {
    x = sim.fronts[lo].position(te);
    const State l = sim.fronts[lo].left, rr = sim.fronts[hi].right;
    proto = discretize_rarefactions(m, solve_riemann(m, l, rr), sim.nu);
    r.wave_left = l;
    r.wave_right = rr;
  } else {
    if (e.kind == EventKind::WaveAV) {
      lo = std::min(lo, snfw ? sim.av - 1 : sim.av);
      hi = std::max(hi, sim.av);
      x = sim.y();
      for (std::size_t k = lo; k <= hi; ++k) {
        if (k == sim.av || (snfw && k + 1 == sim.av)) continue;
        r.wave_left = sim.fronts[k].left;
        r.wave_right = sim.fronts[k].right;
      }
    }
    const State l = sim.fronts[lo].left, rr = sim.fronts[hi].right;
    auto sol = solve_constrained(m, l, rr, u_plus);
    proto = discretize_rarefactions(m, sol.fan, sim.nu);
  }
  r.x = x;

  std::vector<Token> tb;
  std::vector<WaveKind> kb;
  tokens_of(m, sim.fronts, lo, hi, sim.av, snfw, tb, kb);

  auto fresh = place(std::move(proto), x, te);
  const std::size_t removed = hi - lo + 1;
  sim.fronts.erase(sim.fronts.begin() + static_cast<std::ptrdiff_t>(lo),
                   sim.fronts.begin() + static_cast<std::ptrdiff_t>(hi + 1));
  sim.fronts.insert(sim.fronts.begin() + static_cast<std::ptrdiff_t>(lo), fresh.begin(), fresh.end());

  if (e.kind == EventKind::WaveWave) {
    if (sim.av > hi) sim.av = sim.av + fresh.size() - removed;
  } else {
    sim.av = find_av(sim.fronts, lo);
    Front& a = sim.fronts[sim.av];
    // After a control change that releases an NFW to full speed, the AV rides
    // the linear wave leaving the phase boundary.
    if (e.kind == EventKind::ControlJump && kind_before == WaveKind::NonFictitious &&
        a.kind == WaveKind::Fictitious && a.speed == m.v_max() && sim.av > lo &&
        sim.fronts[sim.av - 1].kind == WaveKind::Linear && sim.fronts[sim.av - 1].speed == m.v_max()) {
      a.kind = WaveKind::SpecialNonFictitious;
    }
  }
  const bool snfw_after = sim.av_kind() == WaveKind::SpecialNonFictitious;

  std::vector<Token> ta;
  std::vector<WaveKind> ka;
  if (!fresh.empty()) {
    std::size_t hi_after = lo + fresh.size() - 1;
    tokens_of(m, sim.fronts, lo, hi_after, sim.av, snfw_after, ta, ka);
  }
  for (const auto& f : fresh)
    if (f.kind == WaveKind::First) ++r.n_first_created;
  // the incoming side is always the colliding pair (or wave and AV) as is
  const auto& tbc = tb;
  auto tac = compress_first(ta, ka);
  r.classification = render(tbc, tac);
  r.row = match_row(e.kind, tbc, tac);

  const FunctionalSnapshot after = sim.snapshot();
  r.dFw = after.F_w - before.F_w;
  r.dFv = after.F_v - before.F_v;
  r.dN = after.N - before.N;
  r.xi_plus = sim.av_front().speed;
  r.dxi = r.xi_plus - r.xi_minus;

  ++sim.events;
  auto bad = check_record(m, r);

  // AV velocity law and constraint at both traces.
  const double ydot = sim.av_front().speed;
  const double law = std::min(current_u(sim), m.speed(sim.av_right()));
  if (std::abs(ydot - law) > 1e-12) bad.push_back("AV speed " + num(ydot) + " != " + num(law));
  for (State s : {sim.av_left(), sim.av_right()}) {
    const double ex = s.rho * (m.speed(s) - ydot) - m.f_alpha(s.w, ydot);
    sim.constraint_excess_max = std::max(sim.constraint_excess_max, ex);
  }
  sim.y_gap_max = std::max(sim.y_gap_max, std::abs(sim.y() - y_before));

  if (!bad.empty()) {
    r.notes = bad.front();
    for (auto& b : bad) sim.violations.push_back(b);
  }
  sim.ledger.push_back(r);
  record_state(sim, after);

  if (g.strict && r.row.empty())
    throw UnclassifiableInteraction("no table row for " + r.classification + " at t=" + num(te));
  if (g.strict && !bad.empty()) throw TableViolation(bad.front());

  if (e.kind == EventKind::ControlJump) sim.n_ref = after.N;
  if (sim.n_ref > 0) sim.n_ratio_max = std::max(sim.n_ratio_max, double(after.N) / sim.n_ref);
  const double bound = (6.0 + m.v_max() / sim.nu) * sim.n_ref;
  if (g.check_wave_bound && after.N > bound)
    throw GuardTripped("front count " + std::to_string(after.N) + " exceeds " + num(bound) +
                       " at t=" + num(te));
  if (sim.events > g.max_events)
    throw GuardTripped("more than " + std::to_string(g.max_events) + " events");
}

RunSummary run_until(SimState& sim, double T, const Guards& g) {
  while (true) {
    Event e = next_event(sim, T);
    if (e.none()) break;
    apply_event(sim, e, g);
  }
  if (T > sim.t) {
    sim.t = T;
    sim.trajectory.push_back({T, sim.y(), sim.av_front().speed, current_u(sim)});
  }
  return {sim.events, sim.n_ratio_max};
}

double av_velocity(const SimState& sim) {
  return std::min(current_u(sim), sim.model.speed(sim.av_right()));
}

State Profile::at(double x) const {
  auto k = std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin();
  return states[static_cast<std::size_t>(k)];
}

Profile profile_of(const std::vector<Front>& fronts, double t) {
  Profile p;
  if (fronts.empty()) return p;
  p.states.push_back(fronts.front().left);
  double last = -std::numeric_limits<double>::infinity();
  for (const auto& f : fronts) {
    if (f.left == f.right) continue;
    const double x = std::max(last, f.position(t));
    if (!p.breaks.empty() && x == p.breaks.back()) {
      p.states.back() = f.right;  // coincident fronts: keep the outermost state
    } else {
      p.breaks.push_back(x);
      p.states.push_back(f.right);
    }
    last = x;
  }
  return p;
}

Profile profile_at(const SimState& sim, double t) {
  if (!(t >= 0.0) || t > sim.t + 1e-12)
    throw OutOfSpan("time " + num(t) + " outside simulated span [0, " + num(sim.t) + "]");
  auto it = std::upper_bound(sim.history.begin(), sim.history.end(), t,
                             [](double v, const HistoryEntry& h) { return v < h.t; });
  const auto& h = *std::prev(it);
  return profile_of(h.fronts, t);
}

}  // namespace avt
