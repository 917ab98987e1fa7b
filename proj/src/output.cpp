#include "avt/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace avt {

using nlohmann::json;

namespace {

json state_json(State s) { return json::array({s.rho, s.w}); }

State state_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("state must be [rho, w]");
  return {j[0].get<double>(), j[1].get<double>()};
}

EventKind kind_from(const std::string& s) {
  for (auto k : {EventKind::Init, EventKind::WaveWave, EventKind::WaveAV, EventKind::ControlJump})
    if (s == to_string(k)) return k;
  throw ParseError("unknown event kind '" + s + "'");
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw Error("cannot write " + p.string());
  return f;
}

}  // namespace

std::string record_to_json(const InteractionRecord& r) {
  json j{{"t", r.t},
         {"x", r.x},
         {"kind", to_string(r.kind)},
         {"classification", r.classification},
         {"row", r.row},
         {"dFw", r.dFw},
         {"dFv", r.dFv},
         {"dN", r.dN},
         {"dxi", r.dxi},
         {"xi_minus", r.xi_minus},
         {"xi_plus", r.xi_plus},
         {"u_minus", r.u_minus},
         {"u_plus", r.u_plus},
         {"wave_left", state_json(r.wave_left)},
         {"wave_right", state_json(r.wave_right)},
         {"av_left", state_json(r.av_left)},
         {"av_right", state_json(r.av_right)},
         {"n_first_created", r.n_first_created},
         {"F_v_before", r.F_v_before},
         {"N_before", r.N_before},
         {"notes", r.notes}};
  return j.dump();
}

InteractionRecord record_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  try {
    InteractionRecord r;
    r.t = j.at("t").get<double>();
    r.x = j.at("x").get<double>();
    r.kind = kind_from(j.at("kind").get<std::string>());
    r.classification = j.at("classification").get<std::string>();
    r.row = j.at("row").get<std::string>();
    r.dFw = j.at("dFw").get<double>();
    r.dFv = j.at("dFv").get<double>();
    r.dN = j.at("dN").get<int>();
    r.dxi = j.at("dxi").get<double>();
    r.xi_minus = j.at("xi_minus").get<double>();
    r.xi_plus = j.at("xi_plus").get<double>();
    r.u_minus = j.at("u_minus").get<double>();
    r.u_plus = j.at("u_plus").get<double>();
    r.wave_left = state_from(j.at("wave_left"));
    r.wave_right = state_from(j.at("wave_right"));
    r.av_left = state_from(j.at("av_left"));
    r.av_right = state_from(j.at("av_right"));
    r.n_first_created = j.at("n_first_created").get<int>();
    r.F_v_before = j.at("F_v_before").get<double>();
    r.N_before = j.at("N_before").get<int>();
    r.notes = j.value("notes", "");
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("ledger record: ") + e.what());
  }
}

std::vector<InteractionRecord> read_ledger(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read " + path);
  std::vector<InteractionRecord> out;
  std::string line;
  while (std::getline(f, line))
    if (!line.empty()) out.push_back(record_from_json(line));
  return out;
}

RunReport make_report(const SimState& sim, const Scenario& sc) {
  RunReport r;
  r.events = sim.events;
  r.n_ratio_max = sim.n_ratio_max;
  r.conservation = conservation_audit(sim, sc.xmin, sc.xmax);
  r.constraint_excess = constraint_audit(sim);
  r.trajectory = trajectory_audit(sim);
  r.violations = sim.violations;
  return r;
}

std::string format_report(const RunReport& r) {
  std::ostringstream o;
  o << "events " << r.events << "\n"
    << "max N(t)/N(ref) " << g17(r.n_ratio_max) << "\n"
    << "mass drift rho " << g17(r.conservation.drift_rho) << "\n"
    << "mass drift rho*w " << g17(r.conservation.drift_q) << "\n"
    << "max constraint excess " << g17(r.constraint_excess) << "\n"
    << "TV(ydot) " << g17(r.trajectory.tv_ydot) << "\n"
    << "sup F_v " << g17(r.trajectory.sup_Fv) << "\n"
    << "TV(u) " << g17(r.trajectory.tv_u) << "\n"
    << "trajectory bound " << (r.trajectory.bound_holds() ? "holds" : "FAILS") << "\n"
    << "y continuity gap " << g17(r.trajectory.y_gap) << "\n"
    << "ledger violations " << r.violations.size() << "\n";
  for (const auto& v : r.violations) o << "  " << v << "\n";
  return o.str();
}

void write_outputs(const std::string& dir, const SimState& sim, const Scenario& sc, const RunReport& r) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path d(dir);

  {
    auto f = open(d / "fronts.csv");
    f << "t,x,kind,rho_left,w_left,rho_right,w_right,speed\n";
    for (const auto& h : sim.history)
      for (const auto& fr : h.fronts)
        f << g17(h.t) << "," << g17(fr.position(h.t)) << "," << label(fr.kind) << "," << g17(fr.left.rho)
          << "," << g17(fr.left.w) << "," << g17(fr.right.rho) << "," << g17(fr.right.w) << ","
          << g17(fr.speed) << "\n";
  }
  {
    auto f = open(d / "av.csv");
    f << "t,y,ydot,u\n";
    for (const auto& a : sim.trajectory)
      f << g17(a.t) << "," << g17(a.y) << "," << g17(a.ydot) << "," << g17(a.u) << "\n";
  }
  {
    auto f = open(d / "snapshots.csv");
    f << "t,x,rho,w\n";
    for (double t : sc.probes) {
      if (t > sim.t) continue;
      const Profile p = profile_at(sim, t);
      const State s0 = p.at(sc.xmin);
      f << g17(t) << "," << g17(sc.xmin) << "," << g17(s0.rho) << "," << g17(s0.w) << "\n";
      for (std::size_t k = 0; k < p.breaks.size(); ++k) {
        const double x = p.breaks[k];
        if (x <= sc.xmin || x >= sc.xmax) continue;
        const State s = p.states[k + 1];
        f << g17(t) << "," << g17(x) << "," << g17(s.rho) << "," << g17(s.w) << "\n";
      }
    }
  }
  {
    auto f = open(d / "ledger.jsonl");
    for (const auto& rec : sim.ledger) f << record_to_json(rec) << "\n";
  }
  {
    auto f = open(d / "functionals.csv");
    f << "t,F_w,F_v,F,N\n";
    for (const auto& s : sim.functional_trace)
      f << g17(s.t) << "," << g17(s.f.F_w) << "," << g17(s.f.F_v) << "," << g17(s.f.F) << "," << s.f.N << "\n";
  }
  {
    auto f = open(d / "report.txt");
    f << format_report(r);
  }
}

}  // namespace avt
