#include "avt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json.hpp"

namespace avt {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(field, "not finite");
  return v;
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(number(j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

ModelParams params_from(const json& j) {
  ModelParams p = ModelParams::defaults();
  if (j.is_null()) return p;
  if (!j.is_object()) throw ValidationError("params", "expected an object");
  static const char* known[] = {"R", "w_min", "w_max", "v_max", "psi", "c_psi", "C_psi",
                                "lambda_bar", "f_alpha1", "L_F"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }) ==
        std::end(known))
      throw ValidationError("params." + it.key(), "unknown field");
  auto num = [&](const char* k, double& dst) {
    if (j.contains(k)) dst = number(j[k], std::string("params.") + k);
  };
  num("R", p.R);
  num("w_min", p.w_min);
  num("w_max", p.w_max);
  num("v_max", p.v_max);
  num("c_psi", p.c_psi);
  num("C_psi", p.C_psi);
  num("lambda_bar", p.lambda_bar);
  num("L_F", p.L_F);
  if (j.contains("psi")) p.psi = Polynomial(numbers(j["psi"], "params.psi"));
  if (j.contains("f_alpha1")) p.f_alpha1 = Polynomial(numbers(j["f_alpha1"], "params.f_alpha1"));
  return validate_params(p);
}

json params_to(const ModelParams& p) {
  return json{{"R", p.R},
              {"w_min", p.w_min},
              {"w_max", p.w_max},
              {"v_max", p.v_max},
              {"psi", p.psi.coefficients()},
              {"c_psi", p.c_psi},
              {"C_psi", p.C_psi},
              {"lambda_bar", p.lambda_bar},
              {"f_alpha1", p.f_alpha1.coefficients()},
              {"L_F", p.L_F}};
}

}  // namespace

ModelParams parse_params(const std::string& text) {
  json j = parse_json(text);
  // a scenario without params runs on the defaults
  if (j.is_object() && (j.contains("params") || j.contains("initial"))) return params_from(j.value("params", json()));
  return params_from(j);
}

Scenario parse_scenario(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("scenario", "expected a JSON object");
  static const char* known[] = {"params", "initial", "control", "y0", "nu",
                                "window", "horizon", "probes", "seed"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }) ==
        std::end(known))
      throw ValidationError(it.key(), "unknown field");

  Scenario s;
  s.params = params_from(j.value("params", json()));
  const auto& p = s.params;

  if (!j.contains("initial") || !j["initial"].is_array() || j["initial"].empty())
    throw ValidationError("initial", "expected a non-empty array of pieces");
  const json& ini = j["initial"];
  for (std::size_t k = 0; k < ini.size(); ++k) {
    const std::string f = "initial[" + std::to_string(k) + "]";
    const json& e = ini[k];
    if (!e.is_object()) throw ValidationError(f, "expected an object");
    Piece pc;
    if (e.contains("x") && !e["x"].is_null()) {
      if (k == 0) throw ValidationError(f + ".x", "the first piece has no left breakpoint");
      pc.has_x = true;
      pc.x = number(e["x"], f + ".x");
    } else if (k > 0) {
      throw ValidationError(f + ".x", "missing breakpoint");
    }
    if (!e.contains("rho")) throw ValidationError(f + ".rho", "missing");
    if (!e.contains("w")) throw ValidationError(f + ".w", "missing");
    pc.rho = number(e["rho"], f + ".rho");
    pc.w = number(e["w"], f + ".w");
    if (pc.rho < 0.0 || pc.rho > p.R) throw ValidationError(f + ".rho", "outside [0, R]");
    if (pc.w < p.w_min || pc.w > p.w_max) throw ValidationError(f + ".w", "outside [w_min, w_max]");
    if (k > 1 && !(pc.x > s.initial.back().x))
      throw ValidationError(f + ".x", "breakpoints must be strictly increasing");
    s.initial.push_back(pc);
  }

  if (j.contains("control")) {
    const json& c = j["control"];
    if (!c.is_array() || c.empty()) throw ValidationError("control", "expected a non-empty array");
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::string f = "control[" + std::to_string(k) + "]";
      if (!c[k].is_object() || !c[k].contains("t") || !c[k].contains("u"))
        throw ValidationError(f, "expected {\"t\": ..., \"u\": ...}");
      ControlPiece cp{number(c[k]["t"], f + ".t"), number(c[k]["u"], f + ".u")};
      if (k == 0 && cp.t != 0.0) throw ValidationError(f + ".t", "the first control piece starts at 0");
      if (k > 0 && !(cp.t > s.control.back().t))
        throw ValidationError(f + ".t", "control times must be strictly increasing");
      if (cp.u < 0.0 || cp.u > p.v_max) throw ValidationError(f + ".u", "outside [0, V_max]");
      s.control.push_back(cp);
    }
  } else {
    s.control.push_back({0.0, p.v_max});
  }

  if (j.contains("y0")) s.y0 = number(j["y0"], "y0");
  if (j.contains("nu")) s.nu = number(j["nu"], "nu");
  if (!(s.nu >= 1.0)) throw ValidationError("nu", "must be at least 1");
  if (j.contains("window")) {
    auto w = numbers(j["window"], "window");
    if (w.size() != 2 || !(w[0] < w[1])) throw ValidationError("window", "expected [xmin, xmax] with xmin < xmax");
    s.xmin = w[0];
    s.xmax = w[1];
  }
  if (j.contains("horizon")) s.horizon = number(j["horizon"], "horizon");
  if (!(s.horizon > 0.0)) throw ValidationError("horizon", "must be positive");
  if (j.contains("probes")) s.probes = numbers(j["probes"], "probes");
  for (std::size_t k = 0; k < s.probes.size(); ++k)
    if (s.probes[k] < 0.0 || s.probes[k] > s.horizon)
      throw ValidationError("probes[" + std::to_string(k) + "]", "outside [0, horizon]");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ValidationError("seed", "expected a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  return s;
}

std::string to_json(const Scenario& s) {
  json ini = json::array();
  for (const auto& p : s.initial) {
    json e{{"rho", p.rho}, {"w", p.w}};
    if (p.has_x) e["x"] = p.x;
    ini.push_back(e);
  }
  json ctl = json::array();
  for (const auto& c : s.control) ctl.push_back(json{{"t", c.t}, {"u", c.u}});
  json j{{"params", params_to(s.params)},
         {"initial", ini},
         {"control", ctl},
         {"y0", s.y0},
         {"nu", s.nu},
         {"window", {s.xmin, s.xmax}},
         {"horizon", s.horizon},
         {"probes", s.probes},
         {"seed", s.seed}};
  return j.dump(2) + "\n";
}

InitialData Scenario::initial_data() const {
  InitialData d;
  for (const auto& p : initial) {
    if (p.has_x) d.breaks.push_back(p.x);
    d.states.push_back({p.rho, p.w});
  }
  return d;
}

ControlFn Scenario::control_fn() const {
  ControlFn c;
  for (std::size_t k = 0; k < control.size(); ++k) {
    if (k > 0) c.jump_times.push_back(control[k].t);
    c.values.push_back(control[k].u);
  }
  return c;
}

RunSpec Scenario::run_spec() const {
  return RunSpec{Model(params), initial_data(), control_fn(), y0, horizon};
}

Scenario random_scenario(std::uint64_t seed, const RandomScenarioOptions& opt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Model m;
  const auto& p = m.params();
  Scenario s;
  s.seed = seed;
  s.nu = opt.nu;
  s.horizon = opt.horizon;
  s.xmin = -15.0;
  s.xmax = 15.0;
  s.probes = {0.5 * opt.horizon, opt.horizon};

  const int n = 1 + static_cast<int>(U(rng) * opt.max_fronts);
  std::vector<double> xs;
  for (int k = 0; k < std::min(n, opt.max_fronts); ++k) xs.push_back(-8.0 + 16.0 * U(rng));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto random_state = [&](const State* prev) {
    State st;
    const double pick = U(rng);
    if (prev && pick < 0.2) {
      st.w = prev->w;  // same w: a 1-wave or phase transition
    } else {
      st.w = p.w_min + (p.w_max - p.w_min) * U(rng);
    }
    const double rb = m.rho_boundary(st.w);
    if (prev && pick >= 0.2 && pick < 0.35 && m.in_congested(*prev)) {
      // same speed: a contact
      st.rho = m.rho_for_v_tilde(st.w, m.speed(*prev));
    } else if (U(rng) < 0.5) {
      st.rho = rb * U(rng);
    } else {
      st.rho = rb + (p.R - rb) * U(rng);
    }
    return st;
  };

  State prev = random_state(nullptr);
  s.initial.push_back({false, 0.0, prev.rho, prev.w});
  for (double x : xs) {
    State st = random_state(&prev);
    s.initial.push_back({true, x, st.rho, st.w});
    prev = st;
  }

  auto control_value = [&] { return U(rng) < opt.p_full_speed ? p.v_max : p.v_max * U(rng); };
  s.control.push_back({0.0, control_value()});
  const int jumps = static_cast<int>(U(rng) * (opt.max_jumps + 1));
  std::vector<double> ts;
  for (int k = 0; k < std::min(jumps, opt.max_jumps); ++k) ts.push_back(opt.horizon * U(rng));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (double t : ts)
    if (t > 0.0) s.control.push_back({t, control_value()});
  s.y0 = -2.0 + 4.0 * U(rng);
  return s;
}

}  // namespace avt
