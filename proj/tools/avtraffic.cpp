// avtraffic: command-line front end for the wave-front tracking simulator.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "avt/output.hpp"

using namespace avt;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read " + path);
  std::ostringstream o;
  o << f.rdbuf();
  return o.str();
}

std::vector<double> csv_numbers(const std::string& s, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(field, "bad number '" + item + "'");
    }
  }
  return out;
}

State parse_state(const std::string& s, const std::string& field) {
  auto v = csv_numbers(s, field);
  if (v.size() != 2) throw ValidationError(field, "expected rho,w");
  return {v[0], v[1]};
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_fan(const WaveFan& fan) {
  for (const auto& w : fan.waves) {
    std::cout << label(w.kind) << (w.rarefaction ? " rarefaction" : "") << " (" << g17(w.left.rho) << ", "
              << g17(w.left.w) << ") -> (" << g17(w.right.rho) << ", " << g17(w.right.w) << ") speed ";
    if (w.rarefaction)
      std::cout << "[" << g17(w.speed_min) << ", " << g17(w.speed_max) << "]";
    else
      std::cout << g17(w.speed());
    std::cout << "\n";
  }
}

struct Overrides {
  double nu = 0, horizon = 0;
  std::string probes, window;
  std::uint64_t seed = 0;
  bool have_seed = false;

  void apply(Scenario& s) const {
    if (nu > 0) s.nu = nu;
    if (horizon > 0) s.horizon = horizon;
    if (!probes.empty()) s.probes = csv_numbers(probes, "probes");
    if (!window.empty()) {
      auto w = csv_numbers(window, "window");
      if (w.size() != 2 || !(w[0] < w[1])) throw ValidationError("window", "expected xmin,xmax");
      s.xmin = w[0];
      s.xmax = w[1];
    }
    if (s.nu < 1.0) throw ValidationError("nu", "must be at least 1");
    // re-validate through the parser so overrides obey the same rules
    s = parse_scenario(to_json(s));
  }
};

Scenario load(const std::string& config, const Overrides& o) {
  Scenario s;
  if (!config.empty()) {
    s = parse_scenario(slurp(config));
  } else if (o.have_seed) {
    s = random_scenario(o.seed);
  } else {
    throw ValidationError("config", "give a scenario file or --seed");
  }
  o.apply(s);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-front tracking for the two-phase traffic model with a moving bottleneck"};
  app.require_subcommand(1);

  std::string config;
  Overrides ov;
  auto add_common = [&](CLI::App* c, bool single_nu) {
    c->add_option("config", config, "scenario JSON");
    if (single_nu) c->add_option("--nu", ov.nu, "discretization parameter");
    c->add_option("--horizon", ov.horizon, "final time T");
    c->add_option("--probes", ov.probes, "comma-separated probe times");
    c->add_option("--window", ov.window, "xmin,xmax");
    c->add_option("--seed", ov.seed, "random scenario seed (when no config)")->each([&](const std::string&) {
      ov.have_seed = true;
    });
  };

  auto* validate = app.add_subcommand("validate", "check model parameters against the hypotheses");
  validate->add_option("config", config, "scenario or params JSON")->required();

  auto* riemann = app.add_subcommand("riemann", "solve one Riemann problem and print the fan");
  std::string left, right;
  bool constrained = false;
  double u = -1.0;
  riemann->add_option("--config", config, "scenario or params JSON for the model");
  riemann->add_option("--left", left, "rho,w")->required();
  riemann->add_option("--right", right, "rho,w")->required();
  riemann->add_flag("--constrained", constrained, "impose the AV constraint at x = 0");
  riemann->add_option("--u", u, "AV desired speed (default V_max)");
  double rnu = 0;
  riemann->add_option("--nu", rnu, "also print the discretized fronts");

  auto* simulate = app.add_subcommand("simulate", "run a Cauchy problem");
  add_common(simulate, true);
  std::string out_dir = "out";
  simulate->add_option("--out-dir", out_dir, "output directory");

  auto* converge = app.add_subcommand("converge", "nu refinement study");
  add_common(converge, false);
  std::string nu_list = "10,20,40,80";
  converge->add_option("--nu", nu_list, "comma-separated nu levels");

  auto* audit = app.add_subcommand("audit", "re-check a ledger against the interaction tables");
  std::string ledger;
  audit->add_option("ledger", ledger, "ledger.jsonl")->required();
  audit->add_option("--config", config, "scenario or params JSON for the model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) {
      const ModelParams p = parse_params(slurp(config));
      Model m(p);
      std::cout << "ok: parameters satisfy the hypotheses\n";
      return 0;
    }
    if (riemann->parsed()) {
      const Model m(config.empty() ? ModelParams::defaults() : parse_params(slurp(config)));
      const State l = parse_state(left, "left"), r = parse_state(right, "right");
      if (!constrained) {
        const WaveFan fan = solve_riemann(m, l, r);
        print_fan(fan);
        if (rnu > 0)
          for (const auto& f : discretize_rarefactions(m, fan, rnu))
            std::cout << "front " << label(f.kind) << " speed " << g17(f.speed) << "\n";
        return 0;
      }
      const double uu = u < 0 ? m.params().v_max : u;
      const auto sol = solve_constrained(m, l, r, uu);
      std::cout << (sol.constraint_active ? "constraint active" : "constraint inactive") << ", AV "
                << label(sol.av_wave_kind) << " at speed " << g17(sol.av_speed) << "\n";
      print_fan(sol.fan);
      return 0;
    }
    if (simulate->parsed()) {
      const Scenario sc = load(config, ov);
      const RunSpec rs = sc.run_spec();
      SimState sim = init(rs.model, rs.data, rs.control, rs.y0, sc.nu);
      int code = 0;
      try {
        run_until(sim, sc.horizon);
      } catch (const GuardTripped& e) {
        std::cerr << "guard tripped: " << e.what() << "\n";
        code = 2;
      } catch (const TableViolation& e) {
        std::cerr << "table violation: " << e.what() << "\n";
        code = 2;
      } catch (const UnclassifiableInteraction& e) {
        std::cerr << "unclassified interaction: " << e.what() << "\n";
        code = 2;
      }
      const RunReport rep = make_report(sim, sc);
      write_outputs(out_dir, sim, sc, rep);
      std::cout << format_report(rep);
      if (!rep.violations.empty()) code = 2;
      return code;
    }
    if (converge->parsed()) {
      const Scenario sc = load(config, ov);
      const auto levels = csv_numbers(nu_list, "nu");
      auto probes = sc.probes;
      if (probes.empty()) probes = {sc.horizon};
      const auto rep = convergence_study(sc.run_spec(), levels, probes, sc.xmin, sc.xmax);
      for (std::size_t p = 0; p < probes.size(); ++p) {
        std::cout << "t=" << g17(probes[p]) << "\n";
        for (std::size_t i = 0; i + 1 < levels.size(); ++i)
          std::cout << "  d(nu=" << levels[i] << ", nu=" << levels[i + 1] << ") = " << g17(rep.distance[p][i][i + 1])
                    << "\n";
        if (rep.has_exact)
          for (std::size_t i = 0; i < levels.size(); ++i)
            std::cout << "  exact error nu=" << levels[i] << ": " << g17(rep.exact_error[p][i]) << "\n";
      }
      std::cout << "monotone " << (rep.monotone ? "yes" : "no") << "\n";
      if (rep.has_exact) std::cout << "C/nu bound " << (rep.rate_bound ? "holds" : "fails") << "\n";
      return 0;
    }
    if (audit->parsed()) {
      const Model m(config.empty() ? ModelParams::defaults() : parse_params(slurp(config)));
      const auto recs = read_ledger(ledger);
      const auto rows = table_rows();
      std::vector<std::string> bad = verify_ledger(m, recs);
      for (const auto& r : recs)
        if (r.kind != EventKind::Init && !r.row.empty() && std::find(rows.begin(), rows.end(), r.row) == rows.end())
          bad.push_back("unknown row " + r.row);
      std::cout << recs.size() << " records, " << bad.size() << " violations\n";
      for (const auto& b : bad) std::cout << "  " << b << "\n";
      return bad.empty() ? 0 : 2;
    }
  } catch (const GuardTripped& e) {
    std::cerr << "guard tripped: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid " << e.field() << ": " << e.what() << "\n";
    return 1;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis " << e.clause() << " violated: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
