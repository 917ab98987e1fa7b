#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avt/tracker.hpp"

namespace avt {

std::vector<std::string> verify_ledger(const Model& m, const std::vector<InteractionRecord>& ledger);

// Exact integral of |rho_a - rho_b| + |rho_a w_a - rho_b w_b| over [xmin, xmax].
double l1_distance(const Profile& a, const Profile& b, double xmin, double xmax);

// Integrals of rho and rho w over [xmin, xmax].
std::pair<double, double> mass(const Profile& p, double xmin, double xmax);

struct ConservationReport {
  double drift_rho = 0.0;  // relative to the initial window mass
  double drift_q = 0.0;
};

// Window mass balance with exact boundary fluxes, from t = 0 to sim.t.
ConservationReport conservation_audit(const SimState& sim, double xmin, double xmax);

// max over recorded states of rho (v - ydot) - F_alpha(w, ydot) at both AV traces.
double constraint_audit(const SimState& sim);

struct TrajectoryReport {
  double tv_ydot = 0.0;
  double sup_Fv = 0.0;
  double tv_u = 0.0;
  double y_gap = 0.0;
  bool bound_holds() const { return tv_ydot <= sup_Fv + tv_u + 1e-10; }
};
TrajectoryReport trajectory_audit(const SimState& sim);

struct RunSpec {
  Model model;
  InitialData data;
  ControlFn control;
  double y0 = 0.0;
  double horizon = 1.0;
};

struct ConvergenceReport {
  std::vector<double> nu_list;
  std::vector<double> probe_times;
  // distance[p][i][j]: L1 distance at probe p between levels i and j
  std::vector<std::vector<std::vector<double>>> distance;
  // exact-solution error per probe and level, filled for two-state data
  std::vector<std::vector<double>> exact_error;
  std::vector<double> fitted_C;  // per probe, from the two coarsest levels
  std::vector<double> fw_drift;  // per level, max |F_w(t) - F_w(0+)|
  std::vector<double> constraint_excess;  // per level
  std::vector<std::size_t> events;        // per level
  bool monotone = true;       // consecutive distances non-increasing at every probe
  bool rate_bound = true;     // exact errors below C / nu (two-state data only)
  bool has_exact = false;
};

// One independent run per nu (in parallel); profiles compared on the window.
ConvergenceReport convergence_study(const RunSpec& spec, const std::vector<double>& nu_list,
                                    const std::vector<double>& probes, double xmin, double xmax,
                                    const Guards& g = {});

// L1 distance on [xmin, xmax] between a profile and the self-similar constrained
// solution of (l, r, u) centred at y0, by Gauss quadrature.
double exact_error(const Model& m, State l, State r, double u, double y0, double t, const Profile& p,
                   double xmin, double xmax);

// Cell averages of (rho, rho w) on a 1/nu grid, mapped back to states.
InitialData approximate_profile(const Model& m, const std::function<State(double)>& f, double xmin,
                                double xmax, double nu);

}  // namespace avt
