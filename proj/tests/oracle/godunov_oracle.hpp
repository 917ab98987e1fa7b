#pragma once

// Local Lax-Friedrichs finite volumes for the two-phase system in conserved
// variables (rho, q = rho w). Written against the model equations only; it
// shares no code with the wave-front tracker beyond the parameter bundle.

#include <algorithm>
#include <cmath>
#include <vector>

#include "avt/model.hpp"

namespace oracle {

struct Grid {
  double xmin, xmax;
  std::vector<double> rho, q;
  double h() const { return (xmax - xmin) / static_cast<double>(rho.size()); }
  double center(std::size_t i) const { return xmin + (static_cast<double>(i) + 0.5) * h(); }
};

struct Params {
  double R, V, wmin, wmax;
  std::vector<double> psi;  // ascending coefficients
};

inline Params from(const avt::ModelParams& p) {
  return {p.R, p.v_max, p.w_min, p.w_max, p.psi.coefficients()};
}

inline double psi(const Params& p, double r) {
  double s = 0.0;
  for (std::size_t k = p.psi.size(); k-- > 0;) s = s * r + p.psi[k];
  return s;
}

inline double velocity(const Params& p, double rho, double q) {
  double w = rho > 1e-14 ? q / rho : p.wmax;
  w = std::clamp(w, p.wmin, p.wmax);
  return std::min(p.V, w * psi(p, std::clamp(rho, 0.0, p.R)));
}

// Riemann problem (l | r) at x = 0 on [xmin, xmax], advanced to time T with
// transmissive boundaries. `a` bounds every characteristic speed.
inline Grid solve(const Params& p, double rl, double wl, double rr, double wr, double xmin,
                  double xmax, std::size_t M, double T, double a, double cfl = 0.9) {
  Grid g{xmin, xmax, std::vector<double>(M), std::vector<double>(M)};
  for (std::size_t i = 0; i < M; ++i) {
    const bool left = g.center(i) < 0.0;
    g.rho[i] = left ? rl : rr;
    g.q[i] = left ? rl * wl : rr * wr;
  }
  const double h = g.h();
  std::vector<double> fr(M + 1), fq(M + 1), v(M);
  double t = 0.0;
  while (t < T) {
    const double dt = std::min(cfl * h / a, T - t);
    for (std::size_t i = 0; i < M; ++i) v[i] = velocity(p, g.rho[i], g.q[i]);
    for (std::size_t k = 0; k <= M; ++k) {
      const std::size_t il = k == 0 ? 0 : k - 1, ir = k == M ? M - 1 : k;
      fr[k] = 0.5 * (g.rho[il] * v[il] + g.rho[ir] * v[ir]) - 0.5 * a * (g.rho[ir] - g.rho[il]);
      fq[k] = 0.5 * (g.q[il] * v[il] + g.q[ir] * v[ir]) - 0.5 * a * (g.q[ir] - g.q[il]);
    }
    const double c = dt / h;
    for (std::size_t i = 0; i < M; ++i) {
      g.rho[i] -= c * (fr[i + 1] - fr[i]);
      g.q[i] -= c * (fq[i + 1] - fq[i]);
    }
    t += dt;
  }
  return g;
}

// L1 distance in (rho, q) between two grids on the same interval; the finer
// grid's size must be a multiple of the coarser one's.
inline double distance(const Grid& a, const Grid& b) {
  const Grid& c = a.rho.size() <= b.rho.size() ? a : b;
  const Grid& f = a.rho.size() <= b.rho.size() ? b : a;
  const std::size_t k = f.rho.size() / c.rho.size();
  double s = 0.0;
  for (std::size_t i = 0; i < f.rho.size(); ++i)
    s += std::abs(f.rho[i] - c.rho[i / k]) + std::abs(f.q[i] - c.q[i / k]);
  return s * f.h();
}

// L1 distance to a pointwise solution, `sub` midpoint samples per cell.
template <class F>
double distance_to(const Grid& g, F&& exact, int sub = 8) {
  const double h = g.h();
  double s = 0.0;
  for (std::size_t i = 0; i < g.rho.size(); ++i) {
    double er = 0.0, eq = 0.0;
    for (int j = 0; j < sub; ++j) {
      const double x = g.xmin + (static_cast<double>(i) + (j + 0.5) / sub) * h;
      const auto st = exact(x);
      er += st.rho;
      eq += st.rho * st.w;
    }
    s += std::abs(er / sub - g.rho[i]) + std::abs(eq / sub - g.q[i]);
  }
  return s * h;
}

}  // namespace oracle
