#include "avt/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace avt {

Polynomial::Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

int Polynomial::degree() const {
  if (c_.empty()) return 0;
  return static_cast<int>(c_.size()) - 1;
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Free: return "free";
    case Phase::Congested: return "congested";
    case Phase::Boundary: return "boundary";
  }
  return "?";
}

namespace {

constexpr int kGrid = 10000;
constexpr double kHypTol = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Root of a decreasing function on [a,b]; assumes f(a) >= 0 >= f(b).
template <class F>
double bisect_decreasing(F f, double a, double b, double tol = 1e-15) {
  for (int i = 0; i < 200 && b - a > tol; ++i) {
    double m = 0.5 * (a + b);
    if (f(m) > 0.0) a = m;
    else b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

ModelParams validate_params(const ModelParams& p) {
  // H-1
  if (!(p.R > 0.0) || !(p.v_max > 0.0) || !(p.v_max < p.w_min) || !(p.w_min < p.w_max))
    throw HypothesisViolation("H-1", "need R > 0 and 0 < V_max < w_min < w_max");

  // H-2
  if (p.psi.coefficients().empty()) throw HypothesisViolation("H-2", "psi has no coefficients");
  if (std::abs(p.psi(0.0) - 1.0) > kHypTol)
    throw HypothesisViolation("H-2", "psi(0) = " + fmt(p.psi(0.0)) + ", expected 1");
  if (std::abs(p.psi(p.R)) > kHypTol)
    throw HypothesisViolation("H-2", "psi(R) = " + fmt(p.psi(p.R)) + ", expected 0");
  if (!(p.c_psi > 0.0) || p.c_psi > p.C_psi)
    throw HypothesisViolation("H-2", "need 0 < c_psi <= C_psi");
  {
    const Polynomial d1 = p.psi.derivative();
    const Polynomial d2 = d1.derivative();
    for (int i = 0; i <= kGrid; ++i) {
      double r = p.R * i / kGrid;
      double slope = -d1(r);
      if (slope < p.c_psi - kHypTol || slope > p.C_psi + kHypTol)
        throw HypothesisViolation("H-2", "-psi'(" + fmt(r) + ") = " + fmt(slope) +
                                             " outside [c_psi, C_psi]");
      // (rho psi)'' = 2 psi' + rho psi''
      if (2.0 * d1(r) + r * d2(r) > kHypTol)
        throw HypothesisViolation("H-2", "rho psi is not concave at rho = " + fmt(r));
      double v = p.psi(r);
      if (v < -kHypTol || v > 1.0 + kHypTol)
        throw HypothesisViolation("H-2", "psi leaves [0,1] at rho = " + fmt(r));
    }
  }

  // H-3. lambda1 is decreasing in rho on each w-curve, so the worst point of C
  // on that curve is where it meets the phase boundary.
  if (!(p.lambda_bar > 0.0)) throw HypothesisViolation("H-3", "lambda_bar must be positive");
  {
    const Polynomial d1 = p.psi.derivative();
    auto lam = [&](double r, double w) { return w * (p.psi(r) + r * d1(r)); };
    const int nw = 100, nr = 100;
    for (int i = 0; i <= nw; ++i) {
      double w = p.w_min + (p.w_max - p.w_min) * i / nw;
      double target = p.v_max / w;
      double rb = bisect_decreasing([&](double r) { return p.psi(r) - target; }, 0.0, p.R);
      for (int j = 0; j <= nr; ++j) {
        double r = rb + (p.R - rb) * j / nr;
        if (lam(r, w) > -p.lambda_bar + kHypTol)
          throw HypothesisViolation("H-3", "lambda1(" + fmt(r) + ", " + fmt(w) + ") = " +
                                               fmt(lam(r, w)) + " > -lambda_bar");
      }
    }
  }

  // H-4
  if (p.f_alpha1.coefficients().empty())
    throw HypothesisViolation("H-4a", "F_alpha1 has no coefficients");
  if (!(p.L_F > 0.0)) throw HypothesisViolation("H-4b", "L_F must be positive");
  {
    const Polynomial d = p.f_alpha1.derivative();
    for (int i = 0; i <= kGrid; ++i) {
      double w = p.w_min + (p.w_max - p.w_min) * i / kGrid;
      double f = p.f_alpha1(w);
      if (f < 0.0 || f > p.R)
        throw HypothesisViolation("H-4a", "F_alpha1(" + fmt(w) + ") = " + fmt(f) +
                                              " outside [0, R]");
      if (std::abs(d(w)) > p.L_F + kHypTol)
        throw HypothesisViolation("H-4b", "|F_alpha1'(" + fmt(w) + ")| exceeds L_F");
      if (d(w) < -kHypTol) throw HypothesisViolation("H-4d", "F_alpha1 decreasing at " + fmt(w));
    }
  }
  if (!(p.psi(p.f_alpha1(p.w_max)) > p.v_max / p.w_min))
    throw HypothesisViolation("H-4c", "psi(F_alpha1(w_max)) <= V_max / w_min");
  return p;
}

Model::Model(const ModelParams& params) : p_(validate_params(params)), dpsi_(p_.psi.derivative()) {}

double Model::speed(State s) const { return std::min(p_.v_max, v_tilde(s)); }

Phase Model::phase(State s) const {
  double vt = v_tilde(s);
  if (std::abs(vt - p_.v_max) <= kPhaseTolerance * p_.v_max) return Phase::Boundary;
  return vt > p_.v_max ? Phase::Free : Phase::Congested;
}

bool Model::in_free(State s) const { return phase(s) != Phase::Congested; }
bool Model::in_congested(State s) const { return phase(s) != Phase::Free; }

double Model::lambda1(State s) const {
  if (!in_congested(s)) throw NotCongested("lambda1 requested at a free state");
  return lambda1_raw(s);
}

double Model::f_alpha(double w, double sigma) const {
  const double tw = 1e-12 * p_.w_max, ts = 1e-12 * p_.v_max;
  if (w < p_.w_min - tw || w > p_.w_max + tw) throw DomainError("f_alpha: w = " + fmt(w));
  if (sigma < -ts || sigma > p_.v_max + ts) throw DomainError("f_alpha: sigma = " + fmt(sigma));
  return p_.f_alpha1(w) * (p_.v_max - sigma);
}

double Model::check_rho(double w, double sigma) const {
  // F_alpha / (V - sigma) simplifies; sigma = V_max is covered by the same value.
  (void)f_alpha(w, sigma);
  return p_.f_alpha1(w);
}

double Model::rho_for_v_tilde(double w, double vt) const {
  double target = vt / w;
  double r;
  if (is_linear_psi()) {
    const auto& c = p_.psi.coefficients();
    r = (target - c[0]) / c[1];
  } else {
    r = bisect_decreasing([&](double x) { return psi(x) - target; }, 0.0, p_.R);
  }
  return std::clamp(r, 0.0, p_.R);
}

double Model::rho_for_lambda(double w, double lambda) const {
  double target = lambda / w;
  double r;
  if (is_linear_psi()) {
    const auto& c = p_.psi.coefficients();
    r = (target - c[0]) / (2.0 * c[1]);
  } else {
    r = bisect_decreasing([&](double x) { return drho_psi(x) - target; }, 0.0, p_.R);
  }
  return std::clamp(r, 0.0, p_.R);
}

double Model::hat_rho(double w, double sigma) const {
  const double F = f_alpha(w, sigma);
  auto G = [&](double r) { return w * r * psi(r) - sigma * r - F; };
  auto dG = [&](double r) { return w * drho_psi(r) - sigma; };

  if (is_linear_psi()) {
    // G = w b r^2 + (w a - sigma) r - F with b < 0
    const auto& c = p_.psi.coefficients();
    double A = -w * c[1];  // > 0
    double B = w * c[0] - sigma;
    double D = B * B - 4.0 * A * F;
    if (D < -1e-14 * std::max(1.0, B * B))
      throw NoCongestedRoot("constraint level " + fmt(F) + " not attainable at w = " + fmt(w));
    double r = (B + std::sqrt(std::max(D, 0.0))) / (2.0 * A);
    double d = dG(r);
    if (d != 0.0) {
      double polished = r - G(r) / d;
      if (std::abs(G(polished)) <= std::abs(G(r))) r = polished;
    }
    return std::clamp(r, 0.0, p_.R);
  }

  double peak = p_.R;
  if (dG(p_.R) < 0.0) {
    peak = dG(0.0) <= 0.0 ? 0.0 : bisect_decreasing(dG, 0.0, p_.R, 1e-14);
  }
  if (G(peak) < -1e-14)
    throw NoCongestedRoot("constraint level " + fmt(F) + " not attainable at w = " + fmt(w));
  return bisect_decreasing(G, peak, p_.R, 1e-13);
}

}  // namespace avt
