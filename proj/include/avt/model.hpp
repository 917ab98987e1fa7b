#pragma once

#include <string>
#include <vector>

#include "avt/errors.hpp"

namespace avt {

/// Real polynomial with coefficients in ascending order, c0 + c1 x + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  double operator()(double x) const;
  Polynomial derivative() const;
  int degree() const;
  const std::vector<double>& coefficients() const { return c_; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> c_;
};

/// Raw parameter bundle of the two-phase model with an AV flux constraint.
///
/// `psi` is the decreasing speed-reduction profile on [0, R]; `f_alpha1` the
/// capacity factor with F_alpha(w, sigma) = f_alpha1(w) * (v_max - sigma).
struct ModelParams {
  double R = 1.0;
  double w_min = 2.5;
  double w_max = 3.0;
  double v_max = 1.0;
  Polynomial psi{{1.0, -1.0}};
  double c_psi = 1.0;
  double C_psi = 1.0;
  double lambda_bar = 0.5;
  Polynomial f_alpha1{{-0.3, 0.2}};
  double L_F = 0.2;

  /// Smallest closed-form instance: R=1, V=1, w in [2.5,3], psi=1-rho,
  /// F_alpha1(w)=0.2+0.2(w-2.5).
  static ModelParams defaults() { return {}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Checks every structural hypothesis and returns the bundle unchanged.
/// Throws HypothesisViolation naming the first failing clause.
ModelParams validate_params(const ModelParams& params);

struct State {
  double rho = 0.0;
  double w = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

enum class Phase { Free, Congested, Boundary };

const char* to_string(Phase p);

/// Relative tolerance for classifying states on the free/congested boundary.
inline constexpr double kPhaseTolerance = 1e-9;

/// Validated model. Immutable; cheap to copy.
class Model {
 public:
  explicit Model(const ModelParams& params);
  Model() : Model(ModelParams::defaults()) {}

  const ModelParams& params() const { return p_; }
  double v_max() const { return p_.v_max; }

  double psi(double rho) const { return p_.psi(rho); }
  double dpsi(double rho) const { return dpsi_(rho); }

  /// Riemann coordinate w * psi(rho); exceeds v_max in the free phase.
  double v_tilde(State s) const { return s.w * psi(s.rho); }
  /// Average speed min{v_max, w psi(rho)}.
  double speed(State s) const;
  /// Density flux rho * v.
  double flux(State s) const { return s.rho * speed(s); }

  Phase phase(State s) const;
  bool in_free(State s) const;       // F, boundary included
  bool in_congested(State s) const;  // C, boundary included

  /// First characteristic speed w (rho psi)'. Throws NotCongested outside C.
  double lambda1(State s) const;
  /// Same expression without the phase check.
  double lambda1_raw(State s) const { return s.w * drho_psi(s.rho); }

  double f_alpha(double w, double sigma) const;
  double f_alpha1(double w) const { return p_.f_alpha1(w); }
  /// Free-side density of the saturated constraint. Independent of sigma.
  double check_rho(double w, double sigma) const;
  /// Largest root of w rho psi(rho) = F_alpha(w,sigma) + sigma rho.
  double hat_rho(double w, double sigma) const;

  /// Unique density with psi(rho_c) = v_max / w_min.
  double rho_c() const { return rho_for_v_tilde(p_.w_min, p_.v_max); }
  /// Density on the w-curve where the state meets the phase boundary.
  double rho_boundary(double w) const { return rho_for_v_tilde(w, p_.v_max); }
  /// Inverse of rho -> w psi(rho) at fixed w, clamped to [0, R].
  double rho_for_v_tilde(double w, double v_tilde) const;
  /// Inverse of rho -> w (rho psi)'(rho), clamped to [0, R].
  double rho_for_lambda(double w, double lambda) const;

  /// (rho psi)'(rho)
  double drho_psi(double rho) const { return psi(rho) + rho * dpsi(rho); }

  bool is_linear_psi() const { return p_.psi.degree() <= 1; }

 private:
  ModelParams p_;
  Polynomial dpsi_;
};

}  // namespace avt
