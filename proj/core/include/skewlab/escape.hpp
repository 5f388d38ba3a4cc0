#pragma once

#include "skewlab/cocycle.hpp"

namespace skewlab {

/// Trap zone Z = S^1 x [-R_kappa, R_kappa] with R_kappa = C_tau / (lambda - kappa).
struct TrapZone {
  double kappa = 0.0;
  double radius = 0.0;  // R_kappa
  double c_tau = 0.0;   // sup|tau_0'| + 1
  double lambda = 0.0;

  /// kappa = (lambda + 1)/2 unless given; radius = scale * C_tau/(lambda - kappa).
  static TrapZone from_context(const CocycleContext& ctx, double kappa = 0.0, double scale = 1.0);

  /// C_1 = C_tau / (lambda - 1): sup bound on the stable graph S.
  double c1() const { return c_tau / (lambda - 1.0); }
  bool contains(double eta) const { return std::abs(eta) <= radius; }
};

/// Escape function a_m: 1 on |eta| <= R, (1+eta^2)^{m/2} on |eta| >= R + delta0,
/// quintic smoothstep in log-amplitude between.
struct EscapeSpec {
  double m = 0.0;
  double R = 0.0;
  double delta0 = 0.0;

  /// delta0 = (kappa - 1) R / 2, the midpoint of the admissible range.
  static EscapeSpec for_zone(const TrapZone& zone, double m);

  /// C_kappa = sqrt((1 + R^2) / (1 + kappa^2 R^2)).
  static double c_kappa(double R, double kappa);
};

double escape_value(const EscapeSpec& spec, double eta);

/// a_m(eta) / a_m(xi) for a point and its branch image.
inline double escape_ratio(const EscapeSpec& spec, double eta, double xi) {
  return escape_value(spec, eta) / escape_value(spec, xi);
}

}  // namespace skewlab
