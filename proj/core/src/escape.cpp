#include "skewlab/escape.hpp"

#include <cmath>

#include "skewlab/error.hpp"

namespace skewlab {

TrapZone TrapZone::from_context(const CocycleContext& ctx, double kappa, double scale) {
  TrapZone z;
  z.lambda = ctx.lambda();
  z.kappa = kappa > 0.0 ? kappa : 0.5 * (z.lambda + 1.0);
  if (!(z.kappa > 1.0 && z.kappa < z.lambda))
    throw InvalidArgument("kappa must lie in (1, lambda)");
  z.c_tau = ctx.c_tau();
  z.radius = scale * z.c_tau / (z.lambda - z.kappa);
  return z;
}

EscapeSpec EscapeSpec::for_zone(const TrapZone& zone, double m) {
  return {m, zone.radius, 0.5 * (zone.kappa - 1.0) * zone.radius};
}

double EscapeSpec::c_kappa(double R, double kappa) {
  return std::sqrt((1.0 + R * R) / (1.0 + kappa * kappa * R * R));
}

double escape_value(const EscapeSpec& spec, double eta) {
  const double e = std::abs(eta);
  if (e <= spec.R) return 1.0;
  if (e >= spec.R + spec.delta0) return std::pow(1.0 + e * e, 0.5 * spec.m);
  const double full = 0.5 * spec.m * std::log1p(e * e);
  const double t = (e - spec.R) / spec.delta0;
  const double s = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  return std::exp(s * full);
}

}  // namespace skewlab
