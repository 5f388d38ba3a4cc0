#pragma once

#include <cmath>
#include <vector>

#include "skewlab/noise.hpp"

namespace skewlab {

/// Realized systems f_eps(theta^j omega) along a noise path. With eps = 0 or an empty
/// family no symbol is consumed and every time index is valid.
class CocycleContext {
 public:
  CocycleContext(SkewProductSystem base, PerturbationFamily family, NoisePath path, double eps);
  explicit CocycleContext(const SkewProductSystem& base);
  CocycleContext(const NoiseModel& model, double eps)
      : CocycleContext(model.base, model.family, model.path, eps) {}

  const SkewProductSystem& base() const { return base_; }
  const PerturbationFamily& family() const { return family_; }
  const NoisePath& path() const { return path_; }
  double eps() const { return eps_; }
  bool deterministic() const { return deterministic_; }
  int k() const { return base_.k(); }
  /// lambda = (lambda_0 + 1) / 2.
  double lambda() const { return lambda_; }

  /// f_eps(theta^j omega); throws WindowExhausted outside the path window.
  const SkewProductSystem& at(long j) const;
  bool covers(long j_lo, long j_hi) const;

  /// Bound C_tau = sup|tau_0'| + 1 on the realized ceiling derivatives.
  double c_tau() const { return c_tau_; }
  /// sup over realized systems of |tau'|, for reporting.
  double realized_tau_derivative_sup() const;

 private:
  SkewProductSystem base_;
  PerturbationFamily family_;
  NoisePath path_;
  double eps_;
  bool deterministic_;
  double lambda_;
  double c_tau_;
  std::vector<SkewProductSystem> realized_;
};

struct ForwardJet {
  double x;    // E^(n)(omega, x)
  double tau;  // tau^(n)(omega, x)
  double dx;   // dE^(n)/dx
};

struct BackwardJet {
  double x;   // G^(n)(omega, x)
  double dx;  // dG^(n)/dx
};

/// E^(n)(omega) = E(theta^{n-1} omega) o ... o E(omega) with omega at index j.
ForwardJet compose_forward(const CocycleContext& ctx, long j, int n, double x);

/// G^(n)(omega) = G(omega) o ... o G(theta^{n-1} omega): the inverse branch of E^(n).
BackwardJet compose_backward(const CocycleContext& ctx, long j, int n, double x, double tol = 1e-12);

struct TorusPoint {
  double x;
  double s;
};

/// f^(n)(omega)(x, s) on T^2.
TorusPoint skew_apply(const CocycleContext& ctx, long j, int n, TorusPoint p);

inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace skewlab
