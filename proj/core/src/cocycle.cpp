#include "skewlab/cocycle.hpp"

#include "skewlab/error.hpp"

namespace skewlab {

CocycleContext::CocycleContext(SkewProductSystem base, PerturbationFamily family, NoisePath path,
                               double eps)
    : base_(std::move(base)),
      family_(std::move(family)),
      path_(std::move(path)),
      eps_(eps),
      deterministic_(eps == 0.0 || family_.empty()),
      lambda_(expansion_target(base_)),
      c_tau_(base_.tau().derivative_sup() + 1.0) {
  if (eps < 0.0) throw InvalidArgument("eps must be >= 0");
  if (deterministic_) return;
  if (family_.dimension() != path_.dimension())
    throw InvalidArgument("noise path dimension does not match the perturbation family");
  realized_.reserve(static_cast<std::size_t>(path_.hi() - path_.lo() + 1));
  for (long j = path_.lo(); j <= path_.hi(); ++j)
    realized_.push_back(realize_system(base_, family_, path_, j, eps_));
}

CocycleContext::CocycleContext(const SkewProductSystem& base)
    : CocycleContext(base, PerturbationFamily{}, NoisePath{}, 0.0) {}

const SkewProductSystem& CocycleContext::at(long j) const {
  if (deterministic_) return base_;
  if (!path_.contains(j)) throw WindowExhausted(j);
  return realized_[static_cast<std::size_t>(j - path_.lo())];
}

bool CocycleContext::covers(long j_lo, long j_hi) const {
  return deterministic_ || (path_.contains(j_lo) && path_.contains(j_hi));
}

double CocycleContext::realized_tau_derivative_sup() const {
  if (deterministic_) return c_tau_ - 1.0;
  double s = 0.0;
  for (const auto& sys : realized_) s = std::max(s, sys.tau().derivative_sup());
  return s;
}

ForwardJet compose_forward(const CocycleContext& ctx, long j, int n, double x) {
  if (n < 0) throw InvalidArgument("n must be >= 0");
  ForwardJet out{x, 0.0, 1.0};
  for (int i = 0; i < n; ++i) {
    const auto& sys = ctx.at(j + i);
    out.tau += sys.tau()(out.x);
    const auto e = sys.eval_expanding(out.x);
    out.dx *= e.derivative;
    out.x = e.value;
  }
  return out;
}

BackwardJet compose_backward(const CocycleContext& ctx, long j, int n, double x, double tol) {
  if (n < 0) throw InvalidArgument("n must be >= 0");
  BackwardJet out{x, 1.0};
  for (int i = n - 1; i >= 0; --i) {
    const auto& sys = ctx.at(j + i);
    out.x = sys.invert_expanding(out.x, tol);
    out.dx /= sys.eval_expanding(out.x).derivative;
  }
  return out;
}

TorusPoint skew_apply(const CocycleContext& ctx, long j, int n, TorusPoint p) {
  if (n == 0) return p;
  const auto f = compose_forward(ctx, j, n, p.x);
  return {wrap_unit(f.x), wrap_unit(p.s + f.tau / kTwoPi)};
}

}  // namespace skewlab
