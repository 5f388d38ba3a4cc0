#include "skewlab/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "skewlab/error.hpp"
#include "skewlab/numeric.hpp"
#include "skewlab/parallel.hpp"

namespace skewlab {

StableGraphSolution::StableGraphSolution(const CocycleContext& ctx, double tol) : ctx_(&ctx), tol_(tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
  const double lam = ctx.lambda();
  const double c = ctx.c_tau() / (lam - 1.0);
  depth_ = std::max(1, static_cast<int>(std::ceil(std::log(c / tol) / std::log(lam))));
  tail_ = c * std::pow(lam, -depth_);
}

StableGraphSolution::Joint StableGraphSolution::with_derivative(long j0, int n, double x) const {
  const long j = j0 + n;
  double acc = 0.0;
  double d = 1.0;
  double dG = n == 0 ? 1.0 : 0.0;
  const int steps = std::max(depth_, n);
  for (int i = 1; i <= steps; ++i) {
    const auto& sys = ctx_->at(j - i);
    x = sys.invert_expanding(x);
    d /= sys.eval_expanding(x).derivative;
    if (i <= depth_) acc -= sys.tau().derivative(x) * d;
    if (i == n) dG = d;
  }
  return {acc, dG};
}

double StableGraphSolution::operator()(long j, double x) const {
  const std::uint64_t key = std::bit_cast<std::uint64_t>(x);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = memo_.find(j);
    if (it != memo_.end()) {
      const auto jt = it->second.find(key);
      if (jt != it->second.end()) return jt->second;
    }
  }
  const double v = with_derivative(j, 0, x).s;
  std::lock_guard<std::mutex> lock(mutex_);
  memo_[j].emplace(key, v);
  return v;
}

double solve_S(const CocycleContext& ctx, long j, double x, double tol) {
  return StableGraphSolution(ctx, tol).with_derivative(j, 0, x).s;
}

LiftedOrbit lifted_orbit(const CocycleContext& ctx, long j0, int n, double y, double eta) {
  LiftedOrbit o;
  o.x.push_back(y);
  o.xi.push_back(eta);
  std::vector<double> de(static_cast<std::size_t>(n) + 1, 1.0), dt(static_cast<std::size_t>(n) + 1, 0.0);
  for (int s = 1; s <= n; ++s) {
    const auto& sys = ctx.at(j0 + n - s);
    const double x = sys.invert_expanding(o.x.back());
    de[s] = sys.eval_expanding(x).derivative;
    dt[s] = sys.tau().derivative(x);
    o.x.push_back(x);
    o.xi.push_back(de[s] * o.xi.back() + dt[s]);
  }
  double prod = 1.0;
  for (int s = 1; s <= n; ++s) prod *= de[s];
  double acc = prod * eta;
  for (int s = 1; s <= n; ++s) {
    double tail = 1.0;
    for (int r = s + 1; r <= n; ++r) tail *= de[r];
    acc += dt[s] * tail;
  }
  o.xi_closed_form = acc;
  return o;
}

long count_tilde_at(const CocycleContext& ctx, const StableGraphSolution& S, long j0, int n, double R, double y) {
  if (n > kBranchCap) throw BranchBudgetExceeded(n, kBranchCap);
  long branches = 1;
  for (int i = 0; i < n; ++i) branches *= ctx.k();
  std::vector<std::pair<double, double>> iv;
  iv.reserve(static_cast<std::size_t>(branches));
  for (long a = 0; a < branches; ++a) {
    const auto j = S.with_derivative(j0, n, y + static_cast<double>(a));
    iv.emplace_back(j.s - R * j.dG, j.s + R * j.dG);
  }
  return max_overlap_depth(std::move(iv));
}

long count_tilde(const CocycleContext& ctx, const StableGraphSolution& S, long j0, int n, double R, int y_points) {
  std::vector<long> per_y(static_cast<std::size_t>(y_points));
  parallel_for(y_points, 0, [&](long i) {
    per_y[i] = count_tilde_at(ctx, S, j0, n, R, static_cast<double>(i) / y_points);
  });
  return *std::max_element(per_y.begin(), per_y.end());
}

SandwichResult sandwich_check(const CocycleContext& ctx, const StableGraphSolution& S, long j0, int n,
                              const TrapZone& zone, int y_points) {
  SandwichResult r;
  const double c1 = zone.c1();
  r.lower = count_tilde(ctx, S, j0, n, zone.radius - c1, y_points);
  r.count = count_trapped(ctx, j0, n, zone, TrapGrid{y_points, 0, true});
  r.upper = count_tilde(ctx, S, j0, n, zone.radius + c1, y_points);
  r.holds = r.lower <= r.count && r.count <= r.upper;
  return r;
}

NoiseBracket noise_bracket(const NoiseModel& model, int n, double R, double rho, std::vector<double> eps_grid,
                           int samples, int y_points) {
  if (!(rho < R)) throw InvalidArgument("noise_bracket needs rho < R");
  std::sort(eps_grid.begin(), eps_grid.end());
  NoiseBracket out;
  out.n = n;
  out.samples = samples;
  const CocycleContext ctx0(model.base);
  const StableGraphSolution S0(ctx0);
  const long lower = count_tilde(ctx0, S0, 0, n, R - rho, y_points);
  const long upper = count_tilde(ctx0, S0, 0, n, R + rho, y_points);
  bool contiguous = true;
  for (double eps : eps_grid) {
    BracketRow row{eps, true, lower, upper, {}};
    const CocycleContext ctx(model, eps);
    const StableGraphSolution S(ctx);
    for (int s = 0; s < samples; ++s) {
      const long c = count_tilde(ctx, S, static_cast<long>(s) * n, n, R, y_points);
      row.sampled.push_back(c);
      row.holds = row.holds && lower <= c && c <= upper;
    }
    contiguous = contiguous && row.holds;
    if (contiguous) out.eps_n = eps;
    out.rows.push_back(std::move(row));
  }
  return out;
}

ConeSpec ConeSpec::for_radius(const SkewProductSystem& sys, double R) {
  return {R / (sys.lambda_floor() - 1.0)};
}

double ConeSpec::minimal(const SkewProductSystem& sys) {
  return sys.tau().derivative_sup() / (kTwoPi * (sys.lambda_floor() - 1.0));
}

TransversalityResult transversality_phi(const SkewProductSystem& sys, double R, int n, int z_points) {
  if (!sys.is_linear()) throw NotLinear();
  if (n > kBranchCap) throw BranchBudgetExceeded(n, kBranchCap);
  const ConeSpec cone = ConeSpec::for_radius(sys, R);
  if (cone.theta < ConeSpec::minimal(sys)) throw InvalidArgument("cone half-slope below theta_tau");
  const CocycleContext ctx(sys);
  const int k = sys.k();
  long branches = 1;
  for (int i = 0; i < n; ++i) branches *= k;
  const double kn = static_cast<double>(branches);
  TransversalityResult res;
  res.n = n;
  std::vector<long> best(static_cast<std::size_t>(z_points), 0);
  std::vector<char> invariant(static_cast<std::size_t>(z_points), 1);
  parallel_for(z_points, 0, [&](long iz) {
    const double x = static_cast<double>(iz) / z_points;
    std::vector<double> s(static_cast<std::size_t>(branches));
    for (long a = 0; a < branches; ++a) {
      double zeta = compose_backward(ctx, 0, n, x + static_cast<double>(a)).x;
      double acc = 0.0;
      double dk = 1.0;
      for (int j = 0; j < n; ++j) {
        acc += sys.tau().derivative(zeta) * dk;
        const auto e = sys.eval_expanding(zeta);
        zeta = e.value;
        dk *= e.derivative;
      }
      s[a] = acc / kTwoPi;
      if (std::abs(s[a]) + cone.theta > kn * cone.theta * (1.0 + 1e-12)) invariant[iz] = 0;
    }
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    long local = 0;
    for (double v : s) {
      const auto lo = std::lower_bound(sorted.begin(), sorted.end(), v - 2.0 * cone.theta);
      const auto hi = std::upper_bound(sorted.begin(), sorted.end(), v + 2.0 * cone.theta);
      local = std::max(local, static_cast<long>(hi - lo));
    }
    best[iz] = local;
  });
  res.max_count = *std::max_element(best.begin(), best.end());
  res.phi = static_cast<double>(res.max_count) / kn;
  res.cone_invariant = std::all_of(invariant.begin(), invariant.end(), [](char c) { return c != 0; });
  return res;
}

double transversality_radius(const SkewProductSystem& sys) {
  const CocycleContext ctx(sys);
  const TrapZone zone = TrapZone::from_context(ctx);
  return (sys.tau().derivative_sup() + (sys.k() - 1) * zone.radius / 2.0) / std::numbers::pi;
}

std::vector<TransversalityRow> transversality_vs_captivity(const SkewProductSystem& sys, int n_max, int z_points) {
  const CocycleContext ctx(sys);
  const TrapZone zone = TrapZone::from_context(ctx);
  const double R = transversality_radius(sys);
  std::vector<TransversalityRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    TransversalityRow row;
    row.n = n;
    row.count = count_trapped(ctx, 0, n, zone, TrapGrid{z_points, 0, true});
    row.phi = transversality_phi(sys, R, n, z_points).phi;
    row.bound = std::pow(static_cast<double>(sys.k()), n) * row.phi;
    row.holds = static_cast<double>(row.count) <= row.bound + 1e-9;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace skewlab
