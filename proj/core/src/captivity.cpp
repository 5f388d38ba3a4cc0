#include "skewlab/captivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewlab/error.hpp"
#include "skewlab/numeric.hpp"
#include "skewlab/parallel.hpp"

namespace skewlab {

BranchImage canonical_branch(const SkewProductSystem& sys, int j, CotangentPoint pt) {
  if (j < 0 || j >= sys.k()) throw InvalidArgument("branch index out of range");
  const double x = sys.invert_expanding(pt.y + j);
  const double xi = sys.eval_expanding(x).derivative * pt.eta + sys.tau().derivative(x);
  return {x, CotangentPoint(x, xi)};
}

BranchTree branch_tree(const CocycleContext& ctx, long j0, int n, double y) {
  if (n > kBranchCap) throw BranchBudgetExceeded(n, kBranchCap);
  if (n < 0) throw InvalidArgument("n must be >= 0");
  const int k = ctx.k();
  BranchTree t;
  t.n = n;
  t.x = {wrap_unit(y)};
  t.slope = {1.0};
  t.offset = {0.0};
  t.dG = {1.0};
  std::size_t width = 1;
  for (int s = 1; s <= n; ++s) {
    // Step s applies F(theta^{n-s} omega); the new digit alpha_s has weight k^{s-1}.
    const auto& sys = ctx.at(j0 + n - s);
    const std::size_t next = width * k;
    std::vector<double> x(next), slope(next), offset(next), dG(next);
    for (std::size_t idx = 0; idx < width; ++idx) {
      for (int a = 0; a < k; ++a) {
        const std::size_t c = idx + a * width;
        const double xl = sys.invert_expanding(t.x[idx] + a);
        const double de = sys.eval_expanding(xl).derivative;
        const double dt = sys.tau().derivative(xl);
        x[c] = wrap_unit(xl);
        slope[c] = de * t.slope[idx];
        offset[c] = de * t.offset[idx] + dt;
        dG[c] = t.dG[idx] / de;
      }
    }
    t.x.swap(x);
    t.slope.swap(slope);
    t.offset.swap(offset);
    t.dG.swap(dG);
    width = next;
  }
  return t;
}

std::vector<CotangentPoint> trajectory_set(const CocycleContext& ctx, long j0, int n, CotangentPoint pt) {
  const BranchTree t = branch_tree(ctx, j0, n, pt.y);
  std::vector<CotangentPoint> out;
  out.reserve(t.size());
  for (std::size_t a = 0; a < t.size(); ++a) out.emplace_back(t.x[a], t.xi(a, pt.eta));
  return out;
}

namespace {

long count_in_tree(const BranchTree& t, const TrapZone& zone, const TrapGrid& grid) {
  const double R = zone.radius;
  if (grid.exact_eta) {
    std::vector<std::pair<double, double>> iv;
    iv.reserve(t.size());
    for (std::size_t a = 0; a < t.size(); ++a) {
      const double lo = std::max(-R, (-R - t.offset[a]) / t.slope[a]);
      const double hi = std::min(R, (R - t.offset[a]) / t.slope[a]);
      if (lo <= hi) iv.emplace_back(lo, hi);
    }
    return max_overlap_depth(std::move(iv));
  }
  long best = 0;
  for (int l = 0; l < grid.eta_points; ++l) {
    const double eta = grid.eta_points == 1 ? 0.0 : -R + 2.0 * R * l / (grid.eta_points - 1);
    long c = 0;
    for (std::size_t a = 0; a < t.size(); ++a)
      if (std::abs(t.xi(a, eta)) <= R) ++c;
    best = std::max(best, c);
  }
  return best;
}

}  // namespace

long count_trapped_at(const CocycleContext& ctx, long j0, int n, const TrapZone& zone,
                      const TrapGrid& grid, double y) {
  if (n == 0) return 1;
  return count_in_tree(branch_tree(ctx, j0, n, y), zone, grid);
}

long count_trapped(const CocycleContext& ctx, long j0, int n, const TrapZone& zone, const TrapGrid& grid) {
  if (n == 0) return 1;
  if (n > kBranchCap) throw BranchBudgetExceeded(n, kBranchCap);
  ctx.at(j0);
  ctx.at(j0 + n - 1);
  std::vector<long> per_y(static_cast<std::size_t>(grid.y_points));
  parallel_for(grid.y_points, 0, [&](long i) {
    per_y[i] = count_trapped_at(ctx, j0, n, zone, grid, static_cast<double>(i) / grid.y_points);
  });
  return *std::max_element(per_y.begin(), per_y.end());
}

CaptivityDiagnostic captivity_diagnostic(const CocycleContext& ctx, long j0, int n_max, const TrapZone& zone,
                                         const TrapGrid& grid) {
  if (n_max > kBranchCap) throw BranchBudgetExceeded(n_max, kBranchCap);
  CaptivityDiagnostic d;
  d.infimum = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    const long c = count_trapped(ctx, j0, n, zone, grid);
    d.counts.push_back(c);
    const double r = c > 0 ? std::log(static_cast<double>(c)) / n : -std::numeric_limits<double>::infinity();
    d.rates.push_back(r);
    d.infimum = std::min(d.infimum, r);
  }
  const double logk = std::log(static_cast<double>(ctx.k()));
  bool total = true;
  for (double r : d.rates) total = total && r >= logk - 1e-12;
  bool tail_decreasing = true;
  for (int n = n_max / 2 + 1; n < n_max; ++n) tail_decreasing = tail_decreasing && d.rates[n] < d.rates[n - 1];
  if (total)
    d.verdict = "totally-captive";
  else if (tail_decreasing && d.rates.back() < logk - 0.05)
    d.verdict = "partially-captive";
  else
    d.verdict = "inconclusive";
  return d;
}

SymbolField principal_symbol(const CocycleContext& ctx, long j0, int n, const EscapeSpec& spec,
                             const SymbolGrid& grid) {
  SymbolField f;
  f.grid = grid;
  if (f.grid.eta_max <= 0.0) f.grid.eta_max = spec.R + spec.delta0;
  const int ny = f.grid.y_points;
  const int ne = f.grid.eta_points;
  f.values.assign(static_cast<std::size_t>(ny) * ne, 0.0);
  parallel_for(ny, 0, [&](long iy) {
    const BranchTree t = branch_tree(ctx, j0, n, static_cast<double>(iy) / ny);
    for (int ie = 0; ie < ne; ++ie) {
      const double eta = ne == 1 ? 0.0 : -f.grid.eta_max + 2.0 * f.grid.eta_max * ie / (ne - 1);
      const double a0 = escape_value(spec, eta);
      double acc = 0.0;
      for (std::size_t a = 0; a < t.size(); ++a) {
        const double r = a0 / escape_value(spec, t.xi(a, eta));
        acc += r * r * t.dG[a];
      }
      f.values[static_cast<std::size_t>(iy) * ne + ie] = acc;
    }
  });
  f.sup = -1.0;
  f.min = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < ny; ++iy)
    for (int ie = 0; ie < ne; ++ie) {
      const double v = f.values[static_cast<std::size_t>(iy) * ne + ie];
      f.min = std::min(f.min, v);
      if (v > f.sup) {
        f.sup = v;
        f.y_at_sup = static_cast<double>(iy) / ny;
        f.eta_at_sup = ne == 1 ? 0.0 : -f.grid.eta_max + 2.0 * f.grid.eta_max * ie / (ne - 1);
      }
    }
  return f;
}

SymbolBound symbol_bound(const CocycleContext& ctx, long j0, int n, const EscapeSpec& spec,
                         const TrapZone& zone, int y_points) {
  SymbolBound b;
  const double k = ctx.k();
  const double lam = ctx.lambda();
  const double ck = EscapeSpec::c_kappa(spec.R, zone.kappa);
  b.escaping = std::pow(k / lam, n) * std::pow(ck, 2.0 * spec.m);
  b.count = n >= 1 ? count_trapped(ctx, j0 + 1, n - 1, zone, TrapGrid{y_points, 0, true}) : 0;
  b.trapped = n >= 1 ? k * static_cast<double>(b.count) / std::pow(lam, n) : 0.0;
  b.total = b.escaping + b.trapped;
  return b;
}

N0Choice choose_n0(const CocycleContext& ctx, double rho, double c_dim, const TrapZone& zone,
                   const TrapGrid& grid, int samples, int n_cap) {
  const double lam = ctx.lambda();
  if (!(rho > 1.0 / std::sqrt(lam))) throw InvalidArgument("choose_n0 needs rho > lambda^{-1/2}");
  const double rhs = std::log(rho * rho * lam);
  N0Choice out;
  out.best_margin = std::numeric_limits<double>::infinity();
  for (int n0 = 2; n0 <= n_cap; ++n0) {
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      const long c = count_trapped(ctx, static_cast<long>(s) * (n_cap + 1), n0 - 1, zone, grid);
      worst = std::max(worst, std::abs(std::log(static_cast<double>(std::max(c, 1L)))));
    }
    const double lhs = (std::log(c_dim * ctx.k()) + worst) / (n0 - 1);
    const double margin = lhs - rhs;
    if (margin < out.best_margin) {
      out.best_margin = margin;
      out.best_n = n0;
    }
    if (margin < 0.0) {
      out.n0 = n0;
      return out;
    }
  }
  return out;
}

}  // namespace skewlab
