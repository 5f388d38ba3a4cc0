#include "skewlab/spectral.hpp"

#include <algorithm>
#include <limits>

#include "skewlab/error.hpp"

namespace skewlab {

namespace {

void sort_by_modulus(std::vector<cplx>& v) {
  std::stable_sort(v.begin(), v.end(), [](cplx a, cplx b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

}  // namespace

std::vector<cplx> SpectralReport::resonances() const {
  std::vector<cplx> out;
  for (const auto& e : finest)
    if (e.resonance) out.push_back(e.value);
  return out;
}

double SpectralReport::spectral_radius() const {
  return finest.empty() ? 0.0 : std::abs(finest.front().value);
}

SpectralReport resonances(const SkewProductSystem& sys, int nu, double m, const std::vector<int>& ladder,
                          double stab_tol, double lambda) {
  if (ladder.size() < 2) throw InvalidArgument("resonance ladder needs at least two levels");
  SpectralReport rep;
  rep.nu = nu;
  rep.m = m;
  rep.lambda = lambda > 0.0 ? lambda : expansion_target(sys);
  rep.r_m = essential_radius_log(rep.lambda, sys.k(), m);
  rep.stab_tol = stab_tol;
  const WeightScheme w = WeightScheme::sobolev(m);
  for (int cutoff : ladder) {
    const FrequencyGrid grid = FrequencyGrid::guarded(sys, nu, cutoff);
    const CMatrix a = assemble(sys, nu, grid, Direction::Adjoint).entries;
    const Eigen::VectorXd d = w.diagonal(grid);
    SpectralLevel level{cutoff, grid.points, true, {}};
    level.solver_ok = general_eigenvalues(d.asDiagonal() * a * d.cwiseInverse().asDiagonal(), level.eigenvalues);
    sort_by_modulus(level.eigenvalues);
    rep.solver_ok = rep.solver_ok && level.solver_ok;
    rep.levels.push_back(std::move(level));
  }
  const double radius = std::exp(rep.r_m) + stab_tol;
  const auto outside = [&](const std::vector<cplx>& v) {
    std::vector<cplx> o;
    for (cplx z : v)
      if (std::abs(z) > radius) o.push_back(z);
    return o;
  };
  const auto& last = rep.levels.back().eigenvalues;
  const auto& prev = rep.levels[rep.levels.size() - 2].eigenvalues;
  const std::vector<cplx> cand = outside(last);
  // Match against everything on the previous level that is near or outside the radius.
  std::vector<cplx> pool;
  for (cplx z : prev)
    if (std::abs(z) > radius - 10.0 * stab_tol) pool.push_back(z);
  const std::vector<int> match = match_points(cand, pool);
  for (cplx z : last) {
    Eigenvalue e{z, false, -1.0};
    const auto it = std::find(cand.begin(), cand.end(), z);
    if (it != cand.end()) {
      const int mi = match[static_cast<std::size_t>(it - cand.begin())];
      if (mi >= 0) {
        e.drift = std::abs(z - pool[static_cast<std::size_t>(mi)]);
        e.resonance = e.drift <= stab_tol;
      }
    }
    rep.finest.push_back(e);
  }
  return rep;
}

LyapunovEstimate lyapunov(const CocycleContext& ctx, int nu, const WeightScheme& scheme, int cutoff,
                          int n_max, int samples) {
  if (n_max < 4) throw InvalidArgument("lyapunov needs n_max >= 4");
  LyapunovEstimate est;
  const FrequencyGrid grid = FrequencyGrid::guarded(ctx, nu, cutoff);
  const Eigen::VectorXd d = scheme.diagonal(grid);
  const Eigen::VectorXd dinv = d.cwiseInverse();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int s = 0; s < samples; ++s) {
    const long j0 = static_cast<long>(s) * n_max;
    const auto steps = assemble_steps(ctx, nu, grid, j0, n_max, Direction::Adjoint);
    CMatrix acc = d.asDiagonal() * steps[0] * dinv.asDiagonal();
    std::vector<double> logs;
    logs.push_back(std::log(spectral_norm(acc)));
    for (int n = 2; n <= n_max; ++n) {
      acc = (d.asDiagonal() * steps[n - 1] * dinv.asDiagonal()) * acc;
      logs.push_back(std::log(spectral_norm(acc)));
    }
    std::vector<double> xs, ys;
    for (int n = 2; n <= n_max; ++n) {
      xs.push_back(n);
      ys.push_back(logs[n - 1]);
    }
    const LinearFit fit = fit_line(xs, ys);
    est.per_sample.push_back(fit.slope);
    est.residual = std::max(est.residual, fit.rms_residual);
    lo = std::min(lo, fit.slope);
    hi = std::max(hi, fit.slope);
    est.log_norms.push_back(std::move(logs));
  }
  double sum = 0.0;
  for (double v : est.per_sample) sum += v;
  est.slope = samples > 0 ? sum / samples : 0.0;
  est.spread = samples > 0 ? hi - lo : 0.0;
  return est;
}

double DensityResult::operator()(double x) const {
  double acc = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double ph = kTwoPi * grid.frequency(i) * x;
    acc += (coefficients(i) * cplx(std::cos(ph), std::sin(ph))).real();
  }
  return acc;
}

DensityResult invariant_density(const CocycleContext& ctx, long j, int n_pullback, int cutoff, double tol) {
  if (n_pullback < 1) throw InvalidArgument("n_pullback must be >= 1");
  const FrequencyGrid grid = FrequencyGrid::guarded(ctx, 0, cutoff);
  // steps[i] is M*_0 at time index j - n_pullback + 1 + i, i.e. up to j.
  const long first = j - n_pullback + 1;
  const auto steps = assemble_steps(ctx, 0, grid, first, n_pullback, Direction::Adjoint);
  const auto& at_j = steps.back();
  const auto pullback = [&](long end, int depth) {
    // M*_{0,depth}(theta^{end-depth} omega) 1, ending at time index `end` (exclusive).
    CVector u = CVector::Zero(grid.size());
    u(grid.index(0)) = 1.0;
    for (long t = end - depth; t < end; ++t) u = steps[static_cast<std::size_t>(t - first)] * u;
    return u;
  };
  DensityResult best;
  best.grid = grid;
  best.residual = std::numeric_limits<double>::infinity();
  for (int depth = 1; depth < n_pullback; ++depth) {
    // h(theta^j omega) uses steps ending at j (exclusive); h(theta^{j+1} omega) ends at j+1.
    const CVector h = pullback(j, depth);
    const CVector h_next = pullback(j + 1, depth);
    const double r = (at_j * h - h_next).norm();
    if (r < best.residual) {
      best.residual = r;
      best.depth = depth;
      best.coefficients = h;
    }
    if (r <= tol) break;
  }
  const cplx mass = best.coefficients(grid.index(0));
  best.coefficients /= mass;
  best.integral = best.coefficients(grid.index(0)).real();
  best.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 512; ++i) best.min_value = std::min(best.min_value, best(i / 512.0));
  if (best.residual > tol) throw ResidualTooLarge(best.residual, tol);
  return best;
}

std::vector<PeripheralVerdict> peripheral_check(const SkewProductSystem& sys, const std::vector<int>& nus,
                                                double m, int cutoff) {
  std::vector<PeripheralVerdict> out;
  const WeightScheme w = WeightScheme::sobolev(m);
  for (int nu : nus) {
    const FrequencyGrid grid = FrequencyGrid::guarded(sys, nu, cutoff);
    const CMatrix a = assemble(sys, nu, grid, Direction::Adjoint).entries;
    const Eigen::VectorXd d = w.diagonal(grid);
    std::vector<cplx> ev;
    PeripheralVerdict v;
    v.nu = nu;
    if (!general_eigenvalues(d.asDiagonal() * a * d.cwiseInverse().asDiagonal(), ev)) {
      v.suspect_cohomologous = true;
      out.push_back(v);
      continue;
    }
    sort_by_modulus(ev);
    v.radius = ev.empty() ? 0.0 : std::abs(ev[0]);
    if (nu == 0) {
      v.second_modulus = ev.size() > 1 ? std::abs(ev[1]) : 0.0;
      v.simplicity_margin = 1.0 - v.second_modulus;
    } else {
      v.suspect_cohomologous = v.radius >= 1.0 - 1e-3;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace skewlab
