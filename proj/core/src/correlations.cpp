#include "skewlab/correlations.hpp"

#include <cmath>

#include "skewlab/error.hpp"

namespace skewlab {

int Observable2D::nu_max() const {
  int m = 0;
  for (const auto& [nu, c] : modes) m = std::max(m, std::abs(nu));
  return m;
}

cplx Observable2D::mode(int nu, double x) const {
  const auto it = modes.find(nu);
  if (it == modes.end()) return {};
  cplx acc{};
  for (int a = -degree; a <= degree; ++a) {
    const double ph = kTwoPi * a * x;
    acc += it->second[static_cast<std::size_t>(a + degree)] * cplx(std::cos(ph), std::sin(ph));
  }
  return acc;
}

cplx Observable2D::operator()(double x, double s) const {
  cplx acc{};
  for (const auto& [nu, c] : modes) {
    const double ph = kTwoPi * nu * s;
    acc += mode(nu, x) * cplx(std::cos(ph), std::sin(ph));
  }
  return acc;
}

CVector Observable2D::on_grid(int nu, const FrequencyGrid& grid) const {
  CVector v = CVector::Zero(grid.size());
  const auto it = modes.find(nu);
  if (it == modes.end()) return v;
  for (int a = -degree; a <= degree; ++a)
    if (std::abs(a) <= grid.cutoff) v(grid.index(a)) = it->second[static_cast<std::size_t>(a + degree)];
  return v;
}

void Observable2D::set(int nu, int a, cplx value) {
  if (std::abs(a) > degree) {
    // Widen every mode to the new degree.
    const int nd = std::abs(a);
    for (auto& [m, c] : modes) {
      std::vector<cplx> w(static_cast<std::size_t>(2 * nd + 1));
      for (int b = -degree; b <= degree; ++b) w[static_cast<std::size_t>(b + nd)] = c[static_cast<std::size_t>(b + degree)];
      c.swap(w);
    }
    degree = nd;
  }
  auto& c = modes[nu];
  if (c.empty()) c.assign(static_cast<std::size_t>(2 * degree + 1), cplx{});
  c[static_cast<std::size_t>(a + degree)] = value;
}

CorrelationEngine::CorrelationEngine(const CocycleContext& ctx, int cutoff, int n_pullback, double density_tol)
    : ctx_(&ctx), cutoff_(cutoff), n_pullback_(n_pullback), density_tol_(density_tol) {}

const FrequencyGrid& CorrelationEngine::grid(int nu) {
  auto it = grids_.find(nu);
  if (it == grids_.end()) it = grids_.emplace(nu, FrequencyGrid::guarded(*ctx_, nu, cutoff_)).first;
  return it->second;
}

const CMatrix& CorrelationEngine::step(int nu, long j) {
  const long key_j = ctx_->deterministic() ? 0 : j;
  auto it = steps_.find({nu, key_j});
  if (it == steps_.end())
    it = steps_.emplace(std::make_pair(nu, key_j), assemble(ctx_->at(j), nu, grid(nu), Direction::Adjoint).entries)
             .first;
  return it->second;
}

const DensityResult& CorrelationEngine::density(long j) {
  const long key = ctx_->deterministic() ? 0 : j;
  auto it = densities_.find(key);
  if (it == densities_.end())
    it = densities_.emplace(key, invariant_density(*ctx_, j, n_pullback_, cutoff_, density_tol_)).first;
  return it->second;
}

Observable2D CorrelationEngine::weighted_by_density(long j, const Observable2D& psi) {
  const DensityResult& h = density(j);
  Observable2D out;
  out.degree = cutoff_;
  for (const auto& [nu, c] : psi.modes) {
    std::vector<cplx> w(static_cast<std::size_t>(2 * cutoff_ + 1));
    for (int a = -psi.degree; a <= psi.degree; ++a) {
      const cplx ca = c[static_cast<std::size_t>(a + psi.degree)];
      if (ca == cplx{}) continue;
      for (int b = -h.grid.cutoff; b <= h.grid.cutoff; ++b) {
        const int t = a + b;
        if (std::abs(t) <= cutoff_) w[static_cast<std::size_t>(t + cutoff_)] += ca * h.coefficients(h.grid.index(b));
      }
    }
    out.modes[nu] = std::move(w);
  }
  return out;
}

std::vector<cplx> CorrelationEngine::series(long j0, int n_max, const Observable2D& phi, const Observable2D& psi) {
  std::vector<cplx> out(static_cast<std::size_t>(n_max) + 1, cplx{});
  for (const auto& [nu, coeffs] : psi.modes) {
    if (!phi.modes.count(nu)) continue;
    const FrequencyGrid& g = grid(nu);
    const CVector p = phi.on_grid(nu, g);
    CVector v = psi.on_grid(nu, g);
    const cplx psi_mean = v(g.index(0));
    for (int n = 0; n <= n_max; ++n) {
      if (n > 0) v = step(nu, j0 + n - 1) * v;
      // (p, v) = sum p_a conj(v_a) = v.dot(p)
      cplx term = v.dot(p);
      if (nu == 0) {
        const DensityResult& h = density(j0 + n);
        CVector hv = CVector::Zero(g.size());
        for (int b = -std::min(g.cutoff, h.grid.cutoff); b <= std::min(g.cutoff, h.grid.cutoff); ++b)
          hv(g.index(b)) = h.coefficients(h.grid.index(b));
        term -= hv.dot(p) * std::conj(psi_mean);
      }
      out[static_cast<std::size_t>(n)] += term;
    }
  }
  return out;
}

std::vector<cplx> CorrelationEngine::series_op(long j0, int n_max, const Observable2D& phi, const Observable2D& psi) {
  return series(j0, n_max, phi, psi);
}

std::vector<cplx> CorrelationEngine::series_cl(long j0, int n_max, const Observable2D& phi, const Observable2D& psi) {
  return series(j0, n_max, phi, weighted_by_density(j0, psi));
}

cplx CorrelationEngine::cor_op(long j0, int n, const Observable2D& phi, const Observable2D& psi) {
  return series(j0, n, phi, psi).back();
}

cplx CorrelationEngine::cor_cl(long j0, int n, const Observable2D& phi, const Observable2D& psi) {
  return series_cl(j0, n, phi, psi).back();
}

cplx cor_op(const CocycleContext& ctx, long j0, int n, const Observable2D& phi, const Observable2D& psi, int cutoff) {
  CorrelationEngine e(ctx, cutoff);
  return e.cor_op(j0, n, phi, psi);
}

cplx cor_cl(const CocycleContext& ctx, long j0, int n, const Observable2D& phi, const Observable2D& psi, int cutoff) {
  CorrelationEngine e(ctx, cutoff);
  return e.cor_cl(j0, n, phi, psi);
}

DecayFit fit_decay(const std::vector<cplx>& series, int n_lo, int n_hi) {
  if (n_hi < 0) n_hi = static_cast<int>(series.size()) - 1;
  if (n_lo < 0 || n_hi >= static_cast<int>(series.size()) || n_hi - n_lo < 1)
    throw InvalidArgument("fit_decay: bad range");
  constexpr double kFloor = 1e-14;
  std::vector<double> xs, ys;
  int floored = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double a = std::abs(series[static_cast<std::size_t>(n)]);
    if (a <= kFloor) ++floored;
    xs.push_back(n);
    ys.push_back(std::log(std::max(a, kFloor)));
  }
  if (2 * floored >= static_cast<int>(xs.size()))
    throw DegenerateSeries("fit_decay: at least half of the series is at the 1e-14 floor");
  const LinearFit f = fit_line(xs, ys);
  return {std::exp(f.slope), std::exp(f.intercept), f.rms_residual, f.max_residual, n_lo, n_hi};
}

}  // namespace skewlab
