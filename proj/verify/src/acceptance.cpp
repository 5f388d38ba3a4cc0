#include "skewlab/verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "skewlab/cohomology.hpp"
#include "skewlab/correlations.hpp"
#include "skewlab/error.hpp"
#include "skewlab/experiment.hpp"
#include "skewlab/parallel.hpp"
#include "skewlab/spectral.hpp"
#include "skewlab/verify/oracles.hpp"

namespace skewlab::verify {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string g(double v) { return fmt("%.6g", v); }

SkewProductSystem linear(int k, TrigPolynomial tau) {
  return SkewProductSystem(k, CircleDiffeo(TrigPolynomial()), Ceiling(std::move(tau)));
}

// Tolerances and budgets, fixed by the acceptance criteria.
constexpr double kShiftTol = 1e-10;
constexpr double kShiftBudget = 1.0;
constexpr double kBesselTol = 1e-8;
constexpr double kBesselBudget = 5.0;
constexpr double kDualityTol = 1e-8;
constexpr double kDensityResidual = 1e-6;
constexpr double kDensityMass = 1e-10;
constexpr double kPeripheralTol = 1e-6;
constexpr double kLyapunovZeroTol = 0.02;
constexpr double kLyapunovDecay = -0.05;
constexpr double kCaptivityBudget = 120.0;
constexpr double kEgorovIdentityTol = 1e-8;
constexpr double kOracleTol = 1e-6;
constexpr double kFitResidual = 0.5;
constexpr double kControlRho = 0.99;
constexpr double kHalvingFactor = 1.5;
// Extending the horizon from n <= 10 to n <= 20 may raise the sampled sup through
// realization-to-realization fluctuation; growth in n would exceed this allowance.
constexpr double kWeakLYAllowance = 1.25;

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond) { ok = ok && cond; }
};

Check criterion_shift() {
  Check c;
  const auto t0 = Clock::now();
  const SpectralReport r = resonances(linear(2, TrigPolynomial()), 0, 2.0, {16, 32});
  const double t = since(t0);
  int unit = 0;
  double rest = 0.0;
  for (const auto& e : r.finest) {
    if (std::abs(e.value - 1.0) <= kShiftTol) ++unit;
    else rest = std::max(rest, std::abs(e.value));
  }
  c.require(r.solver_ok && unit == 1 && rest <= kShiftTol && t < kShiftBudget);
  c.detail << "eigenvalues at 1: " << unit << ", max other |z| = " << g(rest) << ", runtime " << fmt("%.3f", t)
           << " s";
  return c;
}

Check criterion_bessel() {
  Check c;
  const auto t0 = Clock::now();
  const SkewProductSystem sys = linear(2, TrigPolynomial::cosine(1));
  double worst = 0.0;
  for (int nu : {1, 2, 4, 8}) {
    const FrequencyGrid grid = FrequencyGrid::guarded(sys, nu, 16);
    const OperatorMatrix m = assemble(sys, nu, grid, Direction::Adjoint);
    for (int b = -16; b <= 16; ++b)
      for (int a = -16; a <= 16; ++a)
        worst = std::max(worst, std::abs(m.entries(grid.index(b), grid.index(a)) - bessel_adjoint_entry(b, a, nu)));
  }
  const double t = since(t0);
  c.require(worst <= kBesselTol && t < kBesselBudget);
  c.detail << "max entry error " << g(worst) << ", runtime " << fmt("%.3f", t) << " s";
  return c;
}

Check criterion_duality() {
  Check c;
  double dual = 0.0, conj = 0.0;
  for (const auto& [name, sys] : test_systems()) {
    for (int nu : {-2, 0, 1, 3}) {
      const FrequencyGrid grid = FrequencyGrid::guarded(sys, nu, 32);
      const CMatrix a = assemble(sys, nu, grid, Direction::Adjoint).entries;
      const CMatrix f = assemble(sys, nu, grid, Direction::Forward).entries;
      dual = std::max(dual, (a - f.adjoint()).cwiseAbs().maxCoeff());
    }
    for (int nu : {1, 2, 3}) {
      const FrequencyGrid grid = FrequencyGrid::guarded(sys, nu, 32);
      const CMatrix p = assemble(sys, nu, grid, Direction::Adjoint).entries;
      const CMatrix q = assemble(sys, -nu, grid, Direction::Adjoint).entries;
      const int d = grid.size();
      for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a) conj = std::max(conj, std::abs(q(b, a) - std::conj(p(d - 1 - b, d - 1 - a))));
    }
  }
  c.require(dual <= kDualityTol && conj <= kDualityTol);
  c.detail << test_systems().size() << " systems, duality " << g(dual) << ", conjugate symmetry " << g(conj);
  return c;
}

double sup_distance(const DensityResult& a, const DensityResult& b) {
  double d = 0.0;
  for (int i = 0; i < 512; ++i) d = std::max(d, std::abs(a(i / 512.0) - b(i / 512.0)));
  return d;
}

Check criterion_density() {
  Check c;
  const NoiseModel model = standard_model(doubling_cosine());
  for (double eps : {0.0, 0.02}) {
    const CocycleContext ctx(model, eps);
    const DensityResult h = invariant_density(ctx, 0, 40, 32, kDensityResidual);
    c.require(h.residual <= kDensityResidual && std::abs(h.integral - 1.0) <= kDensityMass && h.min_value > 0.0);
    c.detail << "eps " << eps << ": residual " << g(h.residual) << " depth " << h.depth << " min " << g(h.min_value)
             << "; ";
  }
  const CocycleContext ctx0(model, 0.0);
  const DensityResult h0 = invariant_density(ctx0, 0, 40, 32, kDensityResidual);
  double prev = INFINITY;
  c.detail << "sup |h_eps - h_0|:";
  for (double eps : {0.1, 0.05, 0.025}) {
    const CocycleContext ctx(model, eps);
    const double d = sup_distance(invariant_density(ctx, 0, 40, 32, kDensityResidual), h0);
    c.require(d < prev);
    prev = d;
    c.detail << " " << g(d);
  }
  return c;
}

Check criterion_peripheral() {
  Check c;
  const std::vector<int> nus{1, 2, 3, 4, 5, 6, 7, 8};
  double worst = 0.0;
  for (const auto& v : peripheral_check(doubling_cosine(), nus, 3.0, 32)) {
    worst = std::max(worst, v.radius);
    c.require(v.radius < 1.0 && !v.suspect_cohomologous);
  }
  double dev = 0.0;
  bool flagged = true;
  for (const auto& v : peripheral_check(linear(2, TrigPolynomial::constant_term(1.0)), nus, 3.0, 32)) {
    dev = std::max(dev, std::abs(v.radius - 1.0));
    flagged = flagged && v.suspect_cohomologous;
  }
  c.require(dev <= kPeripheralTol && flagged);
  c.detail << "doubling+cosine max radius " << g(worst) << "; tau=1 max |radius-1| " << g(dev)
           << (flagged ? ", all flagged" : ", not all flagged");
  return c;
}

Check criterion_lyapunov(Suite suite) {
  Check c;
  const int samples = suite == Suite::Full ? 8 : 4;
  const CocycleContext ctx(standard_model(doubling_cosine()), 0.01);
  const LyapunovEstimate z = lyapunov(ctx, 0, WeightScheme::sobolev(3), 32, 10, samples);
  const LyapunovEstimate e = lyapunov(ctx, 2, WeightScheme::sobolev(3), 32, 10, samples);
  const double worst = *std::max_element(e.per_sample.begin(), e.per_sample.end());
  c.require(std::abs(z.slope) <= kLyapunovZeroTol && e.slope < kLyapunovDecay && worst < kLyapunovDecay);
  c.detail << "r*{0} " << g(z.slope) << "; r*{2} " << g(e.slope) << " (worst sample " << g(worst) << ", "
           << samples << " samples, fit residual " << g(e.residual) << ")";
  return c;
}

Check criterion_captivity() {
  Check c;
  const CocycleContext flat(linear(2, TrigPolynomial::constant_term(1.0)));
  const CaptivityDiagnostic f = captivity_diagnostic(flat, 0, 12, TrapZone::from_context(flat), TrapGrid{});
  for (int n = 1; n <= 12; ++n) c.require(f.counts[static_cast<std::size_t>(n - 1)] == (1L << n));
  const auto t0 = Clock::now();
  const CocycleContext ctx(doubling_cosine());
  const CaptivityDiagnostic d = captivity_diagnostic(ctx, 0, 12, TrapZone::from_context(ctx), TrapGrid{});
  const double t = since(t0);
  for (int n = 5; n <= 12; ++n) c.require(d.rates[static_cast<std::size_t>(n - 1)] < d.rates[static_cast<std::size_t>(n - 2)]);
  c.require(t < kCaptivityBudget);
  c.detail << "tau const N(12) = " << f.counts.back() << "; doubling+cosine (1/n)log N, n=4..12:";
  for (int n = 4; n <= 12; ++n) c.detail << " " << fmt("%.4f", d.rates[static_cast<std::size_t>(n - 1)]);
  c.detail << ", runtime " << fmt("%.2f", t) << " s";
  return c;
}

Check criterion_escape(Suite suite) {
  Check c;
  const SkewProductSystem base = doubling_cosine();
  const NoiseModel model = standard_model(base);
  const double eps0 = epsilon_floor(model.family, base, expansion_target(base), 64);
  const int per_omega = suite == Suite::Full ? 1000 : 200;
  long violations = 0, checked = 0;
  double min_ratio = INFINITY;
  for (double eps : {0.0, 0.5 * eps0}) {
    const CocycleContext ctx(model, eps);
    const TrapZone zone = TrapZone::from_context(ctx);
    std::mt19937_64 rng(0xe5ca9e);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long s = 0; s < 8; ++s) {
      const SkewProductSystem& sys = ctx.at(s);
      for (int i = 0; i < per_omega; ++i) {
        const double y = unit(rng);
        const double mag = zone.radius * (1.0 + 1e-9 + 9.0 * unit(rng));
        const double eta = (unit(rng) < 0.5 ? -1.0 : 1.0) * mag;
        for (int j = 0; j < sys.k(); ++j) {
          const double xi = canonical_branch(sys, j, CotangentPoint(y, eta)).point.eta;
          min_ratio = std::min(min_ratio, std::abs(xi) / std::abs(eta));
          violations += std::abs(xi) > zone.kappa * std::abs(eta) ? 0 : 1;
          ++checked;
        }
      }
    }
  }
  c.require(violations == 0);
  c.detail << "eps0 " << g(eps0) << ", " << checked << " branch images, " << violations
           << " violations, min |xi|/|eta| " << g(min_ratio);
  return c;
}

Check criterion_sandwich(Suite suite) {
  Check c;
  const int n_max = suite == Suite::Full ? 10 : 8;
  const int samples = suite == Suite::Full ? 8 : 2;
  const NoiseModel model = standard_model(doubling_cosine());
  int rows = 0, failed = 0;
  for (double eps : {0.0, 0.01}) {
    const CocycleContext ctx(model, eps);
    const StableGraphSolution S(ctx);
    const TrapZone zone = TrapZone::from_context(ctx);
    const int ns = eps == 0.0 ? 1 : samples;
    for (int s = 0; s < ns; ++s)
      for (int n = 1; n <= n_max; ++n) {
        const SandwichResult r = sandwich_check(ctx, S, 16L * s, n, zone);
        ++rows;
        if (!r.holds) {
          ++failed;
          c.detail << "violation eps " << eps << " sample " << s << " n " << n << " (" << r.lower << "," << r.count
                   << "," << r.upper << "); ";
        }
        if (eps == 0.0 && n == n_max)
          c.detail << "eps 0, n " << n << ": " << r.lower << " <= " << r.count << " <= " << r.upper << "; ";
      }
  }
  c.require(failed == 0);
  c.detail << rows << " rows, " << failed << " violations";
  return c;
}

Check criterion_bracket(Suite suite) {
  Check c;
  const int samples = suite == Suite::Full ? 8 : 2;
  const NoiseModel model = standard_model(doubling_cosine());
  const CocycleContext ctx(model.base);
  const TrapZone zone = TrapZone::from_context(ctx);
  const std::vector<double> grid{0.1, 0.05, 0.02, 0.01, 0.005, 0.0025};
  c.detail << "R " << g(zone.radius) << ", rho " << g(zone.c_tau) << ":";
  for (int n : {2, 4, 6}) {
    const NoiseBracket b = noise_bracket(model, n, zone.radius, zone.c_tau, grid, samples);
    c.require(b.eps_n > 0.0);
    c.detail << " eps(" << n << ") = " << g(b.eps_n);
  }
  c.detail << " (" << samples << " samples)";
  return c;
}

Check criterion_egorov(Suite suite) {
  Check c;
  const CocycleContext ctx(doubling_cosine());
  const TrapZone zone = TrapZone::from_context(ctx);
  const EscapeSpec spec = EscapeSpec::for_zone(zone, 6.0);
  const int n = 4;
  const double window = spec.R + spec.delta0 + 2.0;
  const auto cutoff_for = [&](int nu) { return static_cast<int>(std::ceil(window * nu / kTwoPi)); };

  const int dense_nu = suite == Suite::Full ? 64 : 16;
  const FrequencyGrid dg = FrequencyGrid::guarded(ctx, dense_nu, cutoff_for(dense_nu));
  const PQOperators pq = pq_operators(ctx, dense_nu, dg, 0, n, spec);
  const double gap = std::abs(pq.norm_Q * pq.norm_Q - pq.norm_P);
  c.require(gap <= kEgorovIdentityTol);
  c.detail << "| ||Q||^2 - ||P|| | = " << g(gap) << " at nu " << dense_nu << "; ";

  const SymbolField field = principal_symbol(ctx, 0, n, spec, SymbolGrid{1024, 4097, 0.0});
  const SymbolBound bound = symbol_bound(ctx, 0, n, spec, zone);
  const double field_max = *std::max_element(field.values.begin(), field.values.end());
  c.require(field_max <= bound.total);
  c.detail << "sup p_4 " << fmt("%.6f", field.sup) << " <= B " << fmt("%.4f", bound.total) << "; excess:";

  std::vector<int> nus{64, 128, 256, 512};
  if (suite == Suite::Fast) nus.pop_back();
  double prev = INFINITY;
  for (int nu : nus) {
    const EgorovNorm e = pq_norm_sparse(ctx, nu, FrequencyGrid::guarded(ctx, nu, cutoff_for(nu)), 0, n, spec);
    const double excess = e.norm_P - field.sup;
    c.require(excess <= prev);
    prev = excess;
    c.detail << " nu " << nu << ": " << fmt("%+.6f", excess);
  }
  return c;
}

Check criterion_correlations(Suite suite) {
  Check c;
  const Observable2D phi = smooth_observable(3, 2, 0);
  const Observable2D psi = smooth_observable(3, 2, 1);
  double worst = 0.0;
  struct Case {
    SkewProductSystem sys;
    double eps;
  };
  std::vector<Case> cases{{doubling_cosine(), 0.01}};
  if (suite == Suite::Full) {
    cases.push_back({bump_system(), 0.01});
    cases.push_back({linear(2, TrigPolynomial()), 0.0});
  }
  for (const auto& cs : cases) {
    const CocycleContext ctx(standard_model(cs.sys), cs.eps);
    CorrelationEngine eng(ctx, 32);
    const auto op = eng.series_op(0, 4, phi, psi);
    const auto cl = eng.series_cl(0, 4, phi, psi);
    for (int n = 0; n <= 4; ++n) {
      worst = std::max(worst, std::abs(op[n] - direct_correlation(ctx, 0, n, phi, psi, eng.density(n))));
      worst = std::max(worst, std::abs(cl[n] - direct_correlation(ctx, 0, n, phi, psi, eng.density(n), &eng.density(0))));
    }
  }
  c.require(worst <= kOracleTol);
  c.detail << "mode sum vs quadrature " << g(worst) << " over " << cases.size() << " systems; ";

  const Observable2D obs = analytic_observable(3, 2);
  const CocycleContext ctx(standard_model(doubling_cosine()), 0.01);
  CorrelationEngine eng(ctx, 32);
  const DecayFit fit = fit_decay(eng.series_op(0, 12, obs, obs), 2, 12);
  c.require(fit.rho < 1.0 && fit.residual < kFitResidual);
  c.detail << "doubling+cosine rho " << fmt("%.4f", fit.rho) << " residual " << fmt("%.4f", fit.residual) << "; ";

  const CocycleContext flat(linear(2, TrigPolynomial()));
  CorrelationEngine flat_eng(flat, 32);
  const DecayFit control = fit_decay(flat_eng.series_op(0, 12, obs, obs), 2, 12);
  c.require(control.rho >= kControlRho);
  c.detail << "tau=0 control rho " << fmt("%.4f", control.rho);
  return c;
}

Check criterion_transversality() {
  Check c;
  const SkewProductSystem flat = linear(2, TrigPolynomial::constant_term(1.0));
  const double Rf = transversality_radius(flat);
  for (int n = 1; n <= 12; ++n) c.require(transversality_phi(flat, Rf, n).phi == 1.0);
  const SkewProductSystem sys = doubling_cosine();
  const auto rows = transversality_vs_captivity(sys, 10);
  for (const auto& r : rows) c.require(r.holds);
  const double root = std::pow(rows.back().phi, 0.1);
  c.require(root < 1.0);
  c.detail << "tau const phi = 1 for n <= 12; doubling+cosine R " << fmt("%.4f", transversality_radius(sys))
           << ", phi(10)^(1/10) " << fmt("%.4f", root) << ", N <= 2^n phi:";
  for (const auto& r : rows) c.detail << " " << r.count << "/" << g(r.bound);
  return c;
}

Check criterion_distance(Suite suite) {
  Check c;
  const int samples = suite == Suite::Full ? 8 : 4;
  const auto rows = perturbation_distance(standard_model(doubling_cosine()), 1, 2, WeightScheme::sobolev(2), 32,
                                          {0.08, 0.04, 0.02, 0.01}, samples);
  c.detail << "distances:";
  for (const auto& r : rows) c.detail << " " << g(r.distance);
  c.detail << "; ratios:";
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i].distance / rows[i + 1].distance;
    c.require(ratio >= kHalvingFactor);
    c.detail << " " << fmt("%.3f", ratio);
  }
  return c;
}

Check criterion_weak_ly(Suite suite) {
  Check c;
  const SkewProductSystem base = doubling_cosine();
  const NoiseModel model = standard_model(base);
  const double eps0 = epsilon_floor(model.family, base, expansion_target(base), 64);
  const CocycleContext ctx(model, 0.5 * eps0);
  const int samples = suite == Suite::Full ? 4 : 2;
  c.detail << "eps " << g(0.5 * eps0) << ", C(nu,m) from n<=10 [max n=11..20]:";
  for (int nu = 0; nu <= 4; ++nu) {
    const auto norms = cocycle_norms(ctx, nu, 4, 32, 20, samples);
    c.detail << " nu" << nu << "{";
    for (int m = 0; m <= 4; ++m) {
      double C = 0.0, ext = 0.0;
      for (const auto& row : norms[static_cast<std::size_t>(m)])
        for (int n = 1; n <= 20; ++n) {
          const double v = row[static_cast<std::size_t>(n - 1)];
          if (n <= 10) C = std::max(C, v);
          else ext = std::max(ext, v);
        }
      c.require(std::isfinite(C) && ext <= kWeakLYAllowance * C);
      c.detail << (m ? " " : "") << g(C) << "[" << g(ext) << "]";
    }
    c.detail << "}";
  }
  return c;
}

ExperimentConfig small_config(const std::string& command, const Json& params) {
  const Json j = {{"schema_version", 1},
                  {"system", {{"k", 2}, {"tau", {{"cos", {1.0}}}}}},
                  {"noise", {{"seed", 7}, {"J", 64}, {"map_basis", {"sin1"}}, {"ceiling_basis", {"sin1"}}, {"epsilon", 0.01}}},
                  {"command", {{"name", command}, {"params", params}}}};
  return ExperimentConfig::from_json(j);
}

std::vector<ExperimentConfig> determinism_configs() {
  return {small_config("spectrum", {{"nu", {0, 1}}, {"ladder", {8, 16}}, {"dump_matrix", true}}),
          small_config("lyapunov", {{"cutoff", 16}, {"n_max", 4}, {"samples", 2}}),
          small_config("density", {{"cutoff", 16}}),
          small_config("captivity", {{"n_max", 6}}),
          small_config("egorov", {{"nu", {16}}, {"symbol_y_points", 64}, {"symbol_eta_points", 129}}),
          small_config("cohomology", {{"n_max", 4}, {"bracket_n", {2}}, {"samples", 2}, {"y_points", 16}}),
          small_config("transversality", {{"n_max", 6}}),
          small_config("correlations", {{"n_max", 6}, {"cutoff", 16}}),
          small_config("perturbation-distance", {{"samples", 2}, {"cutoff", 16}})};
}

std::string payload(const ExperimentOutput& o) {
  std::string s = serialize_report(o.report);
  for (const auto& [name, t] : o.tables) s += name + "\n" + t.str();
  return s;
}

Check criterion_determinism(Suite suite) {
  Check c;
  int same = 0, total = 0;
  const int saved = default_threads();
  for (const auto& cfg : determinism_configs()) {
    set_default_threads(1);
    const std::string first = payload(run_experiment(cfg));
    set_default_threads(suite == Suite::Full ? 2 : 1);
    const std::string second = payload(run_experiment(cfg));
    ++total;
    if (first == second) ++same;
    else c.detail << cfg.command << " differs; ";
  }
  set_default_threads(saved);
  c.require(same == total);
  c.detail << same << "/" << total << " commands byte-identical across reruns";
  if (suite == Suite::Full) c.detail << " (second run on 2 threads)";
  return c;
}

struct Entry {
  int id;
  const char* title;
  std::function<Check(Suite)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {1, "shift structure", [](Suite) { return criterion_shift(); }},
      {2, "Bessel oracle", [](Suite) { return criterion_bessel(); }},
      {3, "duality and conjugate-mode symmetry", [](Suite) { return criterion_duality(); }},
      {4, "invariant density", [](Suite) { return criterion_density(); }},
      {5, "peripheral spectrum", [](Suite) { return criterion_peripheral(); }},
      {6, "Lyapunov exponents", criterion_lyapunov},
      {7, "captivity", [](Suite) { return criterion_captivity(); }},
      {8, "escape lemma", criterion_escape},
      {9, "sandwich", criterion_sandwich},
      {10, "noise bracketing", criterion_bracket},
      {11, "Egorov", criterion_egorov},
      {12, "correlations", criterion_correlations},
      {13, "transversality", [](Suite) { return criterion_transversality(); }},
      {14, "perturbation distance", criterion_distance},
      {15, "weak Lasota-Yorke", criterion_weak_ly},
      {16, "determinism", criterion_determinism},
  };
  return table;
}

}  // namespace

std::vector<std::vector<std::vector<double>>> cocycle_norms(const CocycleContext& ctx, int nu, int m_max,
                                                            int cutoff, int n_max, int samples) {
  const FrequencyGrid grid = FrequencyGrid::guarded(ctx, nu, cutoff);
  std::vector<std::vector<std::vector<double>>> out(
      static_cast<std::size_t>(m_max + 1),
      std::vector<std::vector<double>>(static_cast<std::size_t>(samples), std::vector<double>(static_cast<std::size_t>(n_max))));
  for (int s = 0; s < samples; ++s) {
    const auto steps = assemble_steps(ctx, nu, grid, static_cast<long>(s) * n_max, n_max, Direction::Adjoint);
    CMatrix p = CMatrix::Identity(grid.size(), grid.size());
    for (int n = 1; n <= n_max; ++n) {
      p = steps[static_cast<std::size_t>(n - 1)] * p;
      for (int m = 0; m <= m_max; ++m)
        out[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)][static_cast<std::size_t>(n - 1)] =
            weighted_norm(p, grid, WeightScheme::sobolev(m));
    }
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof(head), "CRITERION %02d %s  %-36s (%7.2f s)  ", r.id, r.passed ? "PASS" : "FAIL",
                r.title.c_str(), r.seconds);
  return head + r.detail;
}

std::vector<CriterionResult> run_acceptance(Suite suite, const ResultSink& sink, const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (const auto& e : entries()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    CriterionResult r{e.id, e.title, false, "", 0.0};
    const auto t0 = Clock::now();
    try {
      Check c = e.run(suite);
      r.passed = c.ok;
      r.detail = c.detail.str();
    } catch (const std::exception& ex) {
      r.detail = std::string("error: ") + ex.what();
    }
    r.seconds = since(t0);
    if (sink) sink(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace skewlab::verify
