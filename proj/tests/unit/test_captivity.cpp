#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "skewlab/captivity.hpp"
#include "skewlab/cohomology.hpp"
#include "skewlab/error.hpp"
#include "skewlab/verify/oracles.hpp"

using namespace skewlab;

namespace {

SkewProductSystem constant_ceiling() {
  return {2, CircleDiffeo(), Ceiling(TrigPolynomial::constant_term(1.0))};
}

}  // namespace

TEST(Branch, Examples) {
  const auto sys = doubling_cosine();
  const auto a = canonical_branch(sys, 0, {0.0, 0.0});
  EXPECT_NEAR(a.point.y, 0.0, 1e-15);
  EXPECT_NEAR(a.point.eta, 0.0, 1e-12);
  const auto b = canonical_branch(sys, 0, {0.5, 0.0});
  EXPECT_NEAR(b.point.y, 0.25, 1e-12);
  EXPECT_NEAR(b.point.eta, -kTwoPi, 1e-12);
  const auto c = canonical_branch(sys, 1, {0.5, 1.0});
  EXPECT_NEAR(c.x_lift, 0.75, 1e-12);
  EXPECT_NEAR(c.point.eta, 2.0 + kTwoPi, 1e-12);
  EXPECT_THROW(canonical_branch(sys, 2, {0.5, 0.0}), InvalidArgument);
}

TEST(Branch, ZoneConstants) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  EXPECT_NEAR(zone.kappa, 1.25, 1e-15);
  EXPECT_NEAR(zone.c_tau, kTwoPi + 1.0, 1e-9);
  EXPECT_NEAR(zone.radius, 29.133, 1e-3);
  EXPECT_NEAR(zone.c1(), 14.566, 1e-3);
  EXPECT_GT(zone.radius - zone.c1(), 0.0);
  EXPECT_THROW(TrapZone::from_context(ctx, 1.6), InvalidArgument);
}

TEST(Branch, EscapeLemmaOnRandomSamples) {
  const NoiseModel model = verify::standard_model(doubling_cosine(), 4, 64);
  const CocycleContext ctx(model, 0.125);
  const auto zone = TrapZone::from_context(ctx);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uy(0.0, 1.0), ueta(zone.radius, 8.0 * zone.radius);
  for (int i = 0; i < 1000; ++i) {
    const double eta = (i % 2 ? -1.0 : 1.0) * ueta(rng);
    const auto& sys = ctx.at(i % 64 - 32);
    for (int j = 0; j < 2; ++j) {
      const auto img = canonical_branch(sys, j, {uy(rng), eta});
      ASSERT_GT(std::abs(img.point.eta), zone.kappa * std::abs(eta));
    }
  }
}

TEST(Trajectory, OneStepIsBranchImages) {
  const auto sys = verify::bump_system();
  const CocycleContext ctx(sys);
  const CotangentPoint pt(0.3, 4.0);
  const auto set = trajectory_set(ctx, 0, 1, pt);
  ASSERT_EQ(set.size(), 2u);
  for (int j = 0; j < 2; ++j) {
    const auto img = canonical_branch(sys, j, pt);
    EXPECT_NEAR(set[j].y, img.point.y, 1e-14);
    EXPECT_NEAR(set[j].eta, img.point.eta, 1e-12);
  }
}

TEST(Trajectory, LinearUntwistedScalesEta) {
  const CocycleContext ctx(SkewProductSystem(2, CircleDiffeo(), Ceiling()));
  for (int n = 1; n <= 8; ++n) {
    const auto set = trajectory_set(ctx, 0, n, {0.0, 0.7});
    ASSERT_EQ(set.size(), std::size_t{1} << n);
    for (const auto& p : set) EXPECT_NEAR(p.eta, std::ldexp(0.7, n), 1e-12);
  }
  EXPECT_THROW(trajectory_set(ctx, 0, kBranchCap + 1, {0.0, 0.0}), BranchBudgetExceeded);
}

TEST(Trajectory, MatchesLiftedOrbit) {
  const NoiseModel model = verify::standard_model(doubling_cosine(), 9, 64);
  const CocycleContext ctx(model, 0.05);
  for (int n = 1; n <= 6; ++n) {
    const double y = 0.137;
    const double eta = -3.5;
    const auto set = trajectory_set(ctx, 3, n, {y, eta});
    for (std::size_t a = 0; a < set.size(); ++a) {
      const auto orbit = lifted_orbit(ctx, 3, n, y + static_cast<double>(a), eta);
      EXPECT_NEAR(wrap_unit(orbit.x.back()), set[a].y, 1e-9);
      EXPECT_NEAR(orbit.xi.back(), set[a].eta, 1e-9);
      EXPECT_NEAR(orbit.xi_closed_form, set[a].eta, 1e-9);
    }
  }
}

TEST(Count, ConstantCeilingIsTotallyCaptive) {
  const CocycleContext ctx(constant_ceiling());
  const auto zone = TrapZone::from_context(ctx);
  const auto diag = captivity_diagnostic(ctx, 0, 12, zone, TrapGrid{});
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(diag.counts[n - 1], 1L << n);
    EXPECT_NEAR(diag.rates[n - 1], std::log(2.0), 1e-12);
  }
  EXPECT_EQ(diag.verdict, "totally-captive");
}

TEST(Count, DoublingCosineBaseline) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  const auto diag = captivity_diagnostic(ctx, 0, 12, zone, TrapGrid{});
  const std::vector<long> expected{2, 4, 8, 13, 20, 24, 29, 30, 39, 37, 38, 43};
  EXPECT_EQ(diag.counts, expected);
  for (int n = 2; n <= 12; ++n)
    EXPECT_LE(std::ldexp(static_cast<double>(diag.counts[n - 1]), -n),
              std::ldexp(static_cast<double>(diag.counts[n - 2]), -(n - 1)));
  EXPECT_NEAR(diag.rates.back(), std::log(43.0) / 12.0, 1e-12);
  EXPECT_EQ(diag.verdict, "partially-captive");

  TrapGrid exact;
  exact.exact_eta = true;
  const std::vector<long> expected_exact{2, 4, 8, 14, 20, 27, 35, 41, 47, 59, 68, 77};
  EXPECT_EQ(captivity_diagnostic(ctx, 0, 12, zone, exact).counts, expected_exact);
}

TEST(Count, ZoneMonotonicityAndDoubledRadius) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  const auto wide = TrapZone::from_context(ctx, 0.0, 2.0);
  TrapGrid exact;
  exact.exact_eta = true;
  for (int n = 1; n <= 10; ++n) EXPECT_LE(count_trapped(ctx, 0, n, zone, exact), count_trapped(ctx, 0, n, wide, exact));
  const auto a = captivity_diagnostic(ctx, 0, 12, zone, TrapGrid{});
  const auto b = captivity_diagnostic(ctx, 0, 12, wide, TrapGrid{});
  EXPECT_NE(a.counts, b.counts);
  EXPECT_EQ(a.verdict, b.verdict);
}

TEST(Count, EscapeIsPermanent) {
  const CocycleContext ctx(verify::bump_system());
  const auto zone = TrapZone::from_context(ctx);
  TrapGrid g{1, 9, false};
  for (double y : {0.0, 0.3, 0.71}) {
    bool escaped = false;
    for (int n = 1; n <= 12; ++n) {
      // a narrow zone so that escape happens within the horizon
      TrapZone z = zone;
      z.radius = 0.2;
      const long c = count_trapped_at(ctx, 0, n, z, g, y);
      if (escaped) {
        EXPECT_EQ(c, 0);
      }
      escaped = escaped || c == 0;
    }
  }
}

TEST(Escape, Values) {
  const EscapeSpec spec{6.0, 29.13, 7.0};
  EXPECT_EQ(escape_value(spec, 0.0), 1.0);
  EXPECT_EQ(escape_value(spec, -29.13), 1.0);
  const double far = 2.0 * (spec.R + spec.delta0);
  EXPECT_DOUBLE_EQ(escape_value(spec, far), std::pow(1.0 + far * far, 3.0));
  EXPECT_EQ(escape_value(spec, -far), escape_value(spec, far));
  double prev = 1.0;
  for (int i = 1; i < 100; ++i) {
    const double e = spec.R + spec.delta0 * i / 100.0;
    const double v = escape_value(spec, e);
    EXPECT_GT(v, 1.0);
    EXPECT_LT(v, std::pow(1.0 + e * e, 3.0));
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_NEAR(EscapeSpec::c_kappa(29.13, 1.25), 0.8002, 1e-4);
}

TEST(Escape, RatioBound) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  const auto spec = EscapeSpec::for_zone(zone, 6.0);
  const double bound = std::pow(EscapeSpec::c_kappa(spec.R, zone.kappa), spec.m);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uy(0.0, 1.0), ueta(-4.0 * spec.R, 4.0 * spec.R);
  int outside = 0;
  for (int i = 0; i < 4000 && outside < 1000; ++i) {
    const CotangentPoint pt(uy(rng), ueta(rng));
    for (int j = 0; j < 2; ++j) {
      const auto img = canonical_branch(ctx.base(), j, pt);
      const double r = escape_ratio(spec, pt.eta, img.point.eta);
      EXPECT_LE(r, 1.0 + 1e-12);
      if (std::abs(pt.eta) > spec.R) {
        EXPECT_LE(r, bound * (1.0 + 1e-12));
      }
    }
    if (std::abs(pt.eta) > spec.R) ++outside;
  }
  EXPECT_EQ(outside, 1000);
}

TEST(Symbol, UntwistedLinearIsOne) {
  const CocycleContext ctx(SkewProductSystem(2, CircleDiffeo(), Ceiling()));
  const EscapeSpec spec{0.0, 10.0, 2.0};
  const auto f = principal_symbol(ctx, 0, 5, spec, SymbolGrid{16, 33, 0.0});
  for (double v : f.values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Symbol, PositiveAndBounded) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  const auto spec = EscapeSpec::for_zone(zone, 6.0);
  for (int n : {4, 6}) {
    const auto f = principal_symbol(ctx, 0, n, spec, SymbolGrid{64, 129, 0.0});
    const auto b = symbol_bound(ctx, 0, n, spec, zone);
    EXPECT_GT(f.min, 0.0);
    EXPECT_LE(f.sup, b.total) << n;
    EXPECT_NEAR(b.total, b.escaping + b.trapped, 1e-15);
  }
}

TEST(Symbol, BoundForConstantCeiling) {
  const CocycleContext ctx(constant_ceiling());
  const auto zone = TrapZone::from_context(ctx);
  const auto spec = EscapeSpec::for_zone(zone, 2.0);
  const int n = 5;
  const auto b = symbol_bound(ctx, 0, n, spec, zone);
  EXPECT_EQ(b.count, 16);
  EXPECT_NEAR(b.trapped, std::pow(2.0 / 1.5, n), 1e-12);
  const auto heavy = symbol_bound(ctx, 0, n, EscapeSpec::for_zone(zone, 60.0), zone);
  EXPECT_LT(heavy.escaping, b.escaping);
  EXPECT_LT(heavy.escaping, 1e-8);
}

TEST(ChooseN0, ConstantCeilingNeverSucceeds) {
  const CocycleContext ctx(constant_ceiling());
  const auto zone = TrapZone::from_context(ctx);
  for (double rho : {0.9, 0.99}) {
    const auto c = choose_n0(ctx, rho, 1.0, zone, TrapGrid{});
    EXPECT_FALSE(c.n0.has_value());
    EXPECT_GT(c.best_margin, 0.0);
  }
  EXPECT_THROW(choose_n0(ctx, 0.5, 1.0, zone, TrapGrid{}), InvalidArgument);
}

TEST(ChooseN0, DoublingCosineSweep) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  // Baseline: rho = 0.9 is not reached by n = 12 on the default grid.
  const auto base = choose_n0(ctx, 0.9, 1.0, zone, TrapGrid{});
  EXPECT_FALSE(base.n0.has_value());
  EXPECT_GT(base.best_margin, 0.0);
  int prev = 1000;
  for (double rho : {0.9, 0.95, 0.99}) {
    const auto c = choose_n0(ctx, rho, 1.0, zone, TrapGrid{}, 1, 14);
    const int n0 = c.n0.value_or(999);
    EXPECT_LE(n0, prev) << rho;
    prev = n0;
  }
  EXPECT_LT(prev, 999);
}
