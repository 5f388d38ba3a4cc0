#include <gtest/gtest.h>

#include <cmath>

#include "skewlab/error.hpp"
#include "skewlab/spectral.hpp"
#include "skewlab/verify/oracles.hpp"

using namespace skewlab;

TEST(Resonances, DoublingShift) {
  const SkewProductSystem sys(2, CircleDiffeo(), Ceiling());
  const auto rep = resonances(sys, 0, 2.0, {16, 32});
  ASSERT_TRUE(rep.solver_ok);
  ASSERT_FALSE(rep.finest.empty());
  EXPECT_NEAR(std::abs(rep.finest[0].value - cplx(1.0)), 0.0, 1e-12);
  for (std::size_t i = 1; i < rep.finest.size(); ++i) EXPECT_LE(std::abs(rep.finest[i].value), 1e-10);
  ASSERT_EQ(rep.resonances().size(), 1u);
}

TEST(Resonances, EssentialRadius) {
  EXPECT_NEAR(std::exp(essential_radius_log(1.5, 2, 2.0)), std::pow(1.5, -2.5) * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::exp(essential_radius_log(1.5, 2, 2.0)), 0.5132, 1e-4);
  for (double m : {0.0, 1.0, 2.5})
    EXPECT_NEAR(essential_radius_log(1.5, 2, m + 1) - essential_radius_log(1.5, 2, m), -std::log(1.5), 1e-14);
  const auto rep = resonances(doubling_cosine(), 0, 2.0, {16, 32}, 1e-4, 1.5);
  EXPECT_NEAR(rep.r_m, essential_radius_log(1.5, 2, 2.0), 1e-15);
  EXPECT_THROW(resonances(doubling_cosine(), 0, 2.0, {16}), InvalidArgument);
}

TEST(Resonances, LeadingEigenvalueOneAcrossWeights) {
  for (double m : {2.0, 3.0, 4.0}) {
    const auto rep = resonances(doubling_cosine(), 0, m, {16, 32});
    const auto res = rep.resonances();
    ASSERT_FALSE(res.empty()) << m;
    EXPECT_NEAR(std::abs(res[0] - cplx(1.0)), 0.0, 1e-10) << m;
    if (res.size() > 1) {
      EXPECT_LT(std::abs(res[1]), 1.0 - 1e-3) << m;
    }
  }
}

TEST(Resonances, TwistedSpectrumInsideUnitCircle) {
  const auto rep = resonances(doubling_cosine(), 1, 3.0, {16, 32});
  ASSERT_TRUE(rep.solver_ok);
  EXPECT_LT(rep.spectral_radius(), 1.0);
  for (const auto& z : rep.resonances()) EXPECT_LT(std::abs(z), 1.0);
}

TEST(Lyapunov, ZeroModeIsNeutral) {
  const NoiseModel model = verify::standard_model(doubling_cosine(), 1, 128);
  const CocycleContext ctx(model, 0.01);
  const auto est = lyapunov(ctx, 0, WeightScheme::sobolev(3.0), 32, 10, 4);
  EXPECT_NEAR(est.slope, 0.0, 0.02);
  ASSERT_EQ(est.per_sample.size(), 4u);
  ASSERT_EQ(est.log_norms[0].size(), 10u);
}

TEST(Lyapunov, TwistedModeContracts) {
  const NoiseModel model = verify::standard_model(doubling_cosine(), 1, 128);
  const CocycleContext ctx(model, 0.01);
  const auto est = lyapunov(ctx, 2, WeightScheme::sobolev(3.0), 32, 10, 4);
  EXPECT_LT(est.slope, -0.05);
  for (double s : est.per_sample) EXPECT_LT(s, -0.05);
}

TEST(Lyapunov, ConstantCeilingIsNeutral) {
  const SkewProductSystem sys(2, CircleDiffeo(), Ceiling(TrigPolynomial::constant_term(1.0)));
  const CocycleContext ctx(sys);
  const auto est = lyapunov(ctx, 4, WeightScheme::sobolev(3.0), 32, 10, 2);
  EXPECT_NEAR(est.slope, 0.0, 0.02);
}

TEST(Lyapunov, RejectsShortHorizon) {
  const CocycleContext ctx(doubling_cosine());
  EXPECT_THROW(lyapunov(ctx, 1, WeightScheme::sobolev(3.0), 16, 3, 1), InvalidArgument);
}

TEST(Density, LinearMapGivesLebesgue) {
  const CocycleContext ctx(doubling_cosine());
  const auto h = invariant_density(ctx, 0, 40, 16, 1e-10);
  for (int a = -16; a <= 16; ++a)
    EXPECT_NEAR(std::abs(h.coefficients(h.grid.index(a)) - cplx(a == 0 ? 1.0 : 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(h(0.3), 1.0, 1e-12);
}

TEST(Density, BumpMatchesEigenvector) {
  const auto sys = verify::bump_system();
  const CocycleContext ctx(sys);
  const auto h = invariant_density(ctx, 0, 40, 32, 1e-10);
  const auto m = assemble(sys, 0, h.grid, Direction::Adjoint);
  std::vector<cplx> values;
  CMatrix vectors;
  ASSERT_TRUE(general_eigensystem(m.entries, values, vectors));
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (std::abs(values[i] - cplx(1.0)) < std::abs(values[best] - cplx(1.0))) best = i;
  CVector v = vectors.col(static_cast<Eigen::Index>(best));
  v /= v(h.grid.index(0));
  EXPECT_LT((v - h.coefficients).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_NEAR(h.integral, 1.0, 1e-12);
  EXPECT_GT(h.min_value, 0.0);
  EXPECT_GT((h.coefficients - CVector::Unit(h.grid.size(), h.grid.index(0))).norm(), 1e-3);
}

TEST(Density, RandomDensityApproachesDeterministic) {
  const NoiseModel model = verify::standard_model(verify::bump_system(), 2, 128);
  const auto h0 = invariant_density(CocycleContext(model.base), 0, 40, 32, 1e-10);
  double prev = INFINITY;
  for (double eps : {0.1, 0.05, 0.025}) {
    const auto h = invariant_density(CocycleContext(model, eps), 0, 40, 32, 1e-10);
    double dist = 0.0;
    for (int i = 0; i < 512; ++i) dist = std::max(dist, std::abs(h(i / 512.0) - h0(i / 512.0)));
    EXPECT_LT(dist, prev) << eps;
    prev = dist;
  }
}

TEST(Density, ImpossibleToleranceThrows) {
  const NoiseModel model = verify::standard_model(doubling_cosine(), 1, 64);
  const CocycleContext ctx(model, 0.05);
  try {
    invariant_density(ctx, 0, 2, 16, 1e-30);
    FAIL() << "expected ResidualTooLarge";
  } catch (const ResidualTooLarge& e) {
    EXPECT_GT(e.achieved(), 1e-30);
  }
}

TEST(Peripheral, DoublingCosine) {
  const auto verdicts = peripheral_check(doubling_cosine(), {0, 1, 2, 3, 4, 5, 6, 7, 8}, 3.0, 32);
  ASSERT_EQ(verdicts.size(), 9u);
  EXPECT_NEAR(verdicts[0].radius, 1.0, 1e-10);
  EXPECT_GT(verdicts[0].simplicity_margin, 0.1);
  for (std::size_t i = 1; i < verdicts.size(); ++i) {
    EXPECT_LT(verdicts[i].radius, 1.0);
    EXPECT_FALSE(verdicts[i].suspect_cohomologous);
  }
}

TEST(Peripheral, ConstantCeilingIsFlagged) {
  const SkewProductSystem sys(2, CircleDiffeo(), Ceiling(TrigPolynomial::constant_term(0.7)));
  for (const auto& v : peripheral_check(sys, {1, 2, 3}, 3.0, 32)) {
    EXPECT_NEAR(v.radius, 1.0, 1e-10);
    EXPECT_TRUE(v.suspect_cohomologous);
  }
}

TEST(Peripheral, CoboundaryIsFlagged) {
  // sin(4 pi x) - sin(2 pi x) = phi o E - phi with phi = sin(2 pi x).
  const TrigPolynomial tau(0.0, {0.0, 0.0}, {-1.0, 1.0});
  const SkewProductSystem sys(2, CircleDiffeo(), Ceiling(tau));
  for (const auto& v : peripheral_check(sys, {1, 2}, 3.0, 32)) {
    EXPECT_NEAR(v.radius, 1.0, 1e-3);
    EXPECT_TRUE(v.suspect_cohomologous);
  }
}
