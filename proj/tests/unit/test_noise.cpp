#include <gtest/gtest.h>

#include <cmath>

#include "skewlab/cocycle.hpp"
#include "skewlab/error.hpp"
#include "skewlab/verify/oracles.hpp"

using namespace skewlab;

namespace {

SkewProductSystem doubling() { return SkewProductSystem(2, CircleDiffeo(), Ceiling()); }

PerturbationFamily map_only() { return {{TrigPolynomial::sine(1, 1.0 / kTwoPi)}, {}}; }

}  // namespace

TEST(NoisePath, Deterministic) {
  const NoisePath a = sample_path(1, 4, 2);
  const NoisePath b = sample_path(1, 4, 2);
  for (long j = -4; j <= 4; ++j)
    for (int i = 0; i < 2; ++i) EXPECT_EQ(a.symbol(j)[i], b.symbol(j)[i]);
  const NoisePath c = sample_path(2, 4, 2);
  EXPECT_NE(a.symbol(0)[0], c.symbol(0)[0]);
}

TEST(NoisePath, RangeAndMean) {
  const NoisePath p = sample_path(99, 25000, 2);
  double sum = 0.0;
  long count = 0;
  for (long j = p.lo(); j <= p.hi(); ++j)
    for (double v : p.symbol(j)) {
      ASSERT_GE(v, -1.0);
      ASSERT_LE(v, 1.0);
      sum += v;
      ++count;
    }
  EXPECT_GE(count, 100000);
  EXPECT_LT(std::abs(sum / count), 0.02);
}

TEST(NoisePath, ShiftIsIndexShift) {
  const NoisePath p = sample_path(5, 16, 2);
  const NoisePath q = p.shifted(3);
  EXPECT_EQ(q.lo(), p.lo() - 3);
  EXPECT_EQ(q.hi(), p.hi() - 3);
  for (long j = q.lo(); j <= q.hi(); ++j)
    for (int i = 0; i < 2; ++i) EXPECT_EQ(q.symbol(j)[i], p.symbol(j + 3)[i]);
  EXPECT_THROW(p.symbol(17), WindowExhausted);

  const SkewProductSystem base = doubling_cosine();
  const PerturbationFamily fam = verify::standard_family();
  for (long j = -5; j <= 5; ++j)
    EXPECT_EQ(realize_system(base, fam, p, j + 1, 0.05), realize_system(base, fam, p.shifted(1), j, 0.05));
}

TEST(Realize, ZeroEpsIsBase) {
  const SkewProductSystem base = doubling_cosine();
  const NoisePath p = sample_path(1, 8, 2);
  EXPECT_EQ(realize_system(base, verify::standard_family(), p, 3, 0.0), base);
}

TEST(Realize, ClosedFormMinimum) {
  const std::vector<double> up{1.0};
  const SkewProductSystem s = realize_symbol(doubling(), map_only(), up, 0.1, 1.5);
  EXPECT_NEAR(s.lambda_floor(), 1.8, 1e-12);
  EXPECT_THROW(realize_symbol(doubling(), map_only(), up, 0.3, 1.5), ExpansionLost);
}

TEST(EpsilonFloor, ClosedForm) {
  const double eps0 = epsilon_floor(map_only(), doubling(), 1.5, 64);
  EXPECT_NEAR(eps0, 0.25, 1e-5);
  EXPECT_LE(eps0, 0.25);
  EXPECT_EQ(epsilon_floor(PerturbationFamily{}, doubling(), 1.5, 8), 1.0);
  EXPECT_NEAR(epsilon_floor(verify::standard_family(), doubling_cosine(), 1.5, 64), 0.25, 1e-5);
}

TEST(EpsilonFloor, MoreTrialsNeverIncrease) {
  const PerturbationFamily fam{{TrigPolynomial::sine(1, 0.6 / kTwoPi), TrigPolynomial::cosine(2, 0.4 / (2 * kTwoPi))}, {}};
  double prev = INFINITY;
  for (int trials : {1, 8, 64, 256}) {
    const double e = epsilon_floor(fam, doubling(), 1.5, trials);
    EXPECT_LE(e, prev + 1e-12);
    prev = e;
  }
}

TEST(Realize, HalfFloorRealizationsAreValid) {
  const SkewProductSystem base = doubling_cosine();
  const PerturbationFamily fam = verify::standard_family();
  const double half = 0.5 * epsilon_floor(fam, base, 1.5, 64);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const NoisePath p = sample_path(seed, 50, fam.dimension());
    for (long j = -50; j <= 49; ++j) {
      const SkewProductSystem s = realize_system(base, fam, p, j, half);
      EXPECT_GE(s.lambda_floor(), 1.5);
    }
  }
}

TEST(Realize, SeminormsScaleWithEps) {
  const SkewProductSystem base = doubling_cosine();
  const PerturbationFamily fam = verify::standard_family();
  const NoisePath p = sample_path(7, 32, 2);
  for (int r = 0; r <= 3; ++r) {
    double ratio_max = 0.0;
    for (double eps : {0.1, 0.05, 0.025}) {
      for (long j = -32; j <= 32; ++j) {
        const SkewProductSystem s = realize_system(base, fam, p, j, eps);
        const TrigPolynomial dg = s.g().periodic() + base.g().periodic().scaled(-1.0);
        const TrigPolynomial dt = s.tau().periodic() + base.tau().periodic().scaled(-1.0);
        ratio_max = std::max(ratio_max, (dg.sup_abs(r) + dt.sup_abs(r)) / eps);
      }
    }
    // C_r = sum of the basis C^r norms.
    const double c_r = fam.map_basis[0].coefficient_bound(r) + fam.ceiling_basis[0].coefficient_bound(r);
    EXPECT_LE(ratio_max, c_r + 1e-9);
  }
}
