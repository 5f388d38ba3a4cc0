#include <gtest/gtest.h>

#include <random>

#include "skewlab/cohomology.hpp"
#include "skewlab/verify/oracles.hpp"

using namespace skewlab;

TEST(Oracles, BesselSymmetry) {
  // J_{-n}(x) = (-1)^n J_n(x) and the (-i)^m prefactor make entries at m and -m conjugate-related.
  for (int nu : {1, 3}) {
    for (int m = -6; m <= 6; ++m) {
      const cplx a = verify::bessel_adjoint_entry(0, m, nu);
      const cplx b = verify::bessel_adjoint_entry(0, -m, nu);
      EXPECT_NEAR(std::abs(a), std::abs(b), 1e-15);
    }
  }
  EXPECT_NEAR(verify::bessel_adjoint_entry(0, 0, 2).real(), std::cyl_bessel_j(0.0, 2.0), 1e-15);
}

TEST(Oracles, OverlapBruteForceMatchesSort) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-10.0, 10.0), w(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<double, double>> iv;
    const int n = 1 + trial % 64;
    for (int i = 0; i < n; ++i) {
      const double c = trial % 3 == 0 ? std::round(u(rng)) : u(rng);
      const double r = w(rng);
      iv.emplace_back(c - r, c + r);
    }
    EXPECT_EQ(max_overlap_depth(iv), verify::brute_force_overlap(iv));
  }
  // touching endpoints share a point
  EXPECT_EQ(max_overlap_depth({{0.0, 1.0}, {1.0, 2.0}}), 2);
}

TEST(Oracles, StableGraphSeries) {
  const CocycleContext ctx(doubling_cosine());
  for (double x : {0.0, 0.125, 0.5, 0.9}) EXPECT_NEAR(solve_S(ctx, 0, x, 1e-12), verify::doubling_cosine_S(x, 200), 1e-10);
}
