#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "skewlab/cocycle.hpp"
#include "skewlab/error.hpp"
#include "skewlab/verify/oracles.hpp"

using namespace skewlab;

namespace {

SkewProductSystem linear_cos() {
  return SkewProductSystem(2, CircleDiffeo(TrigPolynomial()), Ceiling(TrigPolynomial::cosine(1)));
}

// Bisection root of k g(x) = y on [y/k - 1, y/k + 1].
double bisect_inverse(const SkewProductSystem& sys, double y) {
  double lo = y / sys.k() - 1.0, hi = y / sys.k() + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (sys.eval_expanding(mid).value < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(TrigPolynomial, PeriodicAndDerivatives) {
  const TrigPolynomial p(0.3, {0.5, -0.2, 0.1}, {0.25, 0.0, -0.4});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    EXPECT_NEAR(p(x + 1.0), p(x), 1e-13);
    const double h = 1e-5;
    EXPECT_NEAR(p.derivative(x, 1), (p(x + h) - p(x - h)) / (2 * h), 1e-6);
    EXPECT_NEAR(p.derivative(x, 2), (p.derivative(x + h, 1) - p.derivative(x - h, 1)) / (2 * h), 1e-5);
    const auto jet = p.jet(x);
    EXPECT_DOUBLE_EQ(jet.value, p(x));
    EXPECT_DOUBLE_EQ(jet.d1, p.derivative(x, 1));
  }
}

TEST(TrigPolynomial, FourierCoefficients) {
  const TrigPolynomial p(0.3, {0.5}, {0.25});
  const auto c = p.fourier();
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[1].real(), 0.3, 1e-15);
  EXPECT_NEAR(c[2].real(), 0.25, 1e-15);
  EXPECT_NEAR(c[2].imag(), -0.125, 1e-15);
  EXPECT_NEAR(c[0].imag(), 0.125, 1e-15);
}

TEST(CircleDiffeo, RejectsNonMonotone) {
  EXPECT_THROW(CircleDiffeo(TrigPolynomial::sine(1, 0.2)), InvalidArgument);
  EXPECT_NO_THROW(CircleDiffeo(TrigPolynomial::sine(1, 0.1)));
}

TEST(SkewProductSystem, RejectsNonExpanding) {
  EXPECT_THROW(SkewProductSystem(2, CircleDiffeo(TrigPolynomial::sine(1, 0.1)), Ceiling()), InvalidArgument);
  EXPECT_THROW(SkewProductSystem(1, CircleDiffeo(), Ceiling()), InvalidArgument);
}

TEST(SkewProductSystem, EvalExpanding) {
  const SkewProductSystem lin = linear_cos();
  EXPECT_DOUBLE_EQ(lin.eval_expanding(0.25).value, 0.5);
  EXPECT_DOUBLE_EQ(lin.eval_expanding(0.25).derivative, 2.0);
  EXPECT_DOUBLE_EQ(lin.eval_expanding(1.25).value, 2.5);
  const SkewProductSystem bump = verify::bump_system();
  EXPECT_NEAR(bump.eval_expanding(0.0).value, 0.0, 1e-15);
  EXPECT_NEAR(bump.eval_expanding(0.0).derivative, 2.2, 1e-14);
  EXPECT_NEAR(bump.lambda_floor(), 1.8, 1e-12);
}

TEST(SkewProductSystem, InvertExpanding) {
  const SkewProductSystem lin = linear_cos();
  EXPECT_DOUBLE_EQ(lin.invert_expanding(0.5), 0.25);
  EXPECT_DOUBLE_EQ(lin.invert_expanding(2.5), 1.25);
  const SkewProductSystem bump = verify::bump_system();
  const double x = bump.invert_expanding(1.0, 1e-12);
  EXPECT_NEAR(x, bisect_inverse(bump, 1.0), 1e-12);
  EXPECT_NEAR(bump.eval_expanding(x).value, 1.0, 1e-12);
}

TEST(SkewProductSystem, LiftIdentities) {
  const SkewProductSystem sys = verify::test_systems()[3].system;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    for (int l : {-2, 1, 3}) {
      EXPECT_NEAR(sys.g()(x + l), sys.g()(x) + l, 1e-12);
      EXPECT_NEAR(sys.eval_expanding(x + l).value, sys.eval_expanding(x).value + sys.k() * l, 1e-12);
      EXPECT_NEAR(sys.invert_expanding(x + sys.k() * l), sys.invert_expanding(x) + l, 1e-12);
    }
  }
}

TEST(Cocycle, ForwardExamples) {
  const CocycleContext ctx(linear_cos());
  const ForwardJet id = compose_forward(ctx, 0, 0, 0.37);
  EXPECT_EQ(id.x, 0.37);
  EXPECT_EQ(id.tau, 0.0);
  EXPECT_EQ(id.dx, 1.0);
  const ForwardJet two = compose_forward(ctx, 0, 2, 0.0);
  EXPECT_NEAR(two.x, 0.0, 1e-15);
  EXPECT_NEAR(two.tau, 2.0, 1e-15);
  EXPECT_NEAR(two.dx, 4.0, 1e-15);
}

TEST(Cocycle, ForwardSplice) {
  const CocycleContext ctx(verify::standard_model(verify::bump_system()), 0.02);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng);
    const long j = static_cast<long>(i % 7) - 3;
    const ForwardJet whole = compose_forward(ctx, j, 5, x);
    const ForwardJet head = compose_forward(ctx, j, 2, x);
    const ForwardJet tail = compose_forward(ctx, j + 2, 3, head.x);
    EXPECT_NEAR(whole.x, tail.x, 1e-12);
    EXPECT_NEAR(whole.tau, head.tau + tail.tau, 1e-12);
    EXPECT_NEAR(whole.dx, head.dx * tail.dx, 1e-10);
  }
}

TEST(Cocycle, BackwardExamples) {
  const CocycleContext ctx(linear_cos());
  const BackwardJet b = compose_backward(ctx, 0, 3, 0.0);
  EXPECT_DOUBLE_EQ(b.x, 0.0);
  EXPECT_DOUBLE_EQ(b.dx, 0.125);

  const SkewProductSystem bump = verify::bump_system();
  const CocycleContext det(bump);
  for (int i = 0; i < 100; ++i)
    for (int n : {1, 3, 6}) EXPECT_LE(compose_backward(det, 0, n, i / 100.0).dx, std::pow(bump.lambda_floor(), -n) * (1 + 1e-12));
}

TEST(Cocycle, BackwardRoundTripAndDerivative) {
  const CocycleContext ctx(verify::standard_model(verify::bump_system()), 0.02);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng);
    const BackwardJet b = compose_backward(ctx, 4, 4, x);
    EXPECT_NEAR(compose_forward(ctx, 4, 4, b.x).x, x, 1e-10);
    EXPECT_GT(b.dx, 0.0);
    EXPECT_LE(b.dx, std::pow(ctx.lambda(), -4));
    const double h = 1e-6;
    const double fd = (compose_backward(ctx, 4, 4, x + h).x - compose_backward(ctx, 4, 4, x - h).x) / (2 * h);
    EXPECT_NEAR(fd / b.dx, 1.0, 1e-6);
  }
}

TEST(Cocycle, SkewApply) {
  const CocycleContext ctx(linear_cos());
  const TorusPoint p = skew_apply(ctx, 0, 0, {0.3, 0.7});
  EXPECT_EQ(p.x, 0.3);
  EXPECT_EQ(p.s, 0.7);
  const TorusPoint q = skew_apply(ctx, 0, 1, {0.0, 0.0});
  EXPECT_NEAR(q.x, 0.0, 1e-15);
  EXPECT_NEAR(q.s, 1.0 / kTwoPi, 1e-15);

  const CocycleContext noisy(verify::standard_model(doubling_cosine()), 0.05);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const TorusPoint z{u(rng), u(rng)};
    const TorusPoint a = skew_apply(noisy, 1, 5, z);
    const TorusPoint b = skew_apply(noisy, 3, 3, skew_apply(noisy, 1, 2, z));
    const auto circ = [](double d) { return std::abs(d - std::round(d)); };
    EXPECT_LT(circ(a.x - b.x), 1e-12);
    EXPECT_LT(circ(a.s - b.s), 1e-12);
  }
}

TEST(Cocycle, WindowExhaustion) {
  const CocycleContext ctx(verify::standard_model(doubling_cosine(), 1, 8), 0.01);
  EXPECT_NO_THROW(ctx.at(8));
  EXPECT_THROW(ctx.at(9), WindowExhausted);
  EXPECT_THROW(compose_forward(ctx, 5, 6, 0.1), WindowExhausted);
  const CocycleContext det(doubling_cosine());
  EXPECT_NO_THROW(det.at(100000));
}

TEST(Cocycle, ExpansionTarget) {
  const CocycleContext ctx(verify::standard_model(doubling_cosine()), 0.1);
  EXPECT_DOUBLE_EQ(ctx.lambda(), 1.5);
  for (long j = -20; j <= 20; ++j) EXPECT_GE(ctx.at(j).lambda_floor(), ctx.lambda());
}
