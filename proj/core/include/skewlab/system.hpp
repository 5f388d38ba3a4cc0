#pragma once

#include "skewlab/trig.hpp"

namespace skewlab {

/// Orientation-preserving circle diffeomorphism on the lift: g(x) = x + p(x).
class CircleDiffeo {
 public:
  CircleDiffeo() = default;
  explicit CircleDiffeo(TrigPolynomial periodic);

  const TrigPolynomial& periodic() const { return p_; }
  double operator()(double x) const { return x + p_(x); }
  double derivative(double x) const { return 1.0 + p_.derivative(x, 1); }
  double min_derivative() const { return min_dg_; }
  /// Solves g(x) = y to |g(x) - y| <= tol.
  double inverse(double y, double tol = 1e-12) const;
  bool is_identity_up_to_shift() const { return p_.is_constant(); }

  bool operator==(const CircleDiffeo& o) const { return p_ == o.p_; }

 private:
  TrigPolynomial p_;
  double min_dg_ = 1.0;
};

/// Ceiling function with integer winding w: tau(x) = 2 pi w x + periodic(x).
/// w = 0 is the circle-valued case; w != 0 represents affine lifts.
class Ceiling {
 public:
  Ceiling() = default;
  Ceiling(TrigPolynomial periodic, int winding = 0) : p_(std::move(periodic)), winding_(winding) {}

  const TrigPolynomial& periodic() const { return p_; }
  int winding() const { return winding_; }
  double operator()(double x) const { return kTwoPi * winding_ * x + p_(x); }
  double derivative(double x) const { return kTwoPi * winding_ + p_.derivative(x, 1); }
  double second_derivative(double x) const { return p_.derivative(x, 2); }
  bool is_constant() const { return winding_ == 0 && p_.is_constant(); }
  /// sup_x |tau'(x)|.
  double derivative_sup() const;

  bool operator==(const Ceiling& o) const = default;

 private:
  TrigPolynomial p_;
  int winding_ = 0;
};

struct ExpandingValue {
  double value;
  double derivative;
};

/// Skew product f(x, s) = (E(x) mod 1, s + tau(x)/(2 pi) mod 1), E = k g.
class SkewProductSystem {
 public:
  SkewProductSystem(int k, CircleDiffeo g, Ceiling tau);

  int k() const { return k_; }
  const CircleDiffeo& g() const { return g_; }
  const Ceiling& tau() const { return tau_; }
  /// min_x E'(x).
  double lambda_floor() const { return lambda_floor_; }
  /// E' constant (g = x + const).
  bool is_linear() const { return g_.is_identity_up_to_shift(); }

  ExpandingValue eval_expanding(double x) const {
    return {k_ * g_(x), k_ * g_.derivative(x)};
  }
  /// G(y) = g^{-1}(y / k).
  double invert_expanding(double y, double tol = 1e-12) const;

  bool operator==(const SkewProductSystem& o) const {
    return k_ == o.k_ && g_ == o.g_ && tau_ == o.tau_;
  }

 private:
  int k_;
  CircleDiffeo g_;
  Ceiling tau_;
  double lambda_floor_;
};

/// Doubling map with ceiling amplitude * cos(2 pi x).
SkewProductSystem doubling_cosine(double amplitude = 1.0);

}  // namespace skewlab
