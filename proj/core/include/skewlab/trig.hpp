#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace skewlab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Real trigonometric polynomial
///   p(x) = c0 + sum_{j=1}^{d} (a_j cos(2 pi j x) + b_j sin(2 pi j x)).
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static TrigPolynomial constant_term(double c) { return {c, {}, {}}; }
  static TrigPolynomial cosine(int harmonic, double amplitude = 1.0);
  static TrigPolynomial sine(int harmonic, double amplitude = 1.0);

  int degree() const { return static_cast<int>(cos_.size()); }
  double constant() const { return c0_; }
  double cos_coeff(int j) const { return cos_[j - 1]; }
  double sin_coeff(int j) const { return sin_[j - 1]; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

  /// True when every non-constant coefficient vanishes.
  bool is_constant() const;

  double operator()(double x) const { return derivative(x, 0); }
  /// order-th derivative, order >= 0.
  double derivative(double x, int order) const;

  struct Jet {
    double value;
    double d1;
    double d2;
  };
  Jet jet(double x) const;

  /// sum over j of (2 pi j)^order (|a_j| + |b_j|), plus |c0| for order 0.
  double coefficient_bound(int order) const;

  /// Sup of |p^(order)| by dense sampling refined by golden-section search.
  double sup_abs(int order) const;

  /// Complex Fourier coefficients p_hat[q] for q = -d..d, stored at index q + d.
  std::vector<std::complex<double>> fourier() const;

  TrigPolynomial operator+(const TrigPolynomial& other) const;
  TrigPolynomial scaled(double s) const;

  bool operator==(const TrigPolynomial& other) const = default;

 private:
  void trim();

  double c0_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace skewlab
