#include "skewlab/trig.hpp"

#include <cmath>

#include "skewlab/error.hpp"
#include "skewlab/numeric.hpp"

namespace skewlab {

TrigPolynomial::TrigPolynomial(double constant, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs)
    : c0_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  const std::size_t d = std::max(cos_.size(), sin_.size());
  cos_.resize(d, 0.0);
  sin_.resize(d, 0.0);
  trim();
}

void TrigPolynomial::trim() {
  while (!cos_.empty() && cos_.back() == 0.0 && sin_.back() == 0.0) {
    cos_.pop_back();
    sin_.pop_back();
  }
}

TrigPolynomial TrigPolynomial::cosine(int harmonic, double amplitude) {
  if (harmonic < 1) throw InvalidArgument("harmonic must be >= 1");
  std::vector<double> c(harmonic, 0.0);
  c[harmonic - 1] = amplitude;
  return {0.0, c, {}};
}

TrigPolynomial TrigPolynomial::sine(int harmonic, double amplitude) {
  if (harmonic < 1) throw InvalidArgument("harmonic must be >= 1");
  std::vector<double> s(harmonic, 0.0);
  s[harmonic - 1] = amplitude;
  return {0.0, {}, s};
}

bool TrigPolynomial::is_constant() const { return cos_.empty(); }

double TrigPolynomial::derivative(double x, int order) const {
  double acc = order == 0 ? c0_ : 0.0;
  if (cos_.empty()) return acc;
  // Reduce the argument first so large lifts do not lose phase accuracy.
  const double t = kTwoPi * (x - std::floor(x));
  for (int j = 1; j <= degree(); ++j) {
    const double a = cos_[j - 1];
    const double b = sin_[j - 1];
    if (a == 0.0 && b == 0.0) continue;
    const double w = kTwoPi * j;
    const double c = std::cos(j * t);
    const double s = std::sin(j * t);
    // d^r/dx^r of a cos + b sin cycles through (c, s) -> (-s, c) -> (-c, -s) -> (s, -c).
    double v;
    switch (order % 4) {
      case 0: v = a * c + b * s; break;
      case 1: v = -a * s + b * c; break;
      case 2: v = -a * c - b * s; break;
      default: v = a * s - b * c; break;
    }
    acc += std::pow(w, order) * v;
  }
  return acc;
}

TrigPolynomial::Jet TrigPolynomial::jet(double x) const {
  Jet out{c0_, 0.0, 0.0};
  if (cos_.empty()) return out;
  const double t = kTwoPi * (x - std::floor(x));
  for (int j = 1; j <= degree(); ++j) {
    const double a = cos_[j - 1];
    const double b = sin_[j - 1];
    if (a == 0.0 && b == 0.0) continue;
    const double w = kTwoPi * j;
    const double c = std::cos(j * t);
    const double s = std::sin(j * t);
    out.value += a * c + b * s;
    out.d1 += w * (-a * s + b * c);
    out.d2 += w * w * (-a * c - b * s);
  }
  return out;
}

double TrigPolynomial::coefficient_bound(int order) const {
  double acc = order == 0 ? std::abs(c0_) : 0.0;
  for (int j = 1; j <= degree(); ++j)
    acc += std::pow(kTwoPi * j, order) * (std::abs(cos_[j - 1]) + std::abs(sin_[j - 1]));
  return acc;
}

double TrigPolynomial::sup_abs(int order) const {
  if (cos_.empty()) return order == 0 ? std::abs(c0_) : 0.0;
  const int samples = std::max(4096, 64 * degree());
  const double hi = periodic_maximum([&](double x) { return derivative(x, order); }, samples);
  const double lo = periodic_minimum([&](double x) { return derivative(x, order); }, samples);
  return std::max(std::abs(hi), std::abs(lo));
}

std::vector<std::complex<double>> TrigPolynomial::fourier() const {
  const int d = degree();
  std::vector<std::complex<double>> out(2 * d + 1);
  out[d] = c0_;
  for (int j = 1; j <= d; ++j) {
    // a cos + b sin = (a - i b)/2 e^{i..} + (a + i b)/2 e^{-i..}
    out[d + j] = std::complex<double>(0.5 * cos_[j - 1], -0.5 * sin_[j - 1]);
    out[d - j] = std::complex<double>(0.5 * cos_[j - 1], 0.5 * sin_[j - 1]);
  }
  return out;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& other) const {
  const std::size_t d = std::max(cos_.size(), other.cos_.size());
  std::vector<double> c(d, 0.0), s(d, 0.0);
  for (std::size_t i = 0; i < cos_.size(); ++i) {
    c[i] += cos_[i];
    s[i] += sin_[i];
  }
  for (std::size_t i = 0; i < other.cos_.size(); ++i) {
    c[i] += other.cos_[i];
    s[i] += other.sin_[i];
  }
  return {c0_ + other.c0_, c, s};
}

TrigPolynomial TrigPolynomial::scaled(double f) const {
  std::vector<double> c = cos_, s = sin_;
  for (auto& v : c) v *= f;
  for (auto& v : s) v *= f;
  return {c0_ * f, c, s};
}

}  // namespace skewlab
