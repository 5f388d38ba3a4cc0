#include "skewlab/system.hpp"

#include <cmath>

#include "skewlab/error.hpp"
#include "skewlab/numeric.hpp"

namespace skewlab {

CircleDiffeo::CircleDiffeo(TrigPolynomial periodic) : p_(std::move(periodic)) {
  if (!p_.is_constant()) {
    const int samples = std::max(4096, 64 * p_.degree());
    min_dg_ = 1.0 + periodic_minimum([&](double x) { return p_.derivative(x, 1); }, samples);
  }
  if (!(min_dg_ > 0.0))
    throw InvalidArgument("g is not an orientation-preserving diffeomorphism (min g' = " +
                          std::to_string(min_dg_) + ")");
}

double CircleDiffeo::inverse(double y, double tol) const {
  const double shifted = y - p_.constant();
  if (p_.is_constant()) return shifted;
  const double spread = p_.coefficient_bound(0) - std::abs(p_.constant());
  double lo = shifted - spread;
  double hi = shifted + spread;
  double x = shifted;
  for (int it = 0; it < 200; ++it) {
    const auto jet = p_.jet(x);
    const double r = x + jet.value - y;
    if (std::abs(r) <= tol) return x;
    if (r > 0.0)
      hi = std::min(hi, x);
    else
      lo = std::max(lo, x);
    double next = x - r / (1.0 + jet.d1);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4e-16 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  throw InversionFailure("circle inverse did not converge at y = " + std::to_string(y));
}

double Ceiling::derivative_sup() const {
  const double w = kTwoPi * winding_;
  if (p_.is_constant()) return std::abs(w);
  const int samples = std::max(4096, 64 * p_.degree());
  const double hi = periodic_maximum([&](double x) { return p_.derivative(x, 1); }, samples);
  const double lo = periodic_minimum([&](double x) { return p_.derivative(x, 1); }, samples);
  return std::max(std::abs(w + hi), std::abs(w + lo));
}

SkewProductSystem::SkewProductSystem(int k, CircleDiffeo g, Ceiling tau)
    : k_(k), g_(std::move(g)), tau_(std::move(tau)) {
  if (k < 2) throw InvalidArgument("branch count k must be >= 2");
  lambda_floor_ = k_ * g_.min_derivative();
  if (!(lambda_floor_ > 1.0))
    throw InvalidArgument("map is not expanding: min E' = " + std::to_string(lambda_floor_));
}

double SkewProductSystem::invert_expanding(double y, double tol) const {
  return g_.inverse(y / k_, tol / k_);
}

SkewProductSystem doubling_cosine(double amplitude) {
  return {2, CircleDiffeo{}, Ceiling{TrigPolynomial::cosine(1, amplitude)}};
}

}  // namespace skewlab
