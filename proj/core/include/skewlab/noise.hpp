#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "skewlab/system.hpp"

namespace skewlab {

/// Two-sided i.i.d. uniform symbols omega_j in [-1,1]^d for j = -J..J.
/// shifted(m) is the path theta^m omega; storage is shared.
class NoisePath {
 public:
  NoisePath() = default;

  std::uint64_t seed() const { return seed_; }
  int half_width() const { return half_width_; }
  int dimension() const { return dim_; }
  int offset() const { return offset_; }
  /// Valid indices j are lo() <= j <= hi().
  long lo() const { return -static_cast<long>(half_width_) - offset_; }
  long hi() const { return static_cast<long>(half_width_) - offset_; }
  bool contains(long j) const { return j >= lo() && j <= hi(); }

  std::span<const double> symbol(long j) const;
  NoisePath shifted(int m) const;

  friend NoisePath sample_path(std::uint64_t seed, int J, int d);

 private:
  std::uint64_t seed_ = 0;
  int half_width_ = 0;
  int dim_ = 0;
  int offset_ = 0;
  std::shared_ptr<const std::vector<double>> data_;
};

NoisePath sample_path(std::uint64_t seed, int J, int d);

/// Additive perturbation directions: g_eps = g_0 + eps sum omega_i u_i,
/// tau_eps = tau_0 + eps sum omega_{p+i} v_i.
struct PerturbationFamily {
  std::vector<TrigPolynomial> map_basis;
  std::vector<TrigPolynomial> ceiling_basis;

  int dimension() const { return static_cast<int>(map_basis.size() + ceiling_basis.size()); }
  bool empty() const { return map_basis.empty() && ceiling_basis.empty(); }
};

/// lambda = (lambda_0 + 1) / 2.
inline double expansion_target(const SkewProductSystem& base) {
  return 0.5 * (base.lambda_floor() + 1.0);
}

/// Realized system for an explicit symbol vector.
SkewProductSystem realize_symbol(const SkewProductSystem& base, const PerturbationFamily& family,
                                 std::span<const double> omega, double eps, double lambda);

/// f_eps(theta^j omega). Throws ExpansionLost if min E' < lambda(base).
SkewProductSystem realize_system(const SkewProductSystem& base, const PerturbationFamily& family,
                                 const NoisePath& path, long j, double eps);

/// Largest eps on a bisection grid over [0, eps_max] such that every trial realization
/// keeps min E' >= lambda. Trials are the cube vertices (for d <= 12) followed by
/// seeded uniform symbols; more trials can only lower the estimate.
double epsilon_floor(const PerturbationFamily& family, const SkewProductSystem& base, double lambda,
                     int trials, double eps_max = 1.0, double resolution = 1e-6,
                     std::uint64_t seed = 0x5eed);

/// Base system, family and path together; produces contexts for any eps.
struct NoiseModel {
  SkewProductSystem base;
  PerturbationFamily family;
  NoisePath path;
};

}  // namespace skewlab
