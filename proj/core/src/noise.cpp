#include "skewlab/noise.hpp"

#include <algorithm>
#include <random>

#include "skewlab/error.hpp"
#include "skewlab/numeric.hpp"

namespace skewlab {

namespace {

// 53 random bits mapped to [-1, 1]; independent of the standard library's distributions.
double to_symbol(std::uint64_t bits) {
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace

NoisePath sample_path(std::uint64_t seed, int J, int d) {
  if (J < 1) throw InvalidArgument("noise window half-width must be >= 1");
  if (d < 0) throw InvalidArgument("noise dimension must be >= 0");
  std::mt19937_64 gen(seed);
  auto data = std::make_shared<std::vector<double>>(static_cast<std::size_t>(2 * J + 1) * d);
  for (auto& v : *data) v = to_symbol(gen());
  NoisePath p;
  p.seed_ = seed;
  p.half_width_ = J;
  p.dim_ = d;
  p.data_ = std::move(data);
  return p;
}

std::span<const double> NoisePath::symbol(long j) const {
  if (!data_ || !contains(j)) throw WindowExhausted(j);
  const long row = j + offset_ + half_width_;
  return {data_->data() + row * dim_, static_cast<std::size_t>(dim_)};
}

NoisePath NoisePath::shifted(int m) const {
  NoisePath p = *this;
  p.offset_ += m;
  return p;
}

SkewProductSystem realize_symbol(const SkewProductSystem& base, const PerturbationFamily& family,
                                 std::span<const double> omega, double eps, double lambda) {
  if (eps < 0.0) throw InvalidArgument("eps must be >= 0");
  if (eps == 0.0 || family.empty()) return base;
  if (static_cast<int>(omega.size()) != family.dimension())
    throw InvalidArgument("symbol dimension does not match the perturbation family");
  TrigPolynomial gp = base.g().periodic();
  TrigPolynomial tp = base.tau().periodic();
  const std::size_t p = family.map_basis.size();
  for (std::size_t i = 0; i < p; ++i) gp = gp + family.map_basis[i].scaled(eps * omega[i]);
  for (std::size_t i = 0; i < family.ceiling_basis.size(); ++i)
    tp = tp + family.ceiling_basis[i].scaled(eps * omega[p + i]);
  const double min_dg = gp.is_constant()
                            ? 1.0
                            : 1.0 + periodic_minimum([&](double x) { return gp.derivative(x, 1); },
                                                     std::max(4096, 64 * gp.degree()));
  const double min_de = base.k() * min_dg;
  if (min_de < lambda) throw ExpansionLost(min_de, lambda);
  return {base.k(), CircleDiffeo{gp}, Ceiling{tp, base.tau().winding()}};
}

SkewProductSystem realize_system(const SkewProductSystem& base, const PerturbationFamily& family,
                                 const NoisePath& path, long j, double eps) {
  if (eps == 0.0 || family.empty()) return base;
  return realize_symbol(base, family, path.symbol(j), eps, expansion_target(base));
}

double epsilon_floor(const PerturbationFamily& family, const SkewProductSystem& base, double lambda,
                     int trials, double eps_max, double resolution, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (family.map_basis.empty()) return eps_max;
  const int d = family.dimension();
  std::vector<std::vector<double>> symbols;
  if (d <= 12) {
    for (std::uint64_t mask = 0; mask < (1ULL << d) && static_cast<int>(symbols.size()) < trials;
         ++mask) {
      std::vector<double> w(d);
      for (int i = 0; i < d; ++i) w[i] = (mask >> i) & 1ULL ? 1.0 : -1.0;
      symbols.push_back(std::move(w));
    }
  }
  std::mt19937_64 gen(seed);
  while (static_cast<int>(symbols.size()) < trials) {
    std::vector<double> w(d);
    for (auto& v : w) v = to_symbol(gen());
    symbols.push_back(std::move(w));
  }
  const auto passes = [&](double eps) {
    for (const auto& w : symbols) {
      try {
        realize_symbol(base, family, w, eps, lambda);
      } catch (const ExpansionLost&) {
        return false;
      } catch (const InvalidArgument&) {
        return false;
      }
    }
    return true;
  };
  if (passes(eps_max)) return eps_max;
  double lo = 0.0;
  double hi = eps_max;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace skewlab
