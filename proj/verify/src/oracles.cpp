#include "skewlab/verify/oracles.hpp"

#include <cmath>

namespace skewlab::verify {

cplx bessel_adjoint_entry(int b, int a, int nu) {
  const int m = a - 2 * b;
  const int am = std::abs(m);
  double j = std::cyl_bessel_j(static_cast<double>(am), static_cast<double>(nu));
  if (m < 0 && (am % 2) == 1) j = -j;
  static const cplx kPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^r
  return kPow[((m % 4) + 4) % 4] * j;
}

cplx direct_correlation(const CocycleContext& ctx, long j0, int n, const Observable2D& phi,
                        const Observable2D& psi, const DensityResult& h_end, const DensityResult* h_start,
                        int points) {
  const double dx = 1.0 / points;
  cplx cross{};
  cplx psi_mass{};
  double phi_mass_re = 0.0, phi_mass_im = 0.0;
  for (int ix = 0; ix < points; ++ix) {
    const double x = ix * dx;
    const ForwardJet f = compose_forward(ctx, j0, n, x);
    const double w = h_start ? (*h_start)(x) : 1.0;
    const double shift = f.tau / kTwoPi;
    const double he = h_end(x);
    for (int is = 0; is < points; ++is) {
      const double s = is * dx;
      const cplx ps = std::conj(psi(x, s)) * w;
      cross += phi(wrap_unit(f.x), s + shift) * ps;
      psi_mass += ps;
      const cplx ph = phi(x, s) * he;
      phi_mass_re += ph.real();
      phi_mass_im += ph.imag();
    }
  }
  const double area = dx * dx;
  return cross * area - cplx(phi_mass_re, phi_mass_im) * area * (psi_mass * area);
}

int brute_force_overlap(const std::vector<std::pair<double, double>>& intervals) {
  int best = 0;
  for (const auto& [lo, hi] : intervals) {
    int c = 0;
    for (const auto& [l2, h2] : intervals) c += (l2 <= lo && lo <= h2) ? 1 : 0;
    best = std::max(best, c);
  }
  return best;
}

double doubling_cosine_S(double x, int terms) {
  double s = 0.0;
  double scale = 1.0;
  double xi = x;
  for (int i = 1; i <= terms; ++i) {
    xi *= 0.5;
    scale *= 0.5;
    s += kTwoPi * std::sin(kTwoPi * xi) * scale;
  }
  return s;
}

std::vector<NamedSystem> test_systems() {
  std::vector<NamedSystem> out;
  out.push_back({"doubling", SkewProductSystem(2, CircleDiffeo(TrigPolynomial()), Ceiling(TrigPolynomial()))});
  out.push_back({"doubling+cosine", doubling_cosine()});
  out.push_back({"bump", bump_system()});
  out.push_back({"tripling+trig",
                 SkewProductSystem(3, CircleDiffeo(TrigPolynomial(0.05, {0.0}, {0.03})),
                                   Ceiling(TrigPolynomial(0.2, {0.5, 0.0}, {0.0, 0.25})))});
  out.push_back({"doubling+winding",
                 SkewProductSystem(2, CircleDiffeo(TrigPolynomial()), Ceiling(TrigPolynomial::sine(1, 0.3), 1))});
  return out;
}

PerturbationFamily standard_family() {
  return {{TrigPolynomial::sine(1, 1.0 / kTwoPi)}, {TrigPolynomial::sine(1)}};
}

NoiseModel standard_model(const SkewProductSystem& base, std::uint64_t seed, int J) {
  const PerturbationFamily f = standard_family();
  return {base, f, sample_path(seed, J, f.dimension())};
}

SkewProductSystem bump_system() {
  return SkewProductSystem(2, CircleDiffeo(TrigPolynomial::sine(1, 0.1 / kTwoPi)), Ceiling(TrigPolynomial::cosine(1)));
}

Observable2D smooth_observable(int nu_max, int degree, int variant) {
  Observable2D o;
  o.degree = degree;
  for (int nu = -nu_max; nu <= nu_max; ++nu)
    for (int a = -degree; a <= degree; ++a) {
      const double scale = 1.0 / ((1.0 + std::abs(nu)) * (1.0 + a * a));
      const cplx c = variant == 0 ? cplx(scale, 0.25 * scale * a)
                                  : cplx(scale * (a >= 0 ? 1.0 : -0.5), 0.5 * scale * nu);
      o.set(nu, a, c);
    }
  return o;
}

Observable2D analytic_observable(int nu_max, int degree) {
  Observable2D o;
  o.degree = degree;
  for (int nu = -nu_max; nu <= nu_max; ++nu)
    for (int a = -degree; a <= degree; ++a) o.set(nu, a, std::exp(-std::abs(nu) - std::abs(a)));
  return o;
}

}  // namespace skewlab::verify
