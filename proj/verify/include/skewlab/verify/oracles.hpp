#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skewlab/correlations.hpp"

namespace skewlab::verify {

/// Jacobi-Anger value of the adjoint entry (b, a) for E = 2x, tau = cos(2 pi x):
/// (-i)^{a-2b} J_{a-2b}(nu).
cplx bessel_adjoint_entry(int b, int a, int nu);

/// Direct tensor-grid quadrature on T^2 of
///   int phi o f^(n) conj(psi) w dx ds - int phi h_end dx * conj(int psi w dx ds)
/// with w = h_start when given (classical correlation) and w = 1 otherwise.
cplx direct_correlation(const CocycleContext& ctx, long j0, int n, const Observable2D& phi,
                        const Observable2D& psi, const DensityResult& h_end,
                        const DensityResult* h_start = nullptr, int points = 256);

/// O(N^2) maximum overlap: for every left endpoint count the intervals containing it.
int brute_force_overlap(const std::vector<std::pair<double, double>>& intervals);

/// S(x) for the doubling+cosine system from the series -sum_{i>=1} tau'(x 2^{-i}) 2^{-i},
/// truncated after `terms` terms.
double doubling_cosine_S(double x, int terms);

struct NamedSystem {
  std::string name;
  SkewProductSystem system;
};

/// Systems used for structural checks: linear and nonlinear, k = 2 and 3, with and without winding.
std::vector<NamedSystem> test_systems();

/// Map perturbation sin(2 pi x)/(2 pi) and ceiling perturbation sin(2 pi x).
PerturbationFamily standard_family();

NoiseModel standard_model(const SkewProductSystem& base, std::uint64_t seed = 1, int J = 256);

/// g(x) = x + 0.1 sin(2 pi x)/(2 pi), k = 2, tau = cos(2 pi x).
SkewProductSystem bump_system();

/// Smooth observable with modes |nu| <= nu_max and x-degree `degree`; variant selects coefficients.
Observable2D smooth_observable(int nu_max, int degree, int variant);

/// c_{nu,a} = exp(-|nu| - |a|) for |nu| <= nu_max, |a| <= degree.
Observable2D analytic_observable(int nu_max, int degree);

}  // namespace skewlab::verify
