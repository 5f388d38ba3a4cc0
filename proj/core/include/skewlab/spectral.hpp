#pragma once

#include <vector>

#include "skewlab/transfer.hpp"

namespace skewlab {

/// r_m = log(lambda^{-m-1/2} k^{1/2}).
inline double essential_radius_log(double lambda, int k, double m) {
  return -(m + 0.5) * std::log(lambda) + 0.5 * std::log(static_cast<double>(k));
}

struct Eigenvalue {
  cplx value;
  bool resonance = false;  // outside e^{r_m} + tol and stable across the ladder
  double drift = 0.0;      // distance to the matched eigenvalue on the previous level (or -1)
};

struct SpectralLevel {
  int cutoff = 0;
  long points = 0;
  bool solver_ok = true;
  std::vector<cplx> eigenvalues;  // sorted by decreasing modulus
};

struct SpectralReport {
  int nu = 0;
  double m = 0.0;
  double lambda = 0.0;
  double r_m = 0.0;
  double stab_tol = 0.0;
  std::vector<SpectralLevel> levels;
  std::vector<Eigenvalue> finest;  // eigenvalues at the last ladder level with flags
  bool solver_ok = true;

  std::vector<cplx> resonances() const;
  double spectral_radius() const;
};

/// Eigenvalues of W M*_nu W^{-1} (Sobolev weights of order m) per ladder level. lambda <= 0
/// selects (lambda_0 + 1)/2.
SpectralReport resonances(const SkewProductSystem& sys, int nu, double m, const std::vector<int>& ladder,
                          double stab_tol = 1e-4, double lambda = 0.0);

struct LyapunovEstimate {
  double slope = 0.0;               // mean over samples
  double spread = 0.0;              // max - min of per-sample slopes
  double residual = 0.0;            // max rms fit residual
  std::vector<double> per_sample;   // slopes
  std::vector<std::vector<double>> log_norms;  // [sample][n-1], n = 1..n_max
};

/// Least-squares slope of log ||M*_{nu,n}(omega_s)||_W over n = 2..n_max for samples
/// omega_s = theta^{s n_max} omega.
LyapunovEstimate lyapunov(const CocycleContext& ctx, int nu, const WeightScheme& scheme, int cutoff,
                          int n_max, int samples);

struct DensityResult {
  FrequencyGrid grid;
  CVector coefficients;  // hat h(a), a = -cutoff..cutoff
  double residual = 0.0;
  int depth = 0;
  double integral = 0.0;
  double min_value = 0.0;

  double operator()(double x) const;
};

/// h_eps(theta^j omega) = M*_{0,d}(theta^{j-d} omega) 1 at the smallest depth d <= n_pullback whose
/// residual ||M*_0(theta^j omega) h(theta^j omega) - h(theta^{j+1} omega)||_2 is <= tol.
DensityResult invariant_density(const CocycleContext& ctx, long j, int n_pullback, int cutoff,
                                double tol);

struct PeripheralVerdict {
  int nu = 0;
  double radius = 0.0;
  double second_modulus = 0.0;  // nu = 0 only
  double simplicity_margin = 0.0;
  bool suspect_cohomologous = false;
};

std::vector<PeripheralVerdict> peripheral_check(const SkewProductSystem& sys, const std::vector<int>& nus,
                                                double m, int cutoff);

}  // namespace skewlab
