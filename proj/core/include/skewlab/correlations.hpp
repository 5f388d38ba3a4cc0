#pragma once

#include <map>
#include <vector>

#include "skewlab/spectral.hpp"

namespace skewlab {

/// phi(x, s) = sum_nu phi_nu(x) e^{2 pi i nu s}, phi_nu(x) = sum_{|a| <= degree} c_{nu,a} e^{2 pi i a x}.
struct Observable2D {
  int degree = 0;
  std::map<int, std::vector<cplx>> modes;  // nu -> coefficients at a + degree

  int nu_max() const;
  cplx mode(int nu, double x) const;
  cplx operator()(double x, double s) const;
  /// Coefficients of phi_nu on a frequency grid (zero outside the support, truncated beyond the cutoff).
  CVector on_grid(int nu, const FrequencyGrid& grid) const;
  void set(int nu, int a, cplx value);
};

/// Cached per-step matrices and densities along one noise path.
class CorrelationEngine {
 public:
  CorrelationEngine(const CocycleContext& ctx, int cutoff, int n_pullback = 40, double density_tol = 1e-8);

  cplx cor_op(long j0, int n, const Observable2D& phi, const Observable2D& psi);
  /// cor_op with psi_nu replaced by h(omega) psi_nu.
  cplx cor_cl(long j0, int n, const Observable2D& phi, const Observable2D& psi);

  /// Values for n = 0..n_max.
  std::vector<cplx> series_op(long j0, int n_max, const Observable2D& phi, const Observable2D& psi);
  std::vector<cplx> series_cl(long j0, int n_max, const Observable2D& phi, const Observable2D& psi);

  const DensityResult& density(long j);
  const FrequencyGrid& grid(int nu);
  int cutoff() const { return cutoff_; }

  /// psi with each mode multiplied by h(theta^j omega), truncated to the cutoff.
  Observable2D weighted_by_density(long j, const Observable2D& psi);

 private:
  const CMatrix& step(int nu, long j);
  std::vector<cplx> series(long j0, int n_max, const Observable2D& phi, const Observable2D& psi);

  const CocycleContext* ctx_;
  int cutoff_;
  int n_pullback_;
  double density_tol_;
  std::map<int, FrequencyGrid> grids_;
  std::map<std::pair<int, long>, CMatrix> steps_;
  std::map<long, DensityResult> densities_;
};

cplx cor_op(const CocycleContext& ctx, long j0, int n, const Observable2D& phi, const Observable2D& psi,
            int cutoff = 32);
cplx cor_cl(const CocycleContext& ctx, long j0, int n, const Observable2D& phi, const Observable2D& psi,
            int cutoff = 32);

struct DecayFit {
  double rho = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // rms of log residuals
  double slack = 0.0;     // max log residual; |Cor(n)| <= c rho^n e^{slack}
  int n_lo = 0;
  int n_hi = 0;
};

/// Least squares on log max(|Cor(n)|, 1e-14) for n in [n_lo, n_hi].
DecayFit fit_decay(const std::vector<cplx>& series, int n_lo = 2, int n_hi = -1);

}  // namespace skewlab
