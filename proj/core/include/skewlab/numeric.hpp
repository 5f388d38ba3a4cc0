#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace skewlab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Minimum of a smooth 1-periodic function: dense sampling, then golden-section
/// refinement around the best sample.
template <class F>
double periodic_minimum(const F& f, int samples = 4096) {
  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i < samples; ++i) {
    const double v = f(static_cast<double>(i) / samples);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double h = 1.0 / samples;
  double a = (best - 1) * h;
  double b = (best + 1) * h;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return std::min({best_val, fc, fd});
}

template <class F>
double periodic_maximum(const F& f, int samples = 4096) {
  return -periodic_minimum([&](double x) { return -f(x); }, samples);
}

/// Eigenvalues of a general complex matrix (LAPACK zgeev with balancing).
/// Returns false if the solver reports failure.
bool general_eigenvalues(const CMatrix& a, std::vector<cplx>& out);

/// Eigenvalues and right eigenvectors (columns of vectors).
bool general_eigensystem(const CMatrix& a, std::vector<cplx>& values, CMatrix& vectors);

/// Largest singular value.
double spectral_norm(const CMatrix& a);

/// Largest eigenvalue of a Hermitian positive semi-definite operator given by its action,
/// by Lanczos with full reorthogonalisation.
struct LanczosResult {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};
LanczosResult lanczos_largest(const std::function<void(const CVector&, CVector&)>& apply, int dim,
                              double tol = 1e-13, int max_iter = 200, unsigned seed = 7);

/// Maximum number of closed intervals [lo_i, hi_i] sharing a common point.
int max_overlap_depth(std::vector<std::pair<double, double>> intervals);

/// Ordinary least squares y = a + b x.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms_residual = 0.0;
  double max_residual = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Minimum-cost assignment between two point sets in the complex plane
/// (Hungarian algorithm). Returns for each a-index the matched b-index or -1.
std::vector<int> match_points(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Splitmix64 finaliser; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace skewlab
