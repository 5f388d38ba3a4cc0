#include "skewlab/numeric.hpp"

#include <lapacke.h>

#include <algorithm>
#include <limits>
#include <random>

namespace skewlab {

bool general_eigenvalues(const CMatrix& a, std::vector<cplx>& out) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  out.assign(static_cast<std::size_t>(n), cplx{});
  if (n == 0) return true;
  CMatrix work = a;  // column-major, overwritten by LAPACK
  std::vector<lapack_complex_double> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, reinterpret_cast<lapack_complex_double*>(work.data()),
                    n, w.data(), nullptr, 1, nullptr, 1);
  if (info != 0) return false;
  for (lapack_int i = 0; i < n; ++i) out[i] = reinterpret_cast<const cplx&>(w[i]);
  return true;
}

bool general_eigensystem(const CMatrix& a, std::vector<cplx>& values, CMatrix& vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  values.assign(static_cast<std::size_t>(n), cplx{});
  vectors.resize(n, n);
  if (n == 0) return true;
  CMatrix work = a;
  std::vector<lapack_complex_double> w(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', n, reinterpret_cast<lapack_complex_double*>(work.data()), n,
      w.data(), nullptr, 1, reinterpret_cast<lapack_complex_double*>(vectors.data()), n);
  if (info != 0) return false;
  for (lapack_int i = 0; i < n; ++i) values[i] = reinterpret_cast<const cplx&>(w[i]);
  return true;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

LanczosResult lanczos_largest(const std::function<void(const CVector&, CVector&)>& apply, int dim,
                              double tol, int max_iter, unsigned seed) {
  LanczosResult res;
  if (dim == 0) return res;
  max_iter = std::min(max_iter, dim);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector q(dim);
  for (int i = 0; i < dim; ++i) q(i) = cplx(u(gen), u(gen));
  q.normalize();
  CMatrix basis(dim, max_iter);
  std::vector<double> alpha, beta;
  CVector w(dim);
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    basis.col(it) = q;
    apply(q, w);
    const double a = std::real(q.dot(w));
    alpha.push_back(a);
    // Full reorthogonalisation, twice.
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(it + 1) * (basis.leftCols(it + 1).adjoint() * w);
    const double b = w.norm();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(it + 1, it + 1);
    for (int i = 0; i <= it; ++i) {
      t(i, i) = alpha[i];
      if (i > 0) t(i, i - 1) = t(i - 1, i) = beta[i - 1];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const int top = it;
    const double theta = es.eigenvalues()(top);
    const double ritz_res = b * std::abs(es.eigenvectors()(it, top));
    res.value = theta;
    res.residual = ritz_res;
    res.iterations = it + 1;
    if (ritz_res <= tol * std::max(1.0, std::abs(theta)) ||
        (it > 4 && std::abs(theta - prev) <= 1e-3 * tol * std::max(1.0, std::abs(theta)) &&
         ritz_res <= 1e3 * tol)) {
      break;
    }
    if (b < 1e-300) break;
    prev = theta;
    beta.push_back(b);
    q = w / b;
  }
  return res;
}

int max_overlap_depth(std::vector<std::pair<double, double>> intervals) {
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * intervals.size());
  for (const auto& [lo, hi] : intervals) {
    if (lo > hi) continue;
    events.emplace_back(lo, 0);  // opening sorts before closing at equal coordinates
    events.emplace_back(hi, 1);
  }
  std::sort(events.begin(), events.end());
  int depth = 0;
  int best = 0;
  for (const auto& e : events) {
    if (e.second == 0)
      best = std::max(best, ++depth);
    else
      --depth;
  }
  return best;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit f;
  const std::size_t n = x.size();
  if (n == 0) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
    f.max_residual = std::max(f.max_residual, std::abs(r));
  }
  f.rms_residual = std::sqrt(ss / n);
  return f;
}

std::vector<int> match_points(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const bool transposed = a.size() > b.size();
  const auto& rows = transposed ? b : a;
  const auto& cols = transposed ? a : b;
  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(cols.size());
  std::vector<int> result(a.size(), -1);
  if (n == 0) return result;
  // Hungarian algorithm with potentials, 1-based internally.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = std::abs(rows[i0 - 1] - cols[j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (int j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    if (transposed)
      result[j - 1] = p[j] - 1;
    else
      result[p[j] - 1] = j - 1;
  }
  return result;
}

}  // namespace skewlab
