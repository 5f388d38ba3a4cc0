#include "skewlab/transfer.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <mutex>

#include "skewlab/error.hpp"
#include "skewlab/parallel.hpp"

namespace skewlab {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW buffer with an estimate-mode plan (deterministic, no timing-based planning).
class Fft {
 public:
  explicit Fft(long n) : n_(n) {
    in_ = fftw_alloc_complex(static_cast<std::size_t>(n));
    out_ = fftw_alloc_complex(static_cast<std::size_t>(n));
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  cplx* input() { return reinterpret_cast<cplx*>(in_); }
  /// Fourier coefficient hat h[q] = (1/N) sum_n h(n/N) e^{-2 pi i q n / N}.
  cplx coefficient(long q) const {
    long r = q % n_;
    if (r < 0) r += n_;
    return cplx(out_[r][0], out_[r][1]) / static_cast<double>(n_);
  }
  void run() { fftw_execute(plan_); }

 private:
  long n_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

// Sampled periodic parts of g and tau on the N trapezoid nodes.
struct Samples {
  std::vector<double> map;      // p_g(y_n), constant included
  std::vector<double> ceiling;  // tau_p(y_n)
  bool map_constant;
};

Samples sample_parts(const SkewProductSystem& sys, long n) {
  Samples s;
  s.map.resize(static_cast<std::size_t>(n));
  s.ceiling.resize(static_cast<std::size_t>(n));
  s.map_constant = sys.g().periodic().is_constant();
  for (long i = 0; i < n; ++i) {
    const double y = static_cast<double>(i) / static_cast<double>(n);
    s.map[i] = sys.g().periodic()(y);
    s.ceiling[i] = sys.tau().periodic()(y);
  }
  return s;
}

double map_bandwidth_factor(const TrigPolynomial& p) {
  double acc = 0.0;
  for (int j = 1; j <= p.degree(); ++j)
    acc += kTwoPi * j * (std::abs(p.cos_coeff(j)) + std::abs(p.sin_coeff(j)));
  return std::max(1.0, acc);
}

double ceiling_bandwidth(const TrigPolynomial& p) {
  double weighted = 0.0;
  for (int j = 1; j <= p.degree(); ++j)
    weighted += j * (std::abs(p.cos_coeff(j)) + std::abs(p.sin_coeff(j)));
  return std::max(p.coefficient_bound(0), weighted);
}

long next_pow2(long n) {
  long p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Calls sink(row, col, value) for every entry; row/col are grid indices.
template <class Sink>
void assemble_into(const SkewProductSystem& sys, int nu, const FrequencyGrid& grid,
                   Direction direction, int threads, Sink&& sink) {
  const long need = required_points(sys, nu, grid.cutoff);
  if (grid.points < need) throw AliasingRisk(grid.points, need);
  const long n = grid.points;
  const int xi = grid.cutoff;
  const int k = sys.k();
  const long shift = static_cast<long>(nu) * sys.tau().winding();
  const Samples s = sample_parts(sys, n);
  // Adjoint: row b uses h_b = exp(-i(2 pi b k p_g + nu tau_p)), entry(b, a) = hat h_b[b k + nu w - a].
  // Forward: column b uses f_b = conj(h_b), entry(a, b) = hat f_b[a - b k - nu w].
  const double sign = direction == Direction::Adjoint ? -1.0 : 1.0;
  const auto fill = [&](Fft& fft, int b) {
    cplx* in = fft.input();
    const double scale = kTwoPi * b * k;
    for (long i = 0; i < n; ++i) {
      const double phase = sign * (scale * s.map[i] + nu * s.ceiling[i]);
      in[i] = cplx(std::cos(phase), std::sin(phase));
    }
    fft.run();
  };
  const auto emit = [&](const Fft& fft, int b, cplx factor) {
    for (int a = -xi; a <= xi; ++a) {
      if (direction == Direction::Adjoint)
        sink(grid.index(b), grid.index(a), factor * fft.coefficient(static_cast<long>(b) * k + shift - a));
      else
        sink(grid.index(a), grid.index(b), factor * fft.coefficient(a - static_cast<long>(b) * k - shift));
    }
  };
  if (s.map_constant) {
    // p_g constant: the b-dependence is the scalar phase exp(-+ i 2 pi b k c0).
    Fft fft(n);
    fill(fft, 0);
    const double c0 = sys.g().periodic().constant();
    for (int b = -xi; b <= xi; ++b) {
      const double ph = sign * kTwoPi * b * k * c0;
      emit(fft, b, cplx(std::cos(ph), std::sin(ph)));
    }
    return;
  }
  const int rows = grid.size();
  threads = std::max(1, std::min(threads <= 0 ? default_threads() : threads, rows));
  const int chunk = (rows + threads - 1) / threads;
  parallel_for(threads, threads, [&](long t) {
    Fft fft(n);
    const int lo = static_cast<int>(t) * chunk;
    const int hi = std::min(rows, lo + chunk);
    for (int r = lo; r < hi; ++r) {
      const int b = grid.frequency(r);
      fill(fft, b);
      emit(fft, b, cplx(1.0, 0.0));
    }
  });
}

constexpr double kPrune = 1e-15;

}  // namespace

long required_points(const SkewProductSystem& sys, int nu, int cutoff) {
  const double tau_band = ceiling_bandwidth(sys.tau().periodic());
  const double map_band = map_bandwidth_factor(sys.g().periodic());
  const long nu_abs = std::abs(nu);
  return 8 * (2L * cutoff + static_cast<long>(std::ceil(nu_abs * (tau_band + 1.0))) +
              static_cast<long>(std::ceil(sys.k() * cutoff * map_band)) +
              nu_abs * std::abs(sys.tau().winding()));
}

FrequencyGrid FrequencyGrid::guarded(const SkewProductSystem& sys, int nu, int cutoff) {
  return {cutoff, next_pow2(required_points(sys, nu, cutoff))};
}

FrequencyGrid FrequencyGrid::guarded(const CocycleContext& ctx, int nu, int cutoff) {
  long need = required_points(ctx.base(), nu, cutoff);
  if (!ctx.deterministic())
    for (long j = ctx.path().lo(); j <= ctx.path().hi(); ++j)
      need = std::max(need, required_points(ctx.at(j), nu, cutoff));
  return {cutoff, next_pow2(need)};
}

double WeightScheme::weight(double xi) const {
  switch (kind) {
    case Kind::Sobolev:
      return std::pow(1.0 + xi * xi, 0.5 * m);
    case Kind::Semiclassical: {
      const double e = xi / std::abs(nu);
      return std::pow(1.0 + e * e, 0.5 * m);
    }
    case Kind::Escape:
      return escape_value(escape, xi / std::abs(nu));
  }
  return 1.0;
}

Eigen::VectorXd WeightScheme::diagonal(const FrequencyGrid& grid) const {
  Eigen::VectorXd w(grid.size());
  for (int i = 0; i < grid.size(); ++i) w(i) = weight(kTwoPi * grid.frequency(i));
  return w;
}

OperatorMatrix assemble(const SkewProductSystem& sys, int nu, const FrequencyGrid& grid,
                        Direction direction) {
  OperatorMatrix out{nu, grid, direction, CMatrix::Zero(grid.size(), grid.size())};
  assemble_into(sys, nu, grid, direction, 0, [&](int r, int c, cplx v) {
    if (std::abs(v) >= kPrune) out.entries(r, c) = v;
  });
  return out;
}

std::vector<CMatrix> assemble_steps(const CocycleContext& ctx, int nu, const FrequencyGrid& grid,
                                    long j, int n, Direction direction, int threads) {
  std::vector<CMatrix> steps(static_cast<std::size_t>(n));
  if (ctx.deterministic()) {
    const CMatrix m = assemble(ctx.base(), nu, grid, direction).entries;
    for (auto& s : steps) s = m;
    return steps;
  }
  for (int i = 0; i < n; ++i) ctx.at(j + i);  // window check before spawning work
  parallel_for(n, threads, [&](long i) {
    steps[i] = assemble(ctx.at(j + i), nu, grid, direction).entries;
  });
  return steps;
}

OperatorMatrix cocycle_product(const CocycleContext& ctx, int nu, const FrequencyGrid& grid, long j,
                               int n, Direction direction) {
  if (n < 1) throw InvalidArgument("cocycle_product needs n >= 1");
  const auto steps = assemble_steps(ctx, nu, grid, j, n, direction);
  CMatrix acc = steps[0];
  for (int i = 1; i < n; ++i) {
    if (direction == Direction::Adjoint)
      acc = steps[i] * acc;
    else
      acc = acc * steps[i];
  }
  return {nu, grid, direction, std::move(acc)};
}

double weighted_norm(const CMatrix& m, const FrequencyGrid& grid, const WeightScheme& scheme) {
  const Eigen::VectorXd w = scheme.diagonal(grid);
  const CMatrix c = w.asDiagonal() * m * w.cwiseInverse().asDiagonal();
  return spectral_norm(c);
}

PQOperators pq_operators(const CocycleContext& ctx, int nu, const FrequencyGrid& grid, long j, int n,
                         const EscapeSpec& spec) {
  if (nu == 0) throw InvalidArgument("pq_operators needs nu != 0");
  PQOperators out;
  const int d = grid.size();
  if (n == 0) {
    out.P = out.Q = CMatrix::Identity(d, d);
    out.norm_P = out.norm_Q = 1.0;
    return out;
  }
  const Eigen::VectorXd a = WeightScheme::escape_weights(spec, nu).diagonal(grid);
  const CMatrix m = cocycle_product(ctx, nu, grid, j, n, Direction::Forward).entries;
  out.Q = a.cwiseInverse().asDiagonal() * m * a.asDiagonal();
  out.P = out.Q.adjoint() * out.Q;
  out.norm_Q = spectral_norm(out.Q);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(out.P, Eigen::EigenvaluesOnly);
  out.norm_P = es.eigenvalues().cwiseAbs().maxCoeff();
  return out;
}

SparseOperator assemble_sparse(const SkewProductSystem& sys, int nu, const FrequencyGrid& grid,
                               Direction direction, double drop_tol) {
  std::vector<Eigen::Triplet<cplx>> trips;
  assemble_into(sys, nu, grid, direction, 1, [&](int r, int c, cplx v) {
    if (std::abs(v) >= drop_tol) trips.emplace_back(r, c, v);
  });
  SparseOperator m(grid.size(), grid.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

EgorovNorm pq_norm_sparse(const CocycleContext& ctx, int nu, const FrequencyGrid& grid, long j, int n,
                          const EscapeSpec& spec) {
  if (nu == 0) throw InvalidArgument("pq_norm_sparse needs nu != 0");
  EgorovNorm out;
  out.dimension = grid.size();
  if (n == 0) {
    out.norm_P = 1.0;
    return out;
  }
  std::vector<SparseOperator> fwd;
  std::vector<SparseOperator> adj;
  if (ctx.deterministic()) {
    fwd.assign(1, assemble_sparse(ctx.base(), nu, grid, Direction::Forward));
  } else {
    for (int i = 0; i < n; ++i) fwd.push_back(assemble_sparse(ctx.at(j + i), nu, grid, Direction::Forward));
  }
  for (const auto& f : fwd) {
    adj.emplace_back(f.adjoint());
    out.nonzeros += f.nonZeros();
  }
  const auto step = [&](int i) -> std::size_t { return fwd.size() == 1 ? 0 : static_cast<std::size_t>(i); };
  const Eigen::VectorXd a = WeightScheme::escape_weights(spec, nu).diagonal(grid);
  const Eigen::VectorXd ainv = a.cwiseInverse();
  const auto apply = [&](const CVector& v, CVector& w) {
    // Q v = A^{-1} M(omega) ... M(theta^{n-1} omega) A v
    CVector t = a.cwiseProduct(v);
    for (int i = n - 1; i >= 0; --i) t = fwd[step(i)] * t;
    t = ainv.cwiseProduct(t);
    // Q^H t = A M(theta^{n-1} omega)^H ... M(omega)^H A^{-1} t
    t = ainv.cwiseProduct(t);
    for (int i = 0; i < n; ++i) t = adj[step(i)] * t;
    w = a.cwiseProduct(t);
  };
  const auto res = lanczos_largest(apply, grid.size(), 1e-12, 300);
  out.norm_P = res.value;
  out.lanczos_residual = res.residual;
  out.iterations = res.iterations;
  return out;
}

std::vector<DistanceRow> perturbation_distance(const NoiseModel& model, int nu, int n,
                                               const WeightScheme& scheme, int cutoff,
                                               const std::vector<double>& eps_grid, int samples) {
  const CocycleContext base_ctx(model.base);
  std::vector<DistanceRow> rows;
  const CMatrix m0 =
      cocycle_product(base_ctx, nu, FrequencyGrid::guarded(base_ctx, nu, cutoff), 0, n, Direction::Adjoint)
          .entries;
  for (double eps : eps_grid) {
    DistanceRow row{eps, 0.0, samples};
    if (eps > 0.0) {
      const CocycleContext ctx(model, eps);
      const FrequencyGrid grid = FrequencyGrid::guarded(ctx, nu, cutoff);
      for (int s = 0; s < samples; ++s) {
        const CMatrix me = cocycle_product(ctx, nu, grid, static_cast<long>(s) * n, n, Direction::Adjoint).entries;
        row.distance = std::max(row.distance, weighted_norm(me - m0, grid, scheme));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace skewlab
