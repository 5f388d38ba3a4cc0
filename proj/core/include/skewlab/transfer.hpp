#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "skewlab/cocycle.hpp"
#include "skewlab/escape.hpp"
#include "skewlab/numeric.hpp"

namespace skewlab {

/// Frequencies xi = 2 pi a, a in [-cutoff, cutoff], with N trapezoid nodes.
struct FrequencyGrid {
  int cutoff = 0;
  long points = 0;

  int size() const { return 2 * cutoff + 1; }
  int index(int a) const { return a + cutoff; }
  int frequency(int idx) const { return idx - cutoff; }

  /// Smallest power of two satisfying the aliasing guard for every system in ctx.
  static FrequencyGrid guarded(const CocycleContext& ctx, int nu, int cutoff);
  static FrequencyGrid guarded(const SkewProductSystem& sys, int nu, int cutoff);
};

/// Aliasing guard 8 (2 Xi + ceil(|nu| (sup|tau| + 1)) + k Xi); for winding ceilings
/// sup|tau| is taken over the periodic part plus 2 pi |w|.
long required_points(const SkewProductSystem& sys, int nu, int cutoff);

enum class Direction { Forward, Adjoint };

struct WeightScheme {
  enum class Kind { Sobolev, Semiclassical, Escape };
  Kind kind = Kind::Sobolev;
  double m = 0.0;
  int nu = 1;
  EscapeSpec escape;

  static WeightScheme sobolev(double m) { return {Kind::Sobolev, m, 1, {}}; }
  static WeightScheme semiclassical(double m, int nu) { return {Kind::Semiclassical, m, nu, {}}; }
  static WeightScheme escape_weights(const EscapeSpec& e, int nu) {
    return {Kind::Escape, e.m, nu, e};
  }

  /// <xi>^m, <xi/nu>^m or a_m(xi/nu).
  double weight(double xi) const;
  Eigen::VectorXd diagonal(const FrequencyGrid& grid) const;
};

struct OperatorMatrix {
  int nu = 0;
  FrequencyGrid grid;
  Direction direction = Direction::Adjoint;
  CMatrix entries;
};

/// Single-step matrix. Adjoint entry (xi', xi) = int exp(i(xi y - xi' E(y) - nu tau(y))) dy,
/// forward entry (xi', xi) = int exp(i(xi E(x) + nu tau(x) - xi' x)) dx, by FFT trapezoid sums.
OperatorMatrix assemble(const SkewProductSystem& sys, int nu, const FrequencyGrid& grid,
                        Direction direction);

/// Forward: M_{nu,n}(omega) = M(omega) M(theta omega) ... M(theta^{n-1} omega).
/// Adjoint: M*_{nu,n}(omega) = M*(theta^{n-1} omega) ... M*(omega).
OperatorMatrix cocycle_product(const CocycleContext& ctx, int nu, const FrequencyGrid& grid, long j,
                               int n, Direction direction);

/// Per-step adjoint matrices for indices j..j+n-1, assembled in parallel.
std::vector<CMatrix> assemble_steps(const CocycleContext& ctx, int nu, const FrequencyGrid& grid,
                                    long j, int n, Direction direction, int threads = 1);

/// Largest singular value of W M W^{-1}.
double weighted_norm(const CMatrix& m, const FrequencyGrid& grid, const WeightScheme& scheme);
inline double weighted_norm(const OperatorMatrix& m, const WeightScheme& scheme) {
  return weighted_norm(m.entries, m.grid, scheme);
}

struct PQOperators {
  CMatrix P;
  CMatrix Q;
  double norm_P = 0.0;
  double norm_Q = 0.0;
};

/// Q = A^{-1} M_{nu,n} A with A = diag a_m(xi/nu); P = Q^H Q.
PQOperators pq_operators(const CocycleContext& ctx, int nu, const FrequencyGrid& grid, long j, int n,
                         const EscapeSpec& spec);

using SparseOperator = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Sparse single-step matrix; entries below drop_tol times the largest modulus are removed.
SparseOperator assemble_sparse(const SkewProductSystem& sys, int nu, const FrequencyGrid& grid,
                               Direction direction, double drop_tol = 1e-15);

struct EgorovNorm {
  double norm_P = 0.0;
  double lanczos_residual = 0.0;
  int iterations = 0;
  int dimension = 0;
  long nonzeros = 0;
};

/// ||P_n|| = ||Q_{nu,n}||^2 by Lanczos on Q^H Q with sparse per-step matrices.
EgorovNorm pq_norm_sparse(const CocycleContext& ctx, int nu, const FrequencyGrid& grid, long j, int n,
                          const EscapeSpec& spec);

struct DistanceRow {
  double eps = 0.0;
  double distance = 0.0;  // max over samples
  int samples = 0;
};

/// sup over sampled omega (time indices 0, n, 2n, ...) of the weighted distance
/// ||M*_{nu,n}(eps; omega) - M*_{nu,n}(0)||.
std::vector<DistanceRow> perturbation_distance(const NoiseModel& model, int nu, int n,
                                               const WeightScheme& scheme, int cutoff,
                                               const std::vector<double>& eps_grid, int samples);

}  // namespace skewlab
