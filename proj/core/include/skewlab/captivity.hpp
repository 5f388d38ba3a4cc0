#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewlab/escape.hpp"

namespace skewlab {

inline constexpr int kBranchCap = 14;

struct CotangentPoint {
  double y;
  double eta;
  CotangentPoint(double y_, double eta_) : y(wrap_unit(y_)), eta(eta_) {}
};

struct BranchImage {
  double x_lift;  // g^{-1}((y + j)/k), not reduced
  CotangentPoint point;
};

/// F_j(y, eta) = (x_j, E'(x_j) eta + tau'(x_j)).
BranchImage canonical_branch(const SkewProductSystem& sys, int j, CotangentPoint pt);

/// Time-n tree at a base point. For each alpha-bar = sum alpha_i k^{i-1}: position x (reduced),
/// xi = slope * eta + offset (affine in eta), and dG_alpha/dy.
struct BranchTree {
  int n = 0;
  std::vector<double> x;
  std::vector<double> slope;   // prod of E'
  std::vector<double> offset;  // xi at eta = 0
  std::vector<double> dG;      // prod of 1/E'

  std::size_t size() const { return x.size(); }
  double xi(std::size_t a, double eta) const { return slope[a] * eta + offset[a]; }
};

/// Tree of F_{alpha_n}(omega) o ... o F_{alpha_1}(theta^{n-1} omega) from y, omega at index j0.
BranchTree branch_tree(const CocycleContext& ctx, long j0, int n, double y);

/// All k^n points F^(n)(omega)(pt), indexed by alpha-bar.
std::vector<CotangentPoint> trajectory_set(const CocycleContext& ctx, long j0, int n, CotangentPoint pt);

/// Grid over Z: y_i = i / y_points. With exact_eta the sup over |eta| <= R is exact
/// (interval stabbing); otherwise eta runs over eta_points equispaced values in [-R, R].
struct TrapGrid {
  int y_points = 64;
  int eta_points = 65;
  bool exact_eta = false;
};

/// N(eps; omega, n); n = 0 gives 1.
long count_trapped(const CocycleContext& ctx, long j0, int n, const TrapZone& zone, const TrapGrid& grid);

/// Count at a single y (max over eta as configured by the grid).
long count_trapped_at(const CocycleContext& ctx, long j0, int n, const TrapZone& zone,
                      const TrapGrid& grid, double y);

struct CaptivityDiagnostic {
  std::vector<long> counts;       // N(n), n = 1..n_max
  std::vector<double> rates;      // (1/n) log N(n)
  double infimum = 0.0;
  std::string verdict;            // "totally-captive", "partially-captive", "inconclusive"
};

CaptivityDiagnostic captivity_diagnostic(const CocycleContext& ctx, long j0, int n_max, const TrapZone& zone,
                                         const TrapGrid& grid);

struct SymbolGrid {
  int y_points = 64;
  int eta_points = 129;
  double eta_max = 0.0;  // 0 selects R + delta0 of the escape spec
};

struct SymbolField {
  SymbolGrid grid;
  std::vector<double> values;  // [iy * eta_points + ie]
  double sup = 0.0;
  double min = 0.0;
  double eta_at_sup = 0.0;
  double y_at_sup = 0.0;
};

/// p_n(omega, y, eta) = sum_alpha a_m^2(eta) / a_m^2(xi_alpha) dG_alpha/dy.
SymbolField principal_symbol(const CocycleContext& ctx, long j0, int n, const EscapeSpec& spec,
                             const SymbolGrid& grid);

struct SymbolBound {
  double total = 0.0;
  double escaping = 0.0;  // (k/lambda)^n C_kappa^{2m}
  double trapped = 0.0;   // k N(theta omega, n-1) / lambda^n
  long count = 0;         // N(theta omega, n-1)
};

/// B(omega, n) with N counted exactly in eta on the y-grid of `grid`.
SymbolBound symbol_bound(const CocycleContext& ctx, long j0, int n, const EscapeSpec& spec,
                         const TrapZone& zone, int y_points = 64);

struct N0Choice {
  std::optional<int> n0;
  double best_margin = 0.0;  // min over tried n of lhs - rhs (negative means satisfied)
  int best_n = 0;
};

/// Smallest n0 in [2, n_cap] with log(C_dim k)/(n0-1) + max_s |log N(omega_s, n0-1)|/(n0-1) < log(rho^2 lambda).
N0Choice choose_n0(const CocycleContext& ctx, double rho, double c_dim, const TrapZone& zone,
                   const TrapGrid& grid, int samples = 1, int n_cap = 12);

}  // namespace skewlab
