#pragma once

#include <mutex>
#include <unordered_map>
#include <vector>

#include "skewlab/captivity.hpp"

namespace skewlab {

/// S(theta^j omega, x) = -sum_{i>=1} tau'(theta^{j-i} omega, x_i) dG^(i)/dx with x_i the backward
/// orbit of x, truncated at J_S = ceil(log(C_tau / ((lambda-1) tol)) / log lambda).
class StableGraphSolution {
 public:
  StableGraphSolution(const CocycleContext& ctx, double tol = 1e-10);

  int depth() const { return depth_; }
  double tail_bound() const { return tail_; }
  double tol() const { return tol_; }

  double operator()(long j, double x) const;

  /// S(theta^{j0+n} omega, x) together with dG^(n)(omega, x)/dx from one backward walk.
  struct Joint {
    double s;
    double dG;
  };
  Joint with_derivative(long j0, int n, double x) const;

 private:
  const CocycleContext* ctx_;
  double tol_;
  int depth_;
  double tail_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<long, std::unordered_map<std::uint64_t, double>> memo_;
};

/// Lifted orbit (x_s, xi_s), s = 0..n, of F-tilde^(n)(omega): step s applies the branch at
/// time index j0+n-s to the unreduced lift.
struct LiftedOrbit {
  std::vector<double> x;
  std::vector<double> xi;
  /// xi_n from the closed sum: (prod E') eta + sum_s tau'(x_s) prod_{r>s} E'(x_r).
  double xi_closed_form = 0.0;
};
LiftedOrbit lifted_orbit(const CocycleContext& ctx, long j0, int n, double y, double eta);

double solve_S(const CocycleContext& ctx, long j, double x, double tol = 1e-10);

/// Tilde-N_R(eps; omega, n): max over y_i = i/y_points of the exact overlap depth of the intervals
/// |eta - S(theta^n omega, y + alpha)| <= R dG^(n)(omega, y + alpha)/dy.
long count_tilde(const CocycleContext& ctx, const StableGraphSolution& S, long j0, int n, double R,
                 int y_points = 64);
long count_tilde_at(const CocycleContext& ctx, const StableGraphSolution& S, long j0, int n, double R, double y);

struct SandwichResult {
  long lower = 0;   // tilde-N_{R - C1}
  long count = 0;   // N (exact in eta, same y-grid)
  long upper = 0;   // tilde-N_{R + C1}
  bool holds = false;
};

SandwichResult sandwich_check(const CocycleContext& ctx, const StableGraphSolution& S, long j0, int n,
                              const TrapZone& zone, int y_points = 64);

struct BracketRow {
  double eps = 0.0;
  bool holds = false;
  long lower = 0;
  long upper = 0;
  std::vector<long> sampled;  // tilde-N_R(eps; omega_s, n)
};

struct NoiseBracket {
  int n = 0;
  double eps_n = 0.0;  // largest eps such that it and every smaller grid value pass
  int samples = 0;
  std::vector<BracketRow> rows;
};

/// tilde-N_{R-rho}(0;n) <= tilde-N_R(eps; omega_s, n) <= tilde-N_{R+rho}(0;n) over sampled omega_s.
NoiseBracket noise_bracket(const NoiseModel& model, int n, double R, double rho, std::vector<double> eps_grid,
                           int samples, int y_points = 64);

struct ConeSpec {
  double theta = 0.0;

  /// theta_R = R / (lambda_0 - 1).
  static ConeSpec for_radius(const SkewProductSystem& sys, double R);
  /// theta_tau = sup|tau'| / (2 pi (lambda_0 - 1)).
  static double minimal(const SkewProductSystem& sys);
};

struct TransversalityResult {
  int n = 0;
  double phi = 0.0;
  long max_count = 0;
  bool cone_invariant = true;  // every image slope interval lies in [-theta, theta]
};

TransversalityResult transversality_phi(const SkewProductSystem& sys, double R, int n, int z_points = 64);

/// R threshold (sup|tau_0'| + (k-1) R_kappa / 2) / pi.
double transversality_radius(const SkewProductSystem& sys);

struct TransversalityRow {
  int n = 0;
  long count = 0;
  double phi = 0.0;
  double bound = 0.0;  // k^n phi
  bool holds = false;
};

std::vector<TransversalityRow> transversality_vs_captivity(const SkewProductSystem& sys, int n_max,
                                                           int z_points = 64);

}  // namespace skewlab
