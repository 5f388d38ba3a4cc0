#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skewlab/cocycle.hpp"

namespace skewlab::verify {

enum class Suite { Fast, Full };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

using ResultSink = std::function<void(const CriterionResult&)>;

/// Runs criteria 1-16 (or the subset in `only`, if non-empty) and reports each result as it completes.
std::vector<CriterionResult> run_acceptance(Suite suite, const ResultSink& sink = {},
                                            const std::vector<int>& only = {});

std::string format_result(const CriterionResult& r);

/// Weighted Sobolev norms of M*_{nu,n} for n = 1..n_max along omega_s = theta^{s n_max} omega.
/// Indexed [m][sample][n-1] for m = 0..m_max.
std::vector<std::vector<std::vector<double>>> cocycle_norms(const CocycleContext& ctx, int nu, int m_max,
                                                            int cutoff, int n_max, int samples);

}  // namespace skewlab::verify
