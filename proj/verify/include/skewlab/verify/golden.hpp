#pragma once

#include <string>
#include <vector>

namespace skewlab::verify {

struct GoldenReport {
  bool passed = true;
  int created = 0;
  std::vector<std::string> lines;  // one per artifact
};

/// Compares library output with oracle baselines stored as CSV in `dir`. Missing files are
/// written from the oracles when create_missing is set.
GoldenReport check_golden(const std::string& dir, bool create_missing = true);

}  // namespace skewlab::verify
