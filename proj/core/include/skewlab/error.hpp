#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction input (non-diffeomorphism, non-expanding map, bad parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ExpansionLost : public Error {
 public:
  ExpansionLost(double min_derivative, double lambda)
      : Error("expansion lost: min E' = " + std::to_string(min_derivative) +
              " < lambda = " + std::to_string(lambda)),
        min_derivative_(min_derivative),
        lambda_(lambda) {}
  double min_derivative() const { return min_derivative_; }
  double lambda() const { return lambda_; }

 private:
  double min_derivative_;
  double lambda_;
};

class WindowExhausted : public Error {
 public:
  explicit WindowExhausted(long index)
      : Error("noise window exhausted at index " + std::to_string(index)), index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

class InversionFailure : public Error {
 public:
  using Error::Error;
};

class AliasingRisk : public Error {
 public:
  AliasingRisk(long points, long required)
      : Error("aliasing guard violated: " + std::to_string(points) + " quadrature points, " +
              std::to_string(required) + " required"),
        points_(points),
        required_(required) {}
  long points() const { return points_; }
  long required() const { return required_; }

 private:
  long points_;
  long required_;
};

class BranchBudgetExceeded : public Error {
 public:
  BranchBudgetExceeded(int n, int cap)
      : Error("branch budget exceeded: n = " + std::to_string(n) + " > cap " + std::to_string(cap)) {}
};

class ResidualTooLarge : public Error {
 public:
  ResidualTooLarge(double achieved, double tol)
      : Error("pullback residual " + std::to_string(achieved) + " above tolerance " +
              std::to_string(tol)),
        achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

class DegenerateSeries : public Error {
 public:
  using Error::Error;
};

class NotLinear : public Error {
 public:
  NotLinear() : Error("operation requires a linear expanding map (g = identity)") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewlab
