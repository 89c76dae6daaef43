#pragma once

#include <stdexcept>
#include <string>

namespace ssal {

/// Inner (convex) solver failed to reach its tolerance within the
/// iteration budget. Carries the last projected-gradient residual.
class InnerSolverError : public std::runtime_error {
 public:
  InnerSolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The quadratic-risk multiplier loop could not restore feasibility.
class RiskInfeasibleError : public std::runtime_error {
 public:
  RiskInfeasibleError(const std::string& what, double violation)
      : std::runtime_error(what), violation_(violation) {}
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

/// The convex restriction induced by a fixed support is infeasible.
class PolishInfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Candidate point handed to the certifier violates X beyond tolerance.
class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance exceeds the brute-force enumeration cap.
class SizeCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every support restriction of the instance is infeasible.
class GlobalInfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ssal
