#pragma once

#include <vector>

#include "ssal/model.hpp"

namespace ssal {

/// Fitted multipliers for the first-order system
///   0 = grad f(x) + nu - eta + kappa + (normal cone of X at x),
/// with nu, eta >= 0 complementary to the upper/lower semicontinuous bounds
/// on the support J, and kappa supported on the complement of J. Because
/// kappa is unconstrained off-support it absorbs those coordinates exactly,
/// so the reported residual is the norm of the system restricted to J.
struct StationarityCertificate {
  Vector nu;
  Vector eta;
  Vector kappa;
  struct XConeMultipliers {
    Vector box_lower;
    Vector box_upper;
    double simplex = 0.0;
    double halfspace = 0.0;
    double quad_risk = 0.0;
  } xcone;
  double residual = 0.0;
  std::vector<int> support;
};

/// Certifies stationarity of x by solving a nonnegativity-constrained
/// least-squares fit of all multipliers. Active sets are classified with an
/// absolute tolerance of 1e-6; constraints left inactive get zero multipliers,
/// so complementarity holds by construction. Requires x feasible for X to
/// 1e-6, else throws FeasibilityError.
StationarityCertificate stationarity_residual(const ProblemSpec& spec,
                                              const Vector& x,
                                              double zero_tol = 1e-6);

}  // namespace ssal
