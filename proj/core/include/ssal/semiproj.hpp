#pragma once

#include <vector>

#include "ssal/model.hpp"

namespace ssal {

/// Per-coordinate costs of the two branches of the projection onto Y:
/// q_i is the squared distance when coordinate i is switched off,
/// r_i when it is active (clamped into [a_i, b_i]).
struct BranchCosts {
  Vector q;     // q_i = w_i^2
  Vector r;     // r_i = (y_on_i - w_i)^2
  Vector y_on;  // min(b_i, max(w_i, a_i))
  Vector w;     // projection target
};

/// Outcome of the knapsack step: which coordinates activate.
struct SupportSelection {
  IntVector z;             // 0/1 indicator, e^T z <= K
  Vector v;                // v = r - q; activation is profitable iff v_i <= 0
  std::vector<int> order;  // indices sorted by v ascending (stable)
};

struct ProjectionResult {
  Vector y;
  IntVector z;
};

/// Evaluates both branch costs of min_{y in Y} ||y - w||^2 coordinatewise.
BranchCosts branch_costs(const Vector& w, const SemicontinuousSet& Y);

/// Solves the 0/1 knapsack relaxation exactly: activate the (at most K)
/// coordinates with the smallest nonpositive v_i = r_i - q_i. Ties are
/// broken toward the lower original index via a stable sort, so results
/// are deterministic.
SupportSelection select_support(const BranchCosts& costs, int K);

/// Exact Euclidean projection of w onto Y: y_i = z_i * min(b_i, max(w_i, a_i)).
ProjectionResult project_semicard(const Vector& w, const SemicontinuousSet& Y);

}  // namespace ssal
