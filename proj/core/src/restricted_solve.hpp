#pragma once

#include <optional>
#include <span>

#include "ssal/inner.hpp"
#include "ssal/model.hpp"

namespace ssal::detail {

// Solves min f(x) over X with x_i = 0 off `support` and a_i <= x_i <= b_i on
// it. Returns the full-length minimizer, or nullopt when the restriction is
// infeasible. grad_tol overrides opts.grad_tol when positive.
std::optional<Vector> solve_restricted(const ProblemSpec& spec,
                                       std::span<const int> support,
                                       const InnerSolverOpts& opts,
                                       double grad_tol = -1.0);

}  // namespace ssal::detail
