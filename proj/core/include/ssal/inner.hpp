#pragma once

#include <optional>

#include "ssal/errors.hpp"
#include "ssal/model.hpp"

namespace ssal {

/// Options for the projected-gradient inner solver.
///
/// The initial trial step is step_rule.init_step divided by a power-iteration
/// estimate of the Lipschitz constant of the smooth part; Armijo backtracking
/// shrinks from there. The quadratic risk constraint, when present, is
/// enforced by a multiplier loop around the polytope-projected solve and is
/// exact only up to risk.feas_tol.
struct InnerSolverOpts {
  int max_iters = 10000;
  double grad_tol = 1e-8;  // threshold on ||x - P_X(x - grad L)||_inf

  struct StepRule {
    double init_step = 1.0;
    double shrink = 0.5;
    double armijo_c = 1e-4;
  } step_rule;

  int dykstra_iters = 500;
  double dykstra_tol = 1e-10;

  struct RiskLoop {
    double mu0 = 0.0;       // initial multiplier for x^T D x <= sigma0
    double penalty = 10.0;  // initial penalty rho_g
    int outer_iters = 50;
    double feas_tol = 1e-8;
  } risk;

  void validate() const;
};

/// Componentwise clamp onto [lower, upper].
Vector project_box(const Vector& x, const Vector& lower, const Vector& upper);

/// Euclidean projection onto the intersection of the box/simplex/halfspace
/// blocks of X via Dykstra's cyclic corrections. The quad_risk block is not
/// supported here. Throws InnerSolverError if the cycle limit is reached
/// before successive iterates settle, or if the settled point still violates
/// a block (the empty-intersection signal).
Vector project_polytope(const Vector& x, const ConvexSetX& X,
                        const InnerSolverOpts& opts);

/// Minimizes L_rho(x, y, lambda) = f(x) + lambda^T (y - x) + rho/2 ||y - x||^2
/// over X by projected gradient descent, warm-started at `warm` (defaults to
/// y). Requires rho > 0.
Vector solve_x_subproblem(const ProblemSpec& spec, const Vector& y,
                          const Vector& lambda, double rho,
                          const InnerSolverOpts& opts,
                          std::optional<Vector> warm = std::nullopt);

/// Reusable variant that caches the Lipschitz estimate of grad f across
/// repeated subproblem solves on the same instance.
class InnerSolver {
 public:
  InnerSolver(const ProblemSpec& spec, InnerSolverOpts opts);

  /// Same contract as solve_x_subproblem. rho = 0 minimizes f alone.
  Vector solve(const Vector& y, const Vector& lambda, double rho,
               const Vector& warm) const;

  double lipschitz_estimate() const { return lipschitz_f_; }

 private:
  const ProblemSpec* spec_;
  InnerSolverOpts opts_;
  double lipschitz_f_;
};

}  // namespace ssal
