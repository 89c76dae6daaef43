#pragma once

#include <functional>
#include <vector>

#include "ssal/inner.hpp"
#include "ssal/model.hpp"

namespace ssal {

/// Outer-loop parameters. The defaults follow the reference configuration:
/// penalty rho = 1, zero initial multiplier, stopping on the squared primal
/// residual ||x - y||^2. The step size omega is 0.3 for quadratic-form
/// objectives and 1.0 for least-squares ones when taken from defaults_for().
struct SolverParams {
  double rho = 1.0;
  double omega = 0.3;
  double epsilon = 1e-4;
  int max_outer = 500;
  Vector lambda0;  // empty -> zero vector
  Vector y0;       // empty -> zero vector (always a member of Y)
  InnerSolverOpts inner;

  bool record_iterates = false;
  std::function<void(const struct IterateState&)> on_iterate;

  static SolverParams defaults_for(const ProblemSpec& spec);
  void validate(const ProblemSpec& spec) const;
};

/// Snapshot of the outer iteration k.
struct IterateState {
  int k = 0;
  Vector x;
  Vector y;
  IntVector z;
  Vector lambda;
  double primal_residual = 0.0;  // ||x - y||^2
};

struct SolveReport {
  Vector x_final;
  Vector y_final;
  IntVector z_final;
  Vector x_polished;

  double objective_x = 0.0;
  double objective_y = 0.0;
  double objective_polished = 0.0;
  int outer_iterations = 0;
  double primal_residual_final = 0.0;
  double stationarity_residual = 0.0;
  bool converged = false;
  bool polish_feasible = false;
  double wall_time_s = 0.0;

  struct TracePoint {
    int k;
    double primal_residual;
    double objective;
  };
  std::vector<TracePoint> trace;
  std::vector<IterateState> iterates;  // filled when record_iterates is set
};

/// The augmented Lagrangian f(x) + lambda^T (y - x) + rho/2 ||y - x||^2.
double eval_lagrangian(const ProblemSpec& spec, const Vector& x,
                       const Vector& y, const Vector& lambda, double rho);

/// lambda + omega * rho * (y - x), componentwise.
Vector update_multiplier(const Vector& lambda, const Vector& y,
                         const Vector& x, double omega, double rho);

/// Re-solves the convex restriction of the instance on the support of z
/// (x_i = 0 where z_i = 0, a_i <= x_i <= b_i where z_i = 1) and returns the
/// restricted minimizer with its objective. Throws PolishInfeasibleError when
/// the restriction is empty.
std::pair<Vector, double> polish(const ProblemSpec& spec, const IntVector& z,
                                 const InnerSolverOpts& opts = {});

/// Runs the full splitting loop: alternate the closed-form projection onto Y,
/// the convex x-update over X, and the damped multiplier step, until
/// ||x - y||^2 <= epsilon or the iteration cap. Non-convergence is reported
/// through the `converged` flag, not an exception.
SolveReport solve(const ProblemSpec& spec, const SolverParams& params);

}  // namespace ssal
