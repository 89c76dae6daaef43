#include "ssal/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "restricted_solve.hpp"
#include "ssal/semiproj.hpp"
#include "ssal/stationarity.hpp"

namespace ssal {

SolverParams SolverParams::defaults_for(const ProblemSpec& spec) {
  SolverParams params;
  params.omega = std::holds_alternative<LeastSquares>(spec.objective) ? 1.0 : 0.3;
  return params;
}

void SolverParams::validate(const ProblemSpec& spec) const {
  if (rho <= 0.0) throw std::invalid_argument("solver params: rho must be > 0");
  if (omega <= 0.0 || omega > 2.0)
    throw std::invalid_argument("solver params: omega must be in (0, 2]");
  if (epsilon < 0.0)
    throw std::invalid_argument("solver params: epsilon must be >= 0");
  if (max_outer <= 0)
    throw std::invalid_argument("solver params: max_outer must be > 0");
  if (lambda0.size() != 0 && lambda0.size() != spec.n)
    throw std::invalid_argument("solver params: lambda0 dimension mismatch");
  if (y0.size() != 0) {
    if (y0.size() != spec.n)
      throw std::invalid_argument("solver params: y0 dimension mismatch");
    if (!spec.y_set.contains(y0))
      throw std::invalid_argument("solver params: y0 is not a member of Y");
  }
  inner.validate();
}

double eval_lagrangian(const ProblemSpec& spec, const Vector& x,
                       const Vector& y, const Vector& lambda, double rho) {
  const Vector diff = y - x;
  return eval_objective(spec, x) + lambda.dot(diff) +
         0.5 * rho * diff.squaredNorm();
}

Vector update_multiplier(const Vector& lambda, const Vector& y,
                         const Vector& x, double omega, double rho) {
  if (lambda.size() != y.size() || lambda.size() != x.size())
    throw std::invalid_argument("update_multiplier: dimension mismatch");
  return lambda + (omega * rho) * (y - x);
}

std::pair<Vector, double> polish(const ProblemSpec& spec, const IntVector& z,
                                 const InnerSolverOpts& opts) {
  if (z.size() != spec.n)
    throw std::invalid_argument("polish: indicator dimension mismatch");
  std::vector<int> support;
  for (int i = 0; i < spec.n; ++i)
    if (z[i] != 0) support.push_back(i);
  if (static_cast<int>(support.size()) > spec.y_set.K)
    throw std::invalid_argument("polish: support exceeds cardinality budget");

  auto x = detail::solve_restricted(spec, support, opts);
  if (!x)
    throw PolishInfeasibleError(
        "polish: the convex restriction on the given support is infeasible");
  return {*x, eval_objective(spec, *x)};
}

SolveReport solve(const ProblemSpec& spec, const SolverParams& params) {
  spec.validate();
  params.validate(spec);
  const auto t_start = std::chrono::steady_clock::now();

  const Vector zeros = Vector::Zero(spec.n);
  Vector y = params.y0.size() ? params.y0 : zeros;
  Vector lambda = params.lambda0.size() ? params.lambda0 : zeros;
  IntVector z(spec.n);
  for (int i = 0; i < spec.n; ++i) z[i] = y[i] != 0.0 ? 1 : 0;

  InnerSolver inner(spec, params.inner);
  Vector x = inner.solve(y, lambda, params.rho, y);

  SolveReport report;
  int k = 0;
  double residual = (x - y).squaredNorm();

  const auto record = [&](void) {
    report.trace.push_back({k, residual, eval_objective(spec, x)});
    if (params.record_iterates || params.on_iterate) {
      IterateState state{k, x, y, z, lambda, residual};
      if (params.on_iterate) params.on_iterate(state);
      if (params.record_iterates) report.iterates.push_back(std::move(state));
    }
  };
  record();

  while (residual > params.epsilon && k < params.max_outer) {
    const Vector w = x - lambda / params.rho;
    ProjectionResult proj = project_semicard(w, spec.y_set);
    y = std::move(proj.y);
    z = std::move(proj.z);
    try {
      x = inner.solve(y, lambda, params.rho, x);
    } catch (const InnerSolverError& e) {
      throw InnerSolverError("outer iteration " + std::to_string(k + 1) +
                                 ": " + e.what(),
                             e.residual());
    }
    lambda = update_multiplier(lambda, y, x, params.omega, params.rho);
    ++k;
    residual = (x - y).squaredNorm();
    record();
  }

  report.converged = residual <= params.epsilon;
  report.outer_iterations = k;
  report.primal_residual_final = residual;
  report.x_final = x;
  report.y_final = y;
  report.z_final = z;
  report.objective_x = eval_objective(spec, x);
  report.objective_y = eval_objective(spec, y);

  try {
    auto [xp, obj] = polish(spec, z, params.inner);
    report.x_polished = std::move(xp);
    report.objective_polished = obj;
    report.polish_feasible = true;
  } catch (const PolishInfeasibleError&) {
    // The restriction cannot be met; y is the deliverable in that case.
    report.x_polished = y;
    report.objective_polished = report.objective_y;
    report.polish_feasible = false;
  }

  try {
    const Vector& cert_point =
        report.polish_feasible ? report.x_polished : report.x_final;
    report.stationarity_residual =
        stationarity_residual(spec, cert_point).residual;
  } catch (const FeasibilityError&) {
    report.stationarity_residual = std::nan("");
  }

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

}  // namespace ssal
