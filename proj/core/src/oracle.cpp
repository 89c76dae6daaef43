#include "ssal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "restricted_solve.hpp"

namespace ssal {

namespace {

constexpr double kOracleGradTol = 1e-10;

// The separable fast path applies when the objective is
// 1/2 ||x - w||^2 (identity least squares) and X is at most a box
// containing the origin: each restriction minimizes coordinatewise.
struct SeparableCase {
  bool applies = false;
  Vector w;
  Vector lower;  // merged on-branch interval
  Vector upper;
};

SeparableCase detect_separable(const ProblemSpec& spec) {
  SeparableCase sc;
  const auto* ls = std::get_if<LeastSquares>(&spec.objective);
  if (!ls || ls->A.rows() != spec.n) return sc;
  if (!ls->A.isIdentity(0.0)) return sc;
  if (spec.x_set.simplex || spec.x_set.halfspace || spec.x_set.quad_risk)
    return sc;

  sc.w = ls->b;
  sc.lower = spec.y_set.a;
  sc.upper = spec.y_set.b;
  if (spec.x_set.box) {
    for (int i = 0; i < spec.n; ++i) {
      if (spec.x_set.box->lower[i] > 0.0 || spec.x_set.box->upper[i] < 0.0)
        return sc;  // zero branch infeasible; fall back to the general path
      sc.lower[i] = std::max(sc.lower[i], spec.x_set.box->lower[i]);
      sc.upper[i] = std::min(sc.upper[i], spec.x_set.box->upper[i]);
      if (sc.lower[i] > sc.upper[i]) return sc;
    }
  }
  sc.applies = true;
  return sc;
}

}  // namespace

std::vector<std::vector<int>> enumerate_supports(int n, int K) {
  std::vector<std::vector<int>> out;
  for_each_support(n, K, [&out](const std::vector<int>& s) { out.push_back(s); });
  return out;
}

OracleResult global_solve(const ProblemSpec& spec, const InnerSolverOpts& opts) {
  spec.validate();
  if (spec.n > kOracleDimensionCap)
    throw SizeCapError("global_solve: n exceeds the enumeration cap");

  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  bool found = false;

  const SeparableCase sc = detect_separable(spec);
  for_each_support(spec.n, spec.y_set.K, [&](const std::vector<int>& support) {
    ++best.supports_examined;
    if (sc.applies) {
      double obj = 0.5 * sc.w.squaredNorm();
      Vector x = Vector::Zero(spec.n);
      for (int i : support) {
        const double xi = std::clamp(sc.w[i], sc.lower[i], sc.upper[i]);
        x[i] = xi;
        obj += 0.5 * ((xi - sc.w[i]) * (xi - sc.w[i]) - sc.w[i] * sc.w[i]);
      }
      if (obj < best.objective) {
        best.objective = obj;
        best.x_star = std::move(x);
        best.support = support;
        found = true;
      }
      return;
    }
    auto x = detail::solve_restricted(spec, support, opts, kOracleGradTol);
    if (!x) return;
    const double obj = eval_objective(spec, *x);
    if (obj < best.objective) {
      best.objective = obj;
      best.x_star = std::move(*x);
      best.support = support;
      found = true;
    }
  });

  if (!found)
    throw GlobalInfeasibleError("global_solve: every restriction infeasible");
  return best;
}

}  // namespace ssal
