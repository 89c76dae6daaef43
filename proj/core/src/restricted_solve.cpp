#include "restricted_solve.hpp"

#include <algorithm>
#include <cmath>

namespace ssal::detail {

namespace {

constexpr double kFeasSlack = 1e-12;

// Reduced instance on the support coordinates. The semicontinuous interval
// [a_i, b_i] merges into the box block.
struct Reduced {
  ProblemSpec spec;
  Vector lower;
  Vector upper;
};

std::optional<Reduced> build_reduced(const ProblemSpec& spec,
                                     std::span<const int> support) {
  const int m = static_cast<int>(support.size());
  Reduced red;
  red.spec.n = m;

  red.lower.resize(m);
  red.upper.resize(m);
  for (int k = 0; k < m; ++k) {
    const int i = support[k];
    double lo = spec.y_set.a[i];
    double hi = spec.y_set.b[i];
    if (spec.x_set.box) {
      lo = std::max(lo, spec.x_set.box->lower[i]);
      hi = std::min(hi, spec.x_set.box->upper[i]);
    }
    if (lo > hi + kFeasSlack) return std::nullopt;
    red.lower[k] = lo;
    red.upper[k] = std::max(lo, hi);
  }

  if (spec.x_set.simplex) {
    if (red.lower.sum() > 1.0 + kFeasSlack ||
        red.upper.sum() < 1.0 - kFeasSlack)
      return std::nullopt;
  }
  if (spec.x_set.halfspace) {
    const auto& hs = *spec.x_set.halfspace;
    double best = 0.0;
    for (int k = 0; k < m; ++k) {
      const double c = hs.mu[support[k]];
      best += std::max(c * red.lower[k], c * red.upper[k]);
    }
    if (best < hs.rho0 - kFeasSlack) return std::nullopt;
  }

  if (const auto* q = std::get_if<QuadraticForm>(&spec.objective)) {
    Matrix M(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) M(r, c) = q->M(support[r], support[c]);
    red.spec.objective = QuadraticForm{std::move(M)};
  } else {
    const auto& ls = std::get<LeastSquares>(spec.objective);
    Matrix A(ls.A.rows(), m);
    for (int c = 0; c < m; ++c) A.col(c) = ls.A.col(support[c]);
    red.spec.objective = LeastSquares{std::move(A), ls.b};
  }

  red.spec.x_set.box = ConvexSetX::Box{red.lower, red.upper};
  red.spec.x_set.simplex = spec.x_set.simplex;
  if (spec.x_set.halfspace) {
    Vector mu(m);
    for (int k = 0; k < m; ++k) mu[k] = spec.x_set.halfspace->mu[support[k]];
    red.spec.x_set.halfspace =
        ConvexSetX::Halfspace{std::move(mu), spec.x_set.halfspace->rho0};
  }
  if (spec.x_set.quad_risk) {
    Vector d(m);
    for (int k = 0; k < m; ++k) d[k] = spec.x_set.quad_risk->d[support[k]];
    red.spec.x_set.quad_risk =
        ConvexSetX::QuadRisk{std::move(d), spec.x_set.quad_risk->sigma0};
  }
  red.spec.y_set.a = red.lower;
  red.spec.y_set.b = red.upper;
  red.spec.y_set.K = m;
  return red;
}

}  // namespace

std::optional<Vector> solve_restricted(const ProblemSpec& spec,
                                       std::span<const int> support,
                                       const InnerSolverOpts& opts,
                                       double grad_tol) {
  InnerSolverOpts eff = opts;
  if (grad_tol > 0.0) eff.grad_tol = grad_tol;

  if (support.empty()) {
    const Vector x0 = Vector::Zero(spec.n);
    if (spec.x_set.max_violation(x0) > 1e-10) return std::nullopt;
    return x0;
  }

  auto reduced = build_reduced(spec, support);
  if (!reduced) return std::nullopt;

  const int m = reduced->spec.n;
  const Vector zero = Vector::Zero(m);
  Vector warm = zero.cwiseMax(reduced->lower).cwiseMin(reduced->upper);
  if (reduced->spec.x_set.simplex) {
    // A box point rescaled toward the budget is a better start.
    const double s = warm.sum();
    if (s > 0.0)
      warm = (warm / s).cwiseMax(reduced->lower).cwiseMin(reduced->upper);
  }

  Vector x_red;
  try {
    InnerSolver solver(reduced->spec, eff);
    x_red = solver.solve(zero, zero, 0.0, warm);
  } catch (const InnerSolverError&) {
    // Dykstra stagnation above tolerance is the empty-intersection signal
    // for block combinations with no cheap algebraic test.
    return std::nullopt;
  } catch (const RiskInfeasibleError&) {
    return std::nullopt;
  }

  Vector x = Vector::Zero(spec.n);
  for (int k = 0; k < m; ++k) x[support[k]] = x_red[k];
  return x;
}

}  // namespace ssal::detail
