#include "ssal/inner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ssal {

namespace {

constexpr double kBlockFeasTol = 1e-8;

// L_rho(x, y, lambda) plus, when risk_set != nullptr, the augmented
// Lagrangian term for x^T D x <= sigma0 with multiplier mu and penalty pen.
struct CoupledObjective {
  const ProblemSpec* spec;
  const Vector* y;
  const Vector* lambda;
  double rho;
  const ConvexSetX::QuadRisk* risk_set = nullptr;
  double mu = 0.0;
  double pen = 0.0;

  double value(const Vector& x) const {
    double val = eval_objective(*spec, x);
    const Vector diff = *y - x;
    val += lambda->dot(diff) + 0.5 * rho * diff.squaredNorm();
    if (risk_set) {
      const double g = x.cwiseProduct(risk_set->d).dot(x);
      const double s = std::max(0.0, mu / pen + g - risk_set->sigma0);
      val += 0.5 * pen * s * s - mu * mu / (2.0 * pen);
    }
    return val;
  }

  Vector grad(const Vector& x) const {
    Vector g = eval_gradient(*spec, x);
    g += rho * (x - *y) - *lambda;
    if (risk_set) {
      const double gval = x.cwiseProduct(risk_set->d).dot(x);
      const double s = std::max(0.0, mu / pen + gval - risk_set->sigma0);
      if (s > 0.0) g += (2.0 * pen * s) * risk_set->d.cwiseProduct(x);
    }
    return g;
  }
};

double polytope_violation(const Vector& x, const ConvexSetX& X) {
  ConvexSetX stripped = X;
  stripped.quad_risk.reset();
  return stripped.max_violation(x);
}

// Projected gradient descent over the polytope blocks of X. The trial step
// starts at init_step / lipschitz and is monotone nonincreasing across
// iterations; a candidate is accepted on strict Armijo decrease or on the
// quadratic upper-bound test (the latter padded by the floating-point
// resolution of the objective, which keeps the final approach to a tight
// grad_tol from stalling once value differences drop below rounding).
Vector projected_gradient(const CoupledObjective& h, const ConvexSetX& polytope,
                          const InnerSolverOpts& opts, double lipschitz,
                          Vector x) {
  if (polytope_violation(x, polytope) > 1e-10)
    x = project_polytope(x, polytope, opts);

  double t = opts.step_rule.init_step / std::max(lipschitz, 1e-12);
  double fx = h.value(x);
  Vector g = h.grad(x);
  double residual = std::numeric_limits<double>::infinity();
  int stalls = 0;

  for (int it = 0; it < opts.max_iters; ++it) {
    const Vector xp = project_polytope(x - g, polytope, opts);
    residual = (x - xp).lpNorm<Eigen::Infinity>();
    if (residual <= opts.grad_tol) return x;

    Vector xc;
    double fc = fx;
    bool moved = false;
    for (int bt = 0; bt < 200; ++bt) {
      xc = project_polytope(x - t * g, polytope, opts);
      fc = h.value(xc);
      const Vector d = xc - x;
      const double slope = g.dot(d);
      if (fc <= fx + opts.step_rule.armijo_c * slope) {
        moved = d.lpNorm<Eigen::Infinity>() > 0.0;
        break;
      }
      const double quad_gap = fc - (fx + slope + d.squaredNorm() / (2.0 * t));
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(fx) + std::abs(fc));
      if (quad_gap <= noise) {
        moved = d.lpNorm<Eigen::Infinity>() > 0.0;
        break;
      }
      t *= opts.step_rule.shrink;
      if (t < 1e-18) break;
    }
    if (!moved) {
      if (++stalls >= 3)
        throw InnerSolverError(
            "inner solver: line search stalled before reaching tolerance",
            residual);
      continue;
    }
    stalls = 0;
    x = xc;
    fx = fc;
    g = h.grad(x);
  }
  throw InnerSolverError("inner solver: iteration cap exceeded", residual);
}

double estimate_lipschitz_f(const ObjectiveKind& objective, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 / (1.0 + i);
  v.normalize();
  double norm = 0.0;
  for (int step = 0; step < 20; ++step) {
    Vector hv;
    if (const auto* q = std::get_if<QuadraticForm>(&objective))
      hv = 2.0 * (q->M * v);
    else {
      const auto& ls = std::get<LeastSquares>(objective);
      hv = ls.A.transpose() * (ls.A * v);
    }
    norm = hv.norm();
    if (norm < 1e-300) return 0.0;
    v = hv / norm;
  }
  return norm;
}

}  // namespace

void InnerSolverOpts::validate() const {
  if (max_iters <= 0) throw std::invalid_argument("inner opts: max_iters");
  if (grad_tol <= 0.0) throw std::invalid_argument("inner opts: grad_tol");
  if (step_rule.shrink <= 0.0 || step_rule.shrink >= 1.0)
    throw std::invalid_argument("inner opts: shrink must be in (0,1)");
  if (step_rule.init_step <= 0.0 || step_rule.armijo_c <= 0.0)
    throw std::invalid_argument("inner opts: step rule");
  if (dykstra_iters <= 0 || dykstra_tol <= 0.0)
    throw std::invalid_argument("inner opts: dykstra");
  if (risk.penalty <= 0.0 || risk.outer_iters <= 0 || risk.feas_tol <= 0.0 ||
      risk.mu0 < 0.0)
    throw std::invalid_argument("inner opts: risk loop");
}

Vector project_box(const Vector& x, const Vector& lower, const Vector& upper) {
  if (x.size() != lower.size() || x.size() != upper.size())
    throw std::invalid_argument("project_box: dimension mismatch");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (lower[i] > upper[i])
      throw std::invalid_argument("project_box: lower exceeds upper");
  return x.cwiseMax(lower).cwiseMin(upper);
}

Vector project_polytope(const Vector& x, const ConvexSetX& X,
                        const InnerSolverOpts& opts) {
  if (X.quad_risk)
    throw std::invalid_argument(
        "project_polytope: quad_risk has no projection oracle");
  const Eigen::Index n = x.size();
  X.validate(static_cast<int>(n));

  enum class Block { kBox, kSimplex, kHalfspace };
  std::vector<Block> blocks;
  if (X.box) blocks.push_back(Block::kBox);
  if (X.simplex) blocks.push_back(Block::kSimplex);
  if (X.halfspace) blocks.push_back(Block::kHalfspace);
  if (blocks.empty()) return x;

  const auto apply = [&X, n](Block b, const Vector& u) -> Vector {
    switch (b) {
      case Block::kBox:
        return u.cwiseMax(X.box->lower).cwiseMin(X.box->upper);
      case Block::kSimplex:
        return u - Vector::Constant(n, (u.sum() - 1.0) / double(n));
      case Block::kHalfspace: {
        const double slack = X.halfspace->mu.dot(u) - X.halfspace->rho0;
        if (slack >= 0.0) return u;
        return u - (slack / X.halfspace->mu.squaredNorm()) * X.halfspace->mu;
      }
    }
    return u;
  };

  if (blocks.size() == 1) return apply(blocks[0], x);

  // Dykstra with the Birgin-Raydan robust stopping rule: the end-of-cycle
  // iterate can freeze on a feasible vertex for many cycles while the
  // corrections still drift toward an active-set change, so convergence is
  // measured on the correction increments, not on the iterates.
  Vector cur = x;
  std::vector<Vector> corrections(blocks.size(), Vector::Zero(n));
  double increment = std::numeric_limits<double>::infinity();
  for (int cycle = 0; cycle < opts.dykstra_iters; ++cycle) {
    increment = 0.0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const Vector u = cur + corrections[k];
      cur = apply(blocks[k], u);
      increment += (u - cur - corrections[k]).squaredNorm();
      corrections[k] = u - cur;
    }
    if (std::sqrt(increment) <= opts.dykstra_tol) {
      const double violation = X.max_violation(cur);
      if (violation > kBlockFeasTol)
        throw InnerSolverError(
            "project_polytope: corrections settled on an infeasible point; "
            "the intersection may be empty",
            violation);
      return cur;
    }
  }
  throw InnerSolverError("project_polytope: cycle limit reached",
                         std::sqrt(increment));
}

InnerSolver::InnerSolver(const ProblemSpec& spec, InnerSolverOpts opts)
    : spec_(&spec),
      opts_(opts),
      lipschitz_f_(estimate_lipschitz_f(spec.objective, spec.n)) {
  opts_.validate();
}

Vector InnerSolver::solve(const Vector& y, const Vector& lambda, double rho,
                          const Vector& warm) const {
  if (y.size() != spec_->n || lambda.size() != spec_->n ||
      warm.size() != spec_->n)
    throw std::invalid_argument("inner solve: dimension mismatch");
  if (rho < 0.0) throw std::invalid_argument("inner solve: rho must be >= 0");

  ConvexSetX polytope = spec_->x_set;
  polytope.quad_risk.reset();

  CoupledObjective h{spec_, &y, &lambda, rho};
  if (!spec_->x_set.quad_risk)
    return projected_gradient(h, polytope, opts_, lipschitz_f_ + rho, warm);

  const auto& risk = *spec_->x_set.quad_risk;
  const double dmax = risk.d.maxCoeff();
  double mu = opts_.risk.mu0;
  double pen = opts_.risk.penalty;
  Vector x = warm;
  double prev_viol = std::numeric_limits<double>::infinity();
  double viol = prev_viol;
  for (int k = 0; k < opts_.risk.outer_iters; ++k) {
    h.risk_set = &risk;
    h.mu = mu;
    h.pen = pen;
    const double gx = x.cwiseProduct(risk.d).dot(x);
    const double slack = std::max(0.0, mu / pen + gx - risk.sigma0);
    const double lip = lipschitz_f_ + rho +
                       pen * (2.0 * dmax * slack +
                              4.0 * dmax * dmax * x.squaredNorm());
    const Vector x_prev = x;
    x = projected_gradient(h, polytope, opts_, lip, x);
    const double gval = x.cwiseProduct(risk.d).dot(x);
    viol = std::max(0.0, gval - risk.sigma0);
    const double mu_next = std::max(0.0, mu + pen * (gval - risk.sigma0));
    const bool settled =
        mu_next == mu ||
        (k > 0 && (x - x_prev).lpNorm<Eigen::Infinity>() <=
                      1e-9 * (1.0 + x.lpNorm<Eigen::Infinity>()));
    if (viol <= opts_.risk.feas_tol && settled) return x;
    if (viol > 0.25 * prev_viol && viol > opts_.risk.feas_tol)
      pen = std::min(pen * 2.0, 1e8);
    mu = mu_next;
    prev_viol = std::max(viol, 1e-300);
  }
  throw RiskInfeasibleError(
      "inner solve: risk multiplier loop exhausted without feasibility", viol);
}

Vector solve_x_subproblem(const ProblemSpec& spec, const Vector& y,
                          const Vector& lambda, double rho,
                          const InnerSolverOpts& opts,
                          std::optional<Vector> warm) {
  if (rho <= 0.0)
    throw std::invalid_argument("solve_x_subproblem: rho must be > 0");
  InnerSolver solver(spec, opts);
  return solver.solve(y, lambda, rho, warm ? *warm : y);
}

}  // namespace ssal
