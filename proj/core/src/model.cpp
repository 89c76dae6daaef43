#include "ssal/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ssal {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void SemicontinuousSet::validate() const {
  require(a.size() == b.size(), "semicontinuous set: a and b sizes differ");
  require(a.size() > 0, "semicontinuous set: empty bounds");
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    require(a[i] > 0.0, "semicontinuous set: a must be positive");
    require(a[i] <= b[i], "semicontinuous set: requires a <= b");
  }
  require(K >= 1 && K <= static_cast<int>(a.size()),
          "semicontinuous set: K out of range [1, n]");
}

bool SemicontinuousSet::contains(const Vector& y, double tol) const {
  if (y.size() != a.size()) return false;
  int nnz = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) continue;
    ++nnz;
    if (y[i] < a[i] - tol || y[i] > b[i] + tol) return false;
  }
  return nnz <= K;
}

void ConvexSetX::validate(int n) const {
  if (box) {
    require(box->lower.size() == n && box->upper.size() == n,
            "convex set: box dimension mismatch");
    for (int i = 0; i < n; ++i)
      require(box->lower[i] <= box->upper[i],
              "convex set: box lower exceeds upper");
  }
  if (halfspace) {
    require(halfspace->mu.size() == n,
            "convex set: halfspace dimension mismatch");
    require(halfspace->mu.norm() > 0.0, "convex set: halfspace normal is zero");
  }
  if (quad_risk) {
    require(quad_risk->d.size() == n,
            "convex set: quad_risk dimension mismatch");
    require((quad_risk->d.array() >= 0.0).all(),
            "convex set: quad_risk diagonal must be nonnegative");
  }
}

double ConvexSetX::max_violation(const Vector& x) const {
  double v = 0.0;
  if (box) {
    v = std::max(v, (box->lower - x).maxCoeff());
    v = std::max(v, (x - box->upper).maxCoeff());
  }
  if (simplex) v = std::max(v, std::abs(x.sum() - 1.0));
  if (halfspace) v = std::max(v, halfspace->rho0 - halfspace->mu.dot(x));
  if (quad_risk)
    v = std::max(v, x.cwiseProduct(quad_risk->d).dot(x) - quad_risk->sigma0);
  return v;
}

void ProblemSpec::validate() const {
  require(n > 0, "problem: dimension must be positive");
  if (const auto* q = std::get_if<QuadraticForm>(&objective)) {
    require(q->M.rows() == n && q->M.cols() == n,
            "problem: quadratic form dimension mismatch");
    const double scale = std::max(1.0, q->M.cwiseAbs().maxCoeff());
    require((q->M - q->M.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale,
            "problem: quadratic form matrix must be symmetric");
  } else {
    const auto& ls = std::get<LeastSquares>(objective);
    require(ls.A.cols() == n, "problem: least-squares column count != n");
    require(ls.A.rows() == ls.b.size(),
            "problem: least-squares observation length mismatch");
  }
  x_set.validate(n);
  y_set.validate();
  require(y_set.dim() == n, "problem: semicontinuous set dimension mismatch");
}

double eval_objective(const ProblemSpec& spec, const Vector& x) {
  if (x.size() != spec.n)
    throw std::invalid_argument("eval_objective: dimension mismatch");
  if (const auto* q = std::get_if<QuadraticForm>(&spec.objective))
    return x.dot(q->M * x);
  const auto& ls = std::get<LeastSquares>(spec.objective);
  return 0.5 * (ls.A * x - ls.b).squaredNorm();
}

Vector eval_gradient(const ProblemSpec& spec, const Vector& x) {
  if (x.size() != spec.n)
    throw std::invalid_argument("eval_gradient: dimension mismatch");
  if (const auto* q = std::get_if<QuadraticForm>(&spec.objective))
    return 2.0 * (q->M * x);
  const auto& ls = std::get<LeastSquares>(spec.objective);
  return ls.A.transpose() * (ls.A * x - ls.b);
}

double objective_eigenvalue_floor(const ProblemSpec& spec) {
  const auto* q = std::get_if<QuadraticForm>(&spec.objective);
  if (!q) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(q->M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace ssal
