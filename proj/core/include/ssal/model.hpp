#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>

namespace ssal {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = Eigen::VectorXi;

/// The nonconvex set Y = { y : ||y||_0 <= K, y_i in {0} u [a_i, b_i] }.
/// Bounds satisfy 0 < a_i <= b_i (a_i = b_i pins the active level),
/// and 1 <= K <= n (K = n disables the cardinality budget).
struct SemicontinuousSet {
  Vector a;
  Vector b;
  int K = 0;

  int dim() const { return static_cast<int>(a.size()); }
  void validate() const;

  /// True iff ||y||_0 <= K and every nonzero entry lies in [a_i, b_i]
  /// (up to `tol` on the interval membership).
  bool contains(const Vector& y, double tol = 0.0) const;
};

/// f(x) = x^T M x with M symmetric positive semidefinite.
struct QuadraticForm {
  Matrix M;
};

/// f(x) = 1/2 ||A x - b||^2.
struct LeastSquares {
  Matrix A;
  Vector b;
};

using ObjectiveKind = std::variant<QuadraticForm, LeastSquares>;

/// Descriptor of the closed convex set X as an intersection of optional
/// blocks. An empty descriptor means X = R^n.
struct ConvexSetX {
  struct Box {
    Vector lower;
    Vector upper;
  };
  struct Halfspace {
    Vector mu;     // constraint mu^T x >= rho0
    double rho0 = 0.0;
  };
  struct QuadRisk {
    Vector d;      // diagonal of D >= 0; constraint x^T D x <= sigma0
    double sigma0 = 0.0;
  };

  std::optional<Box> box;
  bool simplex = false;  // e^T x = 1
  std::optional<Halfspace> halfspace;
  std::optional<QuadRisk> quad_risk;

  bool empty() const { return !box && !simplex && !halfspace && !quad_risk; }
  void validate(int n) const;

  /// Largest violation over all present blocks at x (0 if feasible).
  double max_violation(const Vector& x) const;
};

/// A full problem instance: minimize f over X intersected with Y.
struct ProblemSpec {
  ObjectiveKind objective;
  ConvexSetX x_set;
  SemicontinuousSet y_set;
  int n = 0;

  void validate() const;
};

double eval_objective(const ProblemSpec& spec, const Vector& x);
Vector eval_gradient(const ProblemSpec& spec, const Vector& x);

/// Smallest eigenvalue of the quadratic-form matrix; advisory PSD check
/// for generated instances. Returns 0 for least-squares objectives.
double objective_eigenvalue_floor(const ProblemSpec& spec);

}  // namespace ssal
