#include "ssal/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ssal/errors.hpp"
#include "ssal/inner.hpp"
#include "ssal/rng.hpp"

namespace ssal {

namespace {

constexpr int kFactorSeriesLength = 200;
constexpr int kMaxRetries = 10;

// One attempt at drawing a portfolio instance. Draw order is fixed:
// alpha (n), beta (n x m row-major), factor series (T x m row-major),
// sigma_eps (n).
PortfolioInstance draw_portfolio(int n, int m, std::uint64_t seed,
                                 const PortfolioParams& params, bool& ok) {
  CounterRng rng(seed);
  PortfolioInstance inst;
  inst.seed = seed;
  inst.factor_count = m;

  inst.alpha.resize(n);
  for (int i = 0; i < n; ++i) inst.alpha[i] = rng.uniform(0.0, 0.03);

  Matrix beta(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) beta(i, j) = rng.uniform(0.3, 2.0) / m;

  Matrix series(kFactorSeriesLength, m);
  for (int t = 0; t < kFactorSeriesLength; ++t)
    for (int j = 0; j < m; ++j) series(t, j) = rng.uniform(0.0, 0.4);
  const Vector mean = series.colwise().mean();
  const Matrix centered = series.rowwise() - mean.transpose();
  const Matrix Sigma =
      (centered.transpose() * centered) / double(kFactorSeriesLength - 1);

  Vector sigma_eps(n);
  for (int i = 0; i < n; ++i) sigma_eps[i] = rng.uniform(0.0, 0.002);

  Eigen::SelfAdjointEigenSolver<Matrix> es(Sigma, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < 1e-12) {
    ok = false;
    return inst;
  }

  Matrix M = beta * Sigma * beta.transpose();
  M.diagonal() += sigma_eps;
  M = 0.5 * (M + M.transpose()).eval();

  inst.spec.n = n;
  inst.spec.objective = QuadraticForm{std::move(M)};
  inst.spec.x_set.box =
      ConvexSetX::Box{Vector::Zero(n), Vector::Constant(n, params.b)};
  inst.spec.x_set.simplex = true;
  inst.spec.x_set.halfspace = ConvexSetX::Halfspace{inst.alpha, params.rho0};
  if (params.with_risk)
    inst.spec.x_set.quad_risk = ConvexSetX::QuadRisk{sigma_eps, params.sigma0};
  inst.spec.y_set.a = Vector::Constant(n, params.a);
  inst.spec.y_set.b = Vector::Constant(n, params.b);
  inst.spec.y_set.K = params.K;

  // The descriptor must admit a feasible point; one projection call checks.
  try {
    ConvexSetX polytope = inst.spec.x_set;
    polytope.quad_risk.reset();
    InnerSolverOpts opts;
    const Vector probe =
        project_polytope(Vector::Constant(n, 1.0 / n), polytope, opts);
    ok = polytope.max_violation(probe) <= 1e-8;
  } catch (const InnerSolverError&) {
    ok = false;
  }
  return inst;
}

}  // namespace

PortfolioInstance gen_portfolio(int n, int m, std::uint64_t seed,
                                const PortfolioParams& params) {
  if (n < 2) throw std::invalid_argument("gen_portfolio: n must be >= 2");
  if (m < 1 || m > n)
    throw std::invalid_argument("gen_portfolio: m must be in [1, n]");
  if (params.K < 1 || params.K > n)
    throw std::invalid_argument("gen_portfolio: K out of range");

  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    bool ok = true;
    PortfolioInstance inst =
        draw_portfolio(n, m, seed + 0x100000000ULL * attempt, params, ok);
    if (ok) {
      inst.seed = seed;  // retries shift an internal sub-seed only
      inst.spec.validate();
      return inst;
    }
  }
  throw std::runtime_error(
      "gen_portfolio: could not draw a well-posed instance after retries");
}

CsInstance gen_cs(int p, int n, int K, double sigma2, std::uint64_t seed,
                  const CsParams& params) {
  if (p < 1 || n < 1) throw std::invalid_argument("gen_cs: bad dimensions");
  if (K < 1 || K >= n) throw std::invalid_argument("gen_cs: requires 1 <= K < n");
  if (sigma2 < 0.0) throw std::invalid_argument("gen_cs: sigma2 must be >= 0");

  CounterRng rng(seed);
  CsInstance inst;
  inst.seed = seed;
  inst.noise_sigma2 = sigma2;

  Matrix A(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.gaussian();

  if (p <= n) {
    // Row orthonormalization: QR of A^T, keep the thin Q with a positive
    // diagonal convention so the result is unambiguous.
    Eigen::HouseholderQR<Matrix> qr(A.transpose());
    Matrix Q = qr.householderQ() * Matrix::Identity(n, p);
    const Matrix R = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
    for (int i = 0; i < p; ++i)
      if (R(i, i) < 0.0) Q.col(i) = -Q.col(i);
    A = Q.transpose();
  }

  // Support: first K positions of a partial Fisher-Yates shuffle, sorted.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < K; ++i) {
    const int j = i + static_cast<int>(rng.below(n - i));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> support(perm.begin(), perm.begin() + K);
  std::sort(support.begin(), support.end());

  inst.f_true = Vector::Zero(n);
  for (int k = 0; k < K; ++k) {
    double v = 0.0;
    while (v == 0.0) v = std::abs(rng.gaussian());
    inst.f_true[support[k]] = v;
  }

  Vector b = A * inst.f_true;
  const double noise_std = std::sqrt(sigma2);
  for (int i = 0; i < p; ++i) b[i] += noise_std * rng.gaussian();

  inst.spec.n = n;
  inst.spec.objective = LeastSquares{A, std::move(b)};
  inst.spec.x_set.box =
      ConvexSetX::Box{Vector::Zero(n), Vector::Constant(n, params.u)};
  inst.spec.y_set.a = Vector::Constant(n, params.a);
  inst.spec.y_set.b = Vector::Constant(n, params.u);
  inst.spec.y_set.K = K;
  inst.spec.validate();

  if (p <= n) {
    const Matrix AAt = A * A.transpose();
    const double defect =
        (AAt - Matrix::Identity(p, p)).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
      throw std::runtime_error("gen_cs: row orthonormalization failed");
  }
  int nnz = 0;
  for (int i = 0; i < n; ++i) nnz += inst.f_true[i] != 0.0 ? 1 : 0;
  if (nnz != K) throw std::runtime_error("gen_cs: support size drifted");
  return inst;
}

double mse(const Vector& f, const Vector& f_hat) {
  if (f.size() != f_hat.size())
    throw std::invalid_argument("mse: dimension mismatch");
  return (f - f_hat).squaredNorm() / static_cast<double>(f.size());
}

Vector baseline_hard_threshold(const CsInstance& inst) {
  const auto& ls = std::get<LeastSquares>(inst.spec.objective);
  const Vector x_ls = ls.A.transpose() * ls.b;
  const int n = inst.spec.n;
  const int K = inst.spec.y_set.K;

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&x_ls](int i, int j) {
    return std::abs(x_ls[i]) > std::abs(x_ls[j]);
  });

  Vector out = Vector::Zero(n);
  for (int k = 0; k < std::min(K, n); ++k) {
    const int i = idx[k];
    out[i] = std::clamp(x_ls[i], inst.spec.y_set.a[i], inst.spec.y_set.b[i]);
  }
  return out;
}

}  // namespace ssal
