#include "ssal/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ssal/errors.hpp"

namespace ssal {

namespace {

constexpr double kActiveTol = 1e-6;
constexpr int kNnlsCap = 1000;

// Lawson-Hanson active-set NNLS: minimize ||C t - rhs|| over t >= 0.
Vector nnls(const Matrix& C, const Vector& rhs) {
  const int cols = static_cast<int>(C.cols());
  Vector t = Vector::Zero(cols);
  if (cols == 0) return t;

  std::vector<bool> passive(cols, false);
  const double wtol =
      1e-12 * std::max(1.0, C.cwiseAbs().maxCoeff()) * std::max(1.0, rhs.norm());

  for (int iter = 0; iter < kNnlsCap; ++iter) {
    const Vector w = C.transpose() * (rhs - C * t);
    int best = -1;
    double wmax = wtol;
    for (int j = 0; j < cols; ++j)
      if (!passive[j] && w[j] > wmax) {
        wmax = w[j];
        best = j;
      }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < kNnlsCap; ++inner) {
      std::vector<int> pidx;
      for (int j = 0; j < cols; ++j)
        if (passive[j]) pidx.push_back(j);
      Matrix Cp(C.rows(), pidx.size());
      for (std::size_t k = 0; k < pidx.size(); ++k) Cp.col(k) = C.col(pidx[k]);
      const Vector s = Cp.colPivHouseholderQr().solve(rhs);

      bool all_positive = true;
      double alpha = 1.0;
      for (std::size_t k = 0; k < pidx.size(); ++k) {
        if (s[k] <= 0.0) {
          all_positive = false;
          const double tk = t[pidx[k]];
          if (tk - s[k] > 0.0) alpha = std::min(alpha, tk / (tk - s[k]));
        }
      }
      if (all_positive) {
        t.setZero();
        for (std::size_t k = 0; k < pidx.size(); ++k) t[pidx[k]] = s[k];
        break;
      }
      for (std::size_t k = 0; k < pidx.size(); ++k) {
        const int j = pidx[k];
        t[j] += alpha * (s[k] - t[j]);
        if (t[j] <= 1e-14) {
          t[j] = 0.0;
          passive[j] = false;
        }
      }
    }
  }
  return t;
}

}  // namespace

StationarityCertificate stationarity_residual(const ProblemSpec& spec,
                                              const Vector& x,
                                              double zero_tol) {
  if (x.size() != spec.n)
    throw std::invalid_argument("stationarity: dimension mismatch");
  if (zero_tol <= 0.0)
    throw std::invalid_argument("stationarity: zero_tol must be > 0");
  if (spec.x_set.max_violation(x) > 1e-6)
    throw FeasibilityError("stationarity: point violates X beyond tolerance");

  StationarityCertificate cert;
  for (int i = 0; i < spec.n; ++i)
    if (std::abs(x[i]) > zero_tol) cert.support.push_back(i);
  const int m = static_cast<int>(cert.support.size());

  const Vector grad = eval_gradient(spec, x);
  Vector grad_J(m);
  for (int k = 0; k < m; ++k) grad_J[k] = grad[cert.support[k]];

  // Candidate multiplier directions, restricted to the support coordinates.
  // Signed: a free coefficient is split into a +/- column pair for the NNLS.
  enum class Kind { kNuUpper, kEtaLower, kBoxLower, kBoxUpper, kSimplex,
                    kHalfspace, kQuadRisk };
  struct Column {
    Kind kind;
    int index;    // coordinate for per-entry kinds, sign flag for simplex
    Vector dir;
  };
  std::vector<Column> columns;

  for (int k = 0; k < m; ++k) {
    const int i = cert.support[k];
    if (std::abs(x[i] - spec.y_set.b[i]) <= kActiveTol) {
      Vector e = Vector::Zero(m);
      e[k] = 1.0;
      columns.push_back({Kind::kNuUpper, i, e});
    }
    if (std::abs(x[i] - spec.y_set.a[i]) <= kActiveTol) {
      Vector e = Vector::Zero(m);
      e[k] = -1.0;
      columns.push_back({Kind::kEtaLower, i, e});
    }
    if (spec.x_set.box) {
      if (std::abs(x[i] - spec.x_set.box->lower[i]) <= kActiveTol) {
        Vector e = Vector::Zero(m);
        e[k] = -1.0;
        columns.push_back({Kind::kBoxLower, i, e});
      }
      if (std::abs(x[i] - spec.x_set.box->upper[i]) <= kActiveTol) {
        Vector e = Vector::Zero(m);
        e[k] = 1.0;
        columns.push_back({Kind::kBoxUpper, i, e});
      }
    }
  }
  if (spec.x_set.simplex) {
    Vector ones = Vector::Ones(m);
    columns.push_back({Kind::kSimplex, +1, ones});
    columns.push_back({Kind::kSimplex, -1, -ones});
  }
  if (spec.x_set.halfspace) {
    const auto& hs = *spec.x_set.halfspace;
    const double scale = std::max(1.0, std::abs(hs.rho0));
    if (hs.mu.dot(x) - hs.rho0 <= kActiveTol * scale) {
      Vector dir(m);
      for (int k = 0; k < m; ++k) dir[k] = -hs.mu[cert.support[k]];
      columns.push_back({Kind::kHalfspace, 0, dir});
    }
  }
  if (spec.x_set.quad_risk) {
    const auto& qr = *spec.x_set.quad_risk;
    const double g = x.cwiseProduct(qr.d).dot(x);
    const double scale = std::max(1.0, std::abs(qr.sigma0));
    if (qr.sigma0 - g <= kActiveTol * scale) {
      Vector dir(m);
      for (int k = 0; k < m; ++k) {
        const int i = cert.support[k];
        dir[k] = 2.0 * qr.d[i] * x[i];
      }
      columns.push_back({Kind::kQuadRisk, 0, dir});
    }
  }

  Matrix C(m, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) C.col(j) = columns[j].dir;
  const Vector t = nnls(C, -grad_J);

  cert.nu = Vector::Zero(spec.n);
  cert.eta = Vector::Zero(spec.n);
  cert.xcone.box_lower = Vector::Zero(spec.n);
  cert.xcone.box_upper = Vector::Zero(spec.n);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    switch (columns[j].kind) {
      case Kind::kNuUpper: cert.nu[columns[j].index] += t[j]; break;
      case Kind::kEtaLower: cert.eta[columns[j].index] += t[j]; break;
      case Kind::kBoxLower: cert.xcone.box_lower[columns[j].index] += t[j]; break;
      case Kind::kBoxUpper: cert.xcone.box_upper[columns[j].index] += t[j]; break;
      case Kind::kSimplex: cert.xcone.simplex += columns[j].index * t[j]; break;
      case Kind::kHalfspace: cert.xcone.halfspace += t[j]; break;
      case Kind::kQuadRisk: cert.xcone.quad_risk += t[j]; break;
    }
  }

  const Vector fitted = grad_J + C * t;
  cert.residual = fitted.norm();

  // kappa zeroes the off-support coordinates of the full system exactly.
  cert.kappa = Vector::Zero(spec.n);
  for (int i = 0, k = 0; i < spec.n; ++i) {
    if (k < m && cert.support[k] == i) {
      ++k;
      continue;
    }
    double ncone = cert.xcone.simplex - cert.xcone.box_lower[i] +
                   cert.xcone.box_upper[i];
    if (spec.x_set.halfspace)
      ncone -= cert.xcone.halfspace * spec.x_set.halfspace->mu[i];
    if (spec.x_set.quad_risk)
      ncone += cert.xcone.quad_risk * 2.0 * spec.x_set.quad_risk->d[i] * x[i];
    cert.kappa[i] = -(grad[i] + cert.nu[i] - cert.eta[i] + ncone);
  }
  return cert;
}

}  // namespace ssal
