#pragma once

#include <cstdint>

#include "ssal/model.hpp"

namespace ssal {

/// Factor-model portfolio instance: f(x) = x^T (Q + D) x over the budget
/// simplex, a return floor, per-asset caps and (optionally) the
/// nonsystematic-risk ball x^T D x <= sigma0.
struct PortfolioInstance {
  ProblemSpec spec;
  Vector alpha;        // expected returns (the halfspace normal)
  int factor_count = 0;
  std::uint64_t seed = 0;
};

struct PortfolioParams {
  double rho0 = 2e-3;    // prescribed return level
  double sigma0 = 1e-3;  // nonsystematic risk cap
  double a = 0.01;
  double b = 0.3;
  int K = 10;
  bool with_risk = true;
};

/// Compressed-sensing / subset-selection instance:
/// f(x) = 1/2 ||A x - b||^2 with A row-orthonormalized (p <= n),
/// b = A f_true + noise.
struct CsInstance {
  ProblemSpec spec;
  Vector f_true;
  double noise_sigma2 = 0.0;
  std::uint64_t seed = 0;
};

struct CsParams {
  double a = 1e-5;  // semicontinuous floor
  double u = 10.0;  // variable cap (box upper and semicontinuous ceiling)
};

PortfolioInstance gen_portfolio(int n, int m, std::uint64_t seed,
                                const PortfolioParams& params = {});

CsInstance gen_cs(int p, int n, int K, double sigma2, std::uint64_t seed,
                  const CsParams& params = {});

/// (1/n) ||f - f_hat||^2.
double mse(const Vector& f, const Vector& f_hat);

/// Naive recovery baseline: back-project the observation (A^T b), keep the
/// K largest-magnitude entries, clamp them into the semicontinuous interval
/// and zero the rest. The result is always a member of Y.
Vector baseline_hard_threshold(const CsInstance& inst);

}  // namespace ssal
