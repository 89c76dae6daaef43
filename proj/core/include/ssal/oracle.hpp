#pragma once

#include <vector>

#include "ssal/errors.hpp"
#include "ssal/inner.hpp"
#include "ssal/model.hpp"

namespace ssal {

struct OracleResult {
  Vector x_star;
  std::vector<int> support;
  double objective = 0.0;
  long supports_examined = 0;
};

inline constexpr int kOracleDimensionCap = 24;

/// Visits every subset of {0..n-1} of size <= K exactly once, smaller sizes
/// first and lexicographic within a size. F receives a const
/// std::vector<int>& with the 0-based members in ascending order.
template <typename F>
void for_each_support(int n, int K, F&& visit);

/// Materialized variant of for_each_support (mind the count, sum of C(n,j)).
std::vector<std::vector<int>> enumerate_supports(int n, int K);

/// Exhaustive global solve: every support restriction is solved as a convex
/// program at tightened tolerance and the best is returned. Ties keep the
/// first support in enumeration order. Requires n <= 24.
OracleResult global_solve(const ProblemSpec& spec,
                          const InnerSolverOpts& opts = {});

template <typename F>
void for_each_support(int n, int K, F&& visit) {
  if (n < 0 || K < 0 || K > n)
    throw std::invalid_argument("for_each_support: bad arguments");
  if (n > kOracleDimensionCap)
    throw SizeCapError("for_each_support: n exceeds the enumeration cap");
  std::vector<int> subset;
  visit(static_cast<const std::vector<int>&>(subset));  // the empty support
  for (int size = 1; size <= K; ++size) {
    subset.resize(size);
    for (int i = 0; i < size; ++i) subset[i] = i;
    while (true) {
      visit(static_cast<const std::vector<int>&>(subset));
      int pos = size - 1;
      while (pos >= 0 && subset[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < size; ++i) subset[i] = subset[i - 1] + 1;
    }
  }
}

}  // namespace ssal
