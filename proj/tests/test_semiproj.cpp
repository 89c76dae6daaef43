#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>

#include "ssal/semiproj.hpp"
#include "test_util.hpp"

using namespace ssal;
using namespace ssal::testing;

TEST_CASE("branch costs split by the position of w") {
  SUBCASE("w inside the interval") {
    const auto c = branch_costs(Vector{{0.5}}, uniform_set(1, 0.1, 1.0, 1));
    CHECK(c.q[0] == doctest::Approx(0.25));
    CHECK(c.r[0] == 0.0);
    CHECK(c.y_on[0] == doctest::Approx(0.5));
  }
  SUBCASE("w below the floor") {
    const auto c = branch_costs(Vector{{0.4}}, uniform_set(1, 1.0, 2.0, 1));
    CHECK(c.q[0] == doctest::Approx(0.16));
    CHECK(c.r[0] == doctest::Approx(0.36));
    CHECK(c.y_on[0] == doctest::Approx(1.0));
  }
  SUBCASE("w above the ceiling") {
    const auto c = branch_costs(Vector{{3.0}}, uniform_set(1, 1.0, 2.0, 1));
    CHECK(c.q[0] == doctest::Approx(9.0));
    CHECK(c.r[0] == doctest::Approx(1.0));
    CHECK(c.y_on[0] == doctest::Approx(2.0));
  }
  SUBCASE("y_on always lands in [a, b]") {
    CounterRng rng(3);
    const auto Y = uniform_set(20, 0.2, 0.9, 5);
    const auto c = branch_costs(5.0 * random_vector(20, rng), Y);
    CHECK((c.y_on.array() >= Y.a.array()).all());
    CHECK((c.y_on.array() <= Y.b.array()).all());
    CHECK((c.r - (c.y_on - c.w).cwiseAbs2()).norm() == 0.0);
  }
}

namespace {

// Brute force over all 0/1 vectors with e^T z <= K.
double knapsack_brute_force(const BranchCosts& costs, int K) {
  const int n = static_cast<int>(costs.q.size());
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) > K) continue;
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      total += (mask >> i) & 1 ? costs.r[i] : costs.q[i];
    best = std::min(best, total);
  }
  return best;
}

double selection_value(const BranchCosts& costs, const IntVector& z) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    total += z[i] ? costs.r[i] : costs.q[i];
  return total;
}

}  // namespace

TEST_CASE("support selection solves the knapsack step") {
  SUBCASE("worked 3-coordinate case") {
    const auto costs = branch_costs(Vector{{3.0, 2.0, 0.5}},
                                    uniform_set(3, 1.0, 4.0, 3));
    CHECK(costs.r[0] - costs.q[0] == doctest::Approx(-9.0));
    CHECK(costs.r[1] - costs.q[1] == doctest::Approx(-4.0));
    CHECK(costs.r[2] - costs.q[2] == doctest::Approx(0.0));
    const auto sel = select_support(costs, 2);
    CHECK(sel.z[0] == 1);
    CHECK(sel.z[1] == 1);
    CHECK(sel.z[2] == 0);
    CHECK(selection_value(costs, sel.z) ==
          doctest::Approx(knapsack_brute_force(costs, 2)));
  }
  SUBCASE("all-positive v keeps the empty support") {
    const auto costs = branch_costs(Vector{{0.1, 0.2}},
                                    uniform_set(2, 1.0, 2.0, 2));
    CHECK(select_support(costs, 2).z.sum() == 0);
  }
  SUBCASE("K = n keeps exactly the nonpositive entries") {
    BranchCosts costs;
    costs.q = Vector{{1.0, 0.5, 0.7}};
    costs.r = Vector{{0.0, 1.0, 0.5}};
    costs.w = Vector::Zero(3);
    costs.y_on = Vector::Zero(3);
    const auto sel = select_support(costs, 3);
    CHECK(sel.z[0] == 1);
    CHECK(sel.z[1] == 0);
    CHECK(sel.z[2] == 1);
  }
  SUBCASE("ties resolve toward the lower index") {
    const auto costs = branch_costs(Vector{{2.0, 2.0, 2.0}},
                                    uniform_set(3, 1.0, 4.0, 3));
    const auto sel = select_support(costs, 2);
    CHECK(sel.z[0] == 1);
    CHECK(sel.z[1] == 1);
    CHECK(sel.z[2] == 0);
  }
  SUBCASE("random selections match brute force") {
    CounterRng rng(91);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng.below(8));
      const int K = 1 + static_cast<int>(rng.below(n));
      const auto Y = uniform_set(n, 0.1, 1.0, K);
      const auto costs = branch_costs(random_vector(n, rng), Y);
      const auto sel = select_support(costs, K);
      CHECK(sel.z.sum() <= K);
      CHECK(selection_value(costs, sel.z) ==
            doctest::Approx(knapsack_brute_force(costs, K)).epsilon(1e-12));
    }
  }
}

TEST_CASE("projection onto the semicontinuous cardinality set") {
  SUBCASE("keeps the dominant coordinate") {
    const auto res = project_semicard(Vector{{0.5, 0.02}},
                                      uniform_set(2, 0.1, 1.0, 1));
    CHECK(res.y[0] == doctest::Approx(0.5));
    CHECK(res.y[1] == 0.0);
    CHECK(res.z[0] == 1);
    CHECK(res.z[1] == 0);
  }
  SUBCASE("members project to themselves") {
    const Vector w{{0.5, 0.0, 0.9}};
    const auto res = project_semicard(w, uniform_set(3, 0.1, 1.0, 2));
    CHECK((res.y - w).norm() == 0.0);
  }
  SUBCASE("zero branch wins when w is under half the floor") {
    const auto res = project_semicard(Vector{{0.04}},
                                      uniform_set(1, 0.1, 1.0, 1));
    CHECK(res.y[0] == 0.0);
    CHECK(res.z[0] == 0);
  }
}

TEST_CASE("projection properties") {
  CounterRng rng(1234);

  SUBCASE("feasibility and oracle equivalence on random instances") {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(9));  // up to 10
      const int K = 1 + static_cast<int>(rng.below(n));
      const auto Y = uniform_set(n, 0.1, 1.0, K);
      const Vector w = random_vector(n, rng);
      const auto res = project_semicard(w, Y);
      CHECK(Y.contains(res.y));
      const double obj = (res.y - w).squaredNorm();
      CHECK(std::abs(obj - projection_enum_objective(w, Y)) <= 1e-10);
    }
  }

  SUBCASE("idempotence is exact") {
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 3 + static_cast<int>(rng.below(6));
      const auto Y = uniform_set(n, 0.1, 1.0, 1 + static_cast<int>(rng.below(n)));
      const auto first = project_semicard(2.0 * random_vector(n, rng), Y);
      const auto second = project_semicard(first.y, Y);
      CHECK((second.y - first.y).norm() == 0.0);
    }
  }

  SUBCASE("permutation equivariance with uniform bounds") {
    const int n = 8;
    const auto Y = uniform_set(n, 0.1, 1.0, 3);
    const Vector w = random_vector(n, rng);  // ties have probability zero
    const auto base = project_semicard(w, Y);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    Vector wp(n);
    for (int i = 0; i < n; ++i) wp[perm[i]] = w[i];
    const auto permuted = project_semicard(wp, Y);
    for (int i = 0; i < n; ++i) CHECK(permuted.y[perm[i]] == base.y[i]);
  }

  SUBCASE("nonuniform and collapsed intervals still match enumeration") {
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(7));
      const int K = 1 + static_cast<int>(rng.below(n));
      SemicontinuousSet Y;
      Y.a.resize(n);
      Y.b.resize(n);
      Y.K = K;
      for (int i = 0; i < n; ++i) {
        Y.a[i] = rng.uniform(0.05, 0.8);
        // Every third coordinate collapses to a fixed level a == b.
        Y.b[i] = (i % 3 == 0) ? Y.a[i] : Y.a[i] + rng.uniform(0.0, 1.5);
      }
      const Vector w = random_vector(n, rng);
      const auto res = project_semicard(w, Y);
      CHECK(Y.contains(res.y));
      CHECK(std::abs((res.y - w).squaredNorm() -
                     projection_enum_objective(w, Y)) <= 1e-10);
    }
  }

  SUBCASE("objective decomposes into q plus selected v") {
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(7));
      const int K = 1 + static_cast<int>(rng.below(n));
      const auto Y = uniform_set(n, 0.1, 1.0, K);
      const Vector w = random_vector(n, rng);
      const auto costs = branch_costs(w, Y);
      const auto sel = select_support(costs, K);
      const auto res = project_semicard(w, Y);
      const double direct = (res.y - w).squaredNorm();
      const double decomposed =
          costs.q.sum() + sel.v.dot(sel.z.cast<double>());
      CHECK(direct == doctest::Approx(decomposed).epsilon(1e-12));
    }
  }
}
