#include <doctest.h>

#include "ssal/oracle.hpp"
#include "ssal/problems.hpp"
#include "ssal/solver.hpp"
#include "test_util.hpp"

using namespace ssal;
using namespace ssal::testing;

TEST_CASE("support enumeration counts and order") {
  SUBCASE("n=3 K=1 lists the empty set and the singletons") {
    const auto sets = enumerate_supports(3, 1);
    REQUIRE(sets.size() == 4);
    CHECK(sets[0].empty());
    CHECK(sets[1] == std::vector<int>{0});
    CHECK(sets[2] == std::vector<int>{1});
    CHECK(sets[3] == std::vector<int>{2});
  }
  SUBCASE("n=3 K=3 lists all eight subsets") {
    CHECK(enumerate_supports(3, 3).size() == 8);
  }
  SUBCASE("n=4 K=2 gives the binomial sum 1+4+6") {
    const auto sets = enumerate_supports(4, 2);
    CHECK(sets.size() == 11);
    CHECK(sets[5] == std::vector<int>{0, 1});  // lex order within a size
    CHECK(sets[10] == std::vector<int>{2, 3});
  }
  SUBCASE("dimension cap") {
    CHECK_THROWS_AS(enumerate_supports(25, 2), SizeCapError);
  }
}

TEST_CASE("hand-checked two-coordinate subset selection") {
  ProblemSpec spec;
  spec.n = 2;
  spec.objective = LeastSquares{Matrix::Identity(2, 2), Vector{{0.5, 0.02}}};
  spec.x_set.box = ConvexSetX::Box{Vector::Zero(2), Vector::Constant(2, 10.0)};
  spec.y_set = uniform_set(2, 0.1, 1.0, 1);
  const auto result = global_solve(spec);
  CHECK(result.support == std::vector<int>{0});
  CHECK(result.x_star[0] == doctest::Approx(0.5));
  CHECK(result.x_star[1] == 0.0);
  CHECK(result.objective == doctest::Approx(0.0002));
  CHECK(result.supports_examined == 3);
}

TEST_CASE("separable fast path agrees with the general solver route") {
  CounterRng rng(314);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int K = 1 + static_cast<int>(rng.below(n));
    const Vector w = random_vector(n, rng);
    ProblemSpec fast = projection_spec(w, uniform_set(n, 0.1, 1.0, K));
    // An always-slack halfspace leaves the optimum unchanged but routes the
    // solve through the projected-gradient path.
    ProblemSpec general = fast;
    general.x_set.halfspace =
        ConvexSetX::Halfspace{Vector::Ones(n), -1e6};
    const auto a = global_solve(fast);
    const auto b = global_solve(general);
    CHECK(std::abs(a.objective - b.objective) <= 1e-12);
  }
}

TEST_CASE("oracle dominates the splitting solver on small instances") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = gen_cs(6, 10, 3, 0.01, 7000 + seed);
    const auto report = solve(inst.spec, SolverParams::defaults_for(inst.spec));
    const auto oracle = global_solve(inst.spec);
    CHECK(oracle.objective <= report.objective_polished + 1e-8);
  }
}

TEST_CASE("objective is monotone in the cardinality budget") {
  const auto inst = gen_cs(6, 9, 1, 0.01, 123);
  double prev = std::numeric_limits<double>::infinity();
  for (int K = 1; K <= 5; ++K) {
    ProblemSpec spec = inst.spec;
    spec.y_set.K = K;
    const double obj = global_solve(spec).objective;
    CHECK(obj <= prev + 1e-12);
    prev = obj;
  }
}

TEST_CASE("full budget equals the best over explicit restrictions") {
  CounterRng rng(21);
  const int n = 4;
  ProblemSpec spec;
  spec.n = n;
  spec.objective = LeastSquares{random_matrix(6, n, rng), random_vector(6, rng)};
  spec.x_set.box = ConvexSetX::Box{Vector::Zero(n), Vector::Constant(n, 10.0)};
  spec.y_set = uniform_set(n, 0.1, 2.0, n);

  const auto oracle = global_solve(spec);
  double best = std::numeric_limits<double>::infinity();
  for_each_support(n, n, [&](const std::vector<int>& support) {
    IntVector z = IntVector::Zero(n);
    for (int i : support) z[i] = 1;
    try {
      best = std::min(best, polish(spec, z).second);
    } catch (const PolishInfeasibleError&) {
    }
  });
  CHECK(oracle.objective == doctest::Approx(best).epsilon(1e-10));
}

TEST_CASE("an unreachable budget makes every restriction infeasible") {
  ProblemSpec spec;
  spec.n = 2;
  spec.objective = QuadraticForm{Matrix::Identity(2, 2)};
  spec.x_set.simplex = true;
  spec.y_set = uniform_set(2, 0.1, 0.3, 2);  // max mass 0.6 < 1
  CHECK_THROWS_AS(global_solve(spec), GlobalInfeasibleError);
}

TEST_CASE("oracle rejects instances beyond the cap") {
  ProblemSpec spec = projection_spec(Vector::Zero(30),
                                     uniform_set(30, 0.1, 1.0, 2));
  CHECK_THROWS_AS(global_solve(spec), SizeCapError);
}
