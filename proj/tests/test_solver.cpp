#include <doctest.h>

#include "ssal/problems.hpp"
#include "ssal/semiproj.hpp"
#include "ssal/solver.hpp"
#include "test_util.hpp"

using namespace ssal;
using namespace ssal::testing;

namespace {

// 1/2 ||x - c||^2 over a box with a semicontinuous budget.
ProblemSpec shifted_target(const Vector& c, double a, double b, int K) {
  ProblemSpec spec;
  spec.n = static_cast<int>(c.size());
  spec.objective = LeastSquares{Matrix::Identity(spec.n, spec.n), c};
  spec.x_set.box = ConvexSetX::Box{Vector::Zero(spec.n), Vector::Ones(spec.n)};
  spec.y_set = uniform_set(spec.n, a, b, K);
  return spec;
}

}  // namespace

TEST_CASE("one-dimensional splitting runs find the global point") {
  SUBCASE("interior target keeps the coordinate active") {
    const auto spec = shifted_target(Vector{{0.5}}, 0.1, 1.0, 1);
    const auto report = solve(spec, SolverParams::defaults_for(spec));
    CHECK(report.converged);
    CHECK(report.polish_feasible);
    CHECK(report.x_polished[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(report.objective_polished == doctest::Approx(0.0).epsilon(1e-8));
  }
  SUBCASE("a target below half the floor switches off") {
    // cost at 0: 0.0008 beats cost at the floor 0.1: 0.0018
    const auto spec = shifted_target(Vector{{0.04}}, 0.1, 1.0, 1);
    const auto report = solve(spec, SolverParams::defaults_for(spec));
    CHECK(report.converged);
    CHECK(report.x_polished[0] == 0.0);
    CHECK(report.objective_polished == doctest::Approx(0.0008));
  }
}

TEST_CASE("two-dimensional run selects the dominant support") {
  const auto spec = shifted_target(Vector{{0.5, 0.4}}, 0.1, 1.0, 1);
  const auto report = solve(spec, SolverParams::defaults_for(spec));
  CHECK(report.converged);
  CHECK(report.z_final[0] == 1);
  CHECK(report.z_final[1] == 0);
  CHECK(report.x_polished[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(report.x_polished[1] == 0.0);
}

TEST_CASE("multiplier update formula") {
  SUBCASE("no gap leaves lambda unchanged") {
    const Vector l = update_multiplier(Vector::Zero(2), Vector::Ones(2),
                                       Vector::Ones(2), 0.3, 1.0);
    CHECK(l.norm() == 0.0);
  }
  SUBCASE("scalar case") {
    const Vector l = update_multiplier(Vector{{1.0}}, Vector{{2.0}},
                                       Vector{{1.0}}, 0.3, 1.0);
    CHECK(l[0] == doctest::Approx(1.3));
  }
  SUBCASE("componentwise with omega * rho") {
    const Vector l = update_multiplier(Vector::Zero(2), Vector{{0.5, -0.5}},
                                       Vector::Zero(2), 1.0, 2.0);
    CHECK(l[0] == doctest::Approx(1.0));
    CHECK(l[1] == doctest::Approx(-1.0));
  }
  SUBCASE("identity holds to machine precision") {
    CounterRng rng(5);
    const Vector lambda = random_vector(6, rng);
    const Vector y = random_vector(6, rng);
    const Vector x = random_vector(6, rng);
    const Vector next = update_multiplier(lambda, y, x, 0.3, 1.7);
    CHECK(((next - lambda) / (0.3 * 1.7) - (y - x)).lpNorm<Eigen::Infinity>() <=
          1e-14);
  }
}

TEST_CASE("polish restores joint feasibility") {
  SUBCASE("full support reduces to the bounded convex solve") {
    const auto spec = shifted_target(Vector{{0.5, 0.7}}, 0.1, 1.0, 2);
    const auto [x, obj] = polish(spec, IntVector::Ones(2));
    CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(x[1] == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(obj == doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("restricted least squares with one coordinate pinned to zero") {
    ProblemSpec spec;
    spec.n = 2;
    Matrix A(2, 2);
    A << 1.0, 0.2, 0.1, 1.0;
    spec.objective = LeastSquares{A, Vector{{0.6, 0.3}}};
    spec.x_set.box = ConvexSetX::Box{Vector::Zero(2), Vector::Constant(2, 10.0)};
    spec.y_set = uniform_set(2, 1e-5, 10.0, 1);
    IntVector z(2);
    z << 1, 0;
    const auto [x, obj] = polish(spec, z);
    CHECK(x[1] == 0.0);
    // 1-d closed form: min over x1 of 1/2 ||A.col(0) x1 - b||^2
    const double t =
        A.col(0).dot(Vector{{0.6, 0.3}}) / A.col(0).squaredNorm();
    CHECK(x[0] == doctest::Approx(std::clamp(t, 1e-5, 10.0)).epsilon(1e-7));
  }
  SUBCASE("unreachable budget reports infeasibility") {
    ProblemSpec spec;
    spec.n = 3;
    spec.objective = QuadraticForm{Matrix::Identity(3, 3)};
    spec.x_set.simplex = true;
    spec.y_set = uniform_set(3, 0.1, 0.3, 2);
    IntVector z(3);
    z << 1, 1, 0;  // at most 0.6 of budget reachable
    CHECK_THROWS_AS(polish(spec, z), PolishInfeasibleError);
  }
  SUBCASE("support above the budget is rejected") {
    const auto spec = shifted_target(Vector{{0.5, 0.7}}, 0.1, 1.0, 1);
    CHECK_THROWS_AS(polish(spec, IntVector::Ones(2)), std::invalid_argument);
  }
}

TEST_CASE("loop invariants hold along recorded iterates") {
  const auto inst = gen_cs(6, 10, 3, 0.01, 2024);
  auto params = SolverParams::defaults_for(inst.spec);
  params.record_iterates = true;
  const auto report = solve(inst.spec, params);
  REQUIRE(report.converged);
  REQUIRE(report.iterates.size() ==
          static_cast<std::size_t>(report.outer_iterations) + 1);

  for (std::size_t k = 0; k + 1 < report.iterates.size(); ++k) {
    const auto& cur = report.iterates[k];
    const auto& nxt = report.iterates[k + 1];
    // Exact multiplier identity (same expression as the solver).
    const Vector expected =
        update_multiplier(cur.lambda, nxt.y, nxt.x, params.omega, params.rho);
    CHECK((nxt.lambda - expected).lpNorm<Eigen::Infinity>() == 0.0);
    // The projection step can only lower the Lagrangian in y.
    CHECK(eval_lagrangian(inst.spec, cur.x, nxt.y, cur.lambda, params.rho) <=
          eval_lagrangian(inst.spec, cur.x, cur.y, cur.lambda, params.rho) +
              1e-12);
    // The convex step can only lower it in x.
    CHECK(eval_lagrangian(inst.spec, nxt.x, nxt.y, cur.lambda, params.rho) <=
          eval_lagrangian(inst.spec, cur.x, nxt.y, cur.lambda, params.rho) +
              1e-10);
    CHECK(inst.spec.y_set.contains(nxt.y));
  }

  CHECK(report.primal_residual_final <= params.epsilon);
  CHECK(inst.spec.y_set.contains(report.y_final));
  CHECK(inst.spec.x_set.max_violation(report.x_final) <= 1e-8);
  CHECK(inst.spec.x_set.max_violation(report.x_polished) <= 1e-8);
  CHECK(inst.spec.y_set.contains(report.x_polished, 1e-9));
}

TEST_CASE("identical inputs give bitwise-identical runs") {
  const auto inst = gen_cs(5, 8, 2, 0.01, 99);
  const auto params = SolverParams::defaults_for(inst.spec);
  const auto r1 = solve(inst.spec, params);
  const auto r2 = solve(inst.spec, params);
  CHECK(r1.outer_iterations == r2.outer_iterations);
  CHECK((r1.x_final - r2.x_final).norm() == 0.0);
  CHECK((r1.y_final - r2.y_final).norm() == 0.0);
  REQUIRE(r1.trace.size() == r2.trace.size());
  for (std::size_t i = 0; i < r1.trace.size(); ++i) {
    CHECK(r1.trace[i].primal_residual == r2.trace[i].primal_residual);
    CHECK(r1.trace[i].objective == r2.trace[i].objective);
  }
}

TEST_CASE("hitting the iteration cap reports instead of throwing") {
  const auto spec = shifted_target(Vector{{0.5, 0.4}}, 0.1, 1.0, 1);
  auto params = SolverParams::defaults_for(spec);
  params.epsilon = 0.0;
  params.max_outer = 3;
  const auto report = solve(spec, params);
  CHECK(!report.converged);
  CHECK(report.outer_iterations == 3);
}

TEST_CASE("unconstrained X runs against the oracle") {
  // Projection-style instances: no x_set blocks at all.
  CounterRng rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5;
    const auto Y = uniform_set(n, 0.1, 1.0, 2);
    const auto spec = projection_spec(random_vector(n, rng), Y);
    const auto report = solve(spec, SolverParams::defaults_for(spec));
    CHECK(report.converged);
    const auto oracle = global_solve(spec);
    CHECK(oracle.objective <= report.objective_polished + 1e-8);
    CHECK(spec.y_set.contains(report.x_polished, 1e-9));
  }
}

TEST_CASE("a full budget disables the cardinality cut") {
  // K = n: the projection keeps every profitable coordinate, and the run
  // should land on the global optimum of the per-coordinate branch choice.
  const auto spec = shifted_target(Vector{{0.5, 0.03, 0.7}}, 0.1, 1.0, 3);
  const auto report = solve(spec, SolverParams::defaults_for(spec));
  CHECK(report.converged);
  const auto oracle = global_solve(spec);
  CHECK(report.objective_polished ==
        doctest::Approx(oracle.objective).epsilon(1e-8));
  // Coordinate 2 sits below half the floor, so the optimum switches it off.
  CHECK(report.x_polished[1] == 0.0);
}

TEST_CASE("custom starting points are honored") {
  const auto inst = gen_cs(6, 10, 3, 0.01, 77);
  auto params = SolverParams::defaults_for(inst.spec);
  params.y0 = Vector::Zero(10);
  params.y0[2] = 0.5;  // a member of Y
  params.lambda0 = Vector::Constant(10, 0.01);
  const auto report = solve(inst.spec, params);
  CHECK(report.converged);
  const auto oracle = global_solve(inst.spec);
  CHECK(oracle.objective <= report.objective_polished + 1e-8);
}

TEST_CASE("solver parameter validation") {
  const auto spec = shifted_target(Vector{{0.5}}, 0.1, 1.0, 1);
  auto params = SolverParams::defaults_for(spec);
  params.omega = 2.5;
  CHECK_THROWS_AS(solve(spec, params), std::invalid_argument);
  params = SolverParams::defaults_for(spec);
  params.y0 = Vector{{0.05}};  // not a member of Y
  CHECK_THROWS_AS(solve(spec, params), std::invalid_argument);
  params = SolverParams::defaults_for(spec);
  params.rho = -1.0;
  CHECK_THROWS_AS(solve(spec, params), std::invalid_argument);
}
