#include "doctest.h"

#include <cmath>
#include <random>

#include "ghrelax/classification.hpp"
#include "ghrelax/exact_oracle.hpp"
#include "ghrelax/relaxed_distance.hpp"

using namespace ghrelax;

namespace {

FiniteMetricSpace cloud(const std::vector<std::vector<double>>& pts) { return from_point_cloud(pts); }

SolverConfig tight() {
  SolverConfig cfg;
  cfg.tol = 1e-9;
  return cfg;
}

}  // namespace

TEST_CASE("isometric spaces give zero for every kind") {
  const auto x = cloud({{0, 0}, {1, 0}, {0, 2}});
  const auto y = x.permuted({2, 0, 1});
  for (const auto kind : {FeasibleSetKind::GH, FeasibleSetKind::Reg, FeasibleSetKind::Sur}) {
    for (double p : {1.0, 2.0}) {
      const auto r = relaxed_distance(x, y, kind, p, tight());
      CHECK(r.value <= 0.5 * std::pow(1e-9, 1.0 / p) + 1e-6);
      CHECK(r.lower_bound_of == (kind == FeasibleSetKind::GH));
    }
    CHECK(relaxed_distance_inf(x, y, kind, tight()).value == 0.0);
  }
}

TEST_CASE("two point spaces at distances 1 and 3") {
  const auto x = cloud({{0}, {1}});
  const auto y = cloud({{0}, {3}});
  // Every bijection pays |1 - 3| on both cross terms: sum Gamma mu mu^T = 4.
  const auto r = relaxed_distance(x, y, FeasibleSetKind::Reg, 1.0, tight());
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
  const auto inf = relaxed_distance_inf(x, y, FeasibleSetKind::Reg, tight());
  CHECK(inf.value == doctest::Approx(1.0));
  CHECK(inf.feasibility_solves >= 1);
  // Gamma takes the values 0, 1, 2, 3.
  CHECK(inf.bisection_resolution == doctest::Approx(0.5));
}

TEST_CASE("non-isomorphic graphs") {
  const auto path = graph_to_metric(SimpleGraph(4, {{0, 1}, {1, 2}, {2, 3}}));
  const auto star = graph_to_metric(SimpleGraph(4, {{0, 1}, {0, 2}, {0, 3}}));
  const auto r = relaxed_distance(path, star, FeasibleSetKind::GH, 1.0);
  CHECK(r.value >= 0.0);
  CHECK(exact_gh(path, star).value >= r.value - 1e-6);
}

TEST_CASE("surjection with fewer rows is solved transposed") {
  const auto x = cloud({{0}, {2}});
  const auto y = pad_with_repeats(x, 3);
  const auto r = relaxed_distance(x, y, FeasibleSetKind::Sur, 1.0, tight());
  CHECK(r.swapped);
  CHECK(r.soft_assignment.rows() == 2);
  CHECK(r.soft_assignment.cols() == 3);
  CHECK(r.value <= 1e-4);
  CHECK(r.matching.map.size() == 2);
}

TEST_CASE("lifted objective reads the support") {
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(2, 2, 1.0);
  Eigen::MatrixXd z(3, 3);
  z << 1e-7, 0.5, 0, 0.5, 1.2, 0, 0, 0, 1;
  CHECK(lifted_objective(g, z) == doctest::Approx(2.0));
  CHECK(lifted_objective(g, z, 0.0) == doctest::Approx(2.0 + 1e-7));
  CHECK_THROWS_AS(lifted_objective(g, Eigen::MatrixXd::Zero(1, 1)), Error);
}

TEST_CASE("warm start") {
  std::mt19937_64 rng(12);
  const auto x = random_generic_space(3, rng);
  const auto y = random_generic_space(3, rng);
  SolverConfig cfg;
  cfg.tol = 1e-8;
  const auto inf = relaxed_distance_inf(x, y, FeasibleSetKind::Reg, cfg);
  const auto hot = relaxed_distance(x, y, FeasibleSetKind::Reg, 16.0, cfg, inf.solution.Z);
  const auto cold = relaxed_distance(x, y, FeasibleSetKind::Reg, 16.0, cfg);
  CHECK(hot.value <= cold.value + 1e-6);
  CHECK(hot.value <= inf.value + 1e-4);
  CHECK_THROWS_AS(relaxed_distance(x, y, FeasibleSetKind::Reg, 1.0, cfg, Eigen::MatrixXd::Zero(2, 2)), Error);
}

TEST_CASE("order must be at least one") {
  const auto x = cloud({{0}, {1}});
  CHECK_THROWS_AS(relaxed_distance(x, x, FeasibleSetKind::GH, 0.5), Error);
  CHECK_THROWS_AS(relaxed_distance(x, x, FeasibleSetKind::GH, kInfinityOrder), Error);
}
