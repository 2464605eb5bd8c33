#include "doctest.h"

#include <random>

#include "ghrelax/distortion.hpp"
#include "ghrelax/matching.hpp"

using namespace ghrelax;

namespace {

FiniteMetricSpace line(std::vector<double> xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return from_point_cloud(pts);
}

}  // namespace

TEST_CASE("gamma of two unit segments") {
  const auto t = build_gamma(line({0, 1}), line({0, 1}), 1.0);
  REQUIRE(t.matrix().rows() == 4);
  Eigen::MatrixXd expect(4, 4);
  // rows (0,0) (0,1) (1,0) (1,1)
  expect << 0, 1, 1, 0,
            1, 0, 0, 1,
            1, 0, 0, 1,
            0, 1, 1, 0;
  CHECK(t.matrix() == expect);
  CHECK(t.matrix() == t.matrix().transpose());
}

TEST_CASE("powered entries and base entries") {
  const auto x = line({0, 1, 3});
  const auto y = line({0, 2});
  const auto t = build_gamma(x, y, 2.0);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const double base = t.base_entry(a, b);
      CHECK(t.matrix()(a, b) == doctest::Approx(base * base));
    }
  }
  // (i=2, j=0) against (i=0, j=1): |3 - 2|
  CHECK(t.base_entry(flat_index(2, 0, 2), flat_index(0, 1, 2)) == 1.0);
  CHECK_THROWS_AS(build_gamma(x, y, 0.5), Error);
}

TEST_CASE("max over a support") {
  const auto t = build_gamma(line({0, 1}), line({0, 3}), 1.0);
  CHECK(max_support_value(t, {{0, 3}, {3, 0}, {0, 0}, {3, 3}}) == 2.0);
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) all.emplace_back(a, b);
  CHECK(max_support_value(t, all) == t.matrix().maxCoeff());
  CHECK_THROWS_AS(max_support_value(t, {}), Error);

  const auto same = build_gamma(line({0, 1, 4}), line({0, 1, 4}), kInfinityOrder);
  CHECK(max_support_value(same, {{0, 4}, {4, 8}, {0, 8}}) == 0.0);
}

TEST_CASE("matrix-free product matches the dense tensor") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::vector<double>> px, py;
  for (int i = 0; i < 5; ++i) px.push_back({u(rng), u(rng)});
  for (int i = 0; i < 4; ++i) py.push_back({u(rng), u(rng)});
  const auto x = from_point_cloud(px);
  const auto y = from_point_cloud(py);
  for (double p : {1.0, 2.0, 3.0}) {
    const DistortionOperator op(x, y, p);
    const auto dense = build_gamma(x, y, p).matrix();
    Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(op.dim(), [&] { return u(rng); });
    Eigen::VectorXd out;
    op.apply(v, out);
    CHECK((out - dense * v).norm() <= 1e-10 * (1.0 + out.norm()));
    CHECK(op.entry(3, 7) == doctest::Approx(dense(3, 7)));
  }
}

TEST_CASE("distortion of hard matchings") {
  const auto x = line({0, 1});
  CHECK(distortion_of_matching(x, x, {0, 1}) == 0.0);
  CHECK(distortion_of_matching(x, line({0, 3}), {1, 0}) == 1.0);
  CHECK(is_bijection({1, 0}, 2));
  CHECK_FALSE(is_bijection({1, 1}, 2));
}

TEST_CASE("assignment solvers") {
  Eigen::MatrixXd cost(3, 3);
  cost << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  CHECK(min_cost_assignment(cost) == std::vector<int>{1, 0, 2});
  CHECK(max_weight_assignment(Eigen::MatrixXd::Constant(2, 2, 0.25)) == std::vector<int>{0, 1});
  Eigen::MatrixXd rect(2, 3);
  rect << 5, 1, 9, 1, 5, 9;
  CHECK(min_cost_assignment(rect) == std::vector<int>{1, 0});
}
