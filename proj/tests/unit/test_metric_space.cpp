#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ghrelax/metric_space.hpp"

using namespace ghrelax;

namespace {

FiniteMetricSpace cloud(const std::vector<std::vector<double>>& pts) { return from_point_cloud(pts); }

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

FiniteMetricSpace unit_square() { return cloud({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

ErrorCode code_of(const Eigen::MatrixXd& m) {
  try {
    validate_metric(m);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected validation to throw");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validate_metric accepts the two point metric") {
  const auto s = validate_metric(mat({{0, 1}, {1, 0}}));
  CHECK(s.size() == 2);
  CHECK(s(0, 1) == 1.0);
  CHECK(s.diameter() == 1.0);
}

TEST_CASE("validate_metric rejects malformed matrices") {
  CHECK(code_of(mat({{0, 1}, {2, 0}})) == ErrorCode::AsymmetricMatrix);
  CHECK(code_of(mat({{1, 1}, {1, 0}})) == ErrorCode::NonzeroDiagonal);
  CHECK(code_of(mat({{0, 1, 2}, {1, 0, 1}})) == ErrorCode::NotSquare);
  CHECK(code_of(mat({{0, NAN}, {NAN, 0}})) == ErrorCode::NonFinite);
  CHECK(code_of(Eigen::MatrixXd(0, 0)) == ErrorCode::Empty);
}

TEST_CASE("triangle violation reports the offending triple") {
  try {
    validate_metric(mat({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
    FAIL("expected TriangleViolation");
  } catch (const TriangleViolationError& e) {
    CHECK(e.code() == ErrorCode::TriangleViolation);
    CHECK(e.i == 0);
    CHECK(e.j == 1);
    CHECK(e.k == 2);
  }
}

TEST_CASE("validation tolerance is relative to the largest entry") {
  const double big = 1e6;
  auto m = mat({{0, big, 2 * big}, {big, 0, big}, {2 * big, big, 0}});
  m(0, 2) = m(2, 0) = 2 * big * (1 + 1e-12);
  CHECK_NOTHROW(validate_metric(m));
}

TEST_CASE("point clouds") {
  SUBCASE("3-4-5") {
    const auto s = cloud({{0, 0}, {3, 4}});
    CHECK(s(0, 1) == doctest::Approx(5.0));
  }
  SUBCASE("single point") {
    const auto s = cloud({{7}});
    CHECK(s.size() == 1);
    CHECK(s(0, 0) == 0.0);
  }
  SUBCASE("unit square") {
    const auto s = unit_square();
    std::vector<double> d;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) d.push_back(s(i, j));
    std::sort(d.begin(), d.end());
    for (int k = 0; k < 4; ++k) CHECK(d[k] == doctest::Approx(1.0));
    CHECK(d[4] == doctest::Approx(std::sqrt(2.0)));
    CHECK(d[5] == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("ragged rows") {
    CHECK_THROWS_AS(cloud({{0, 0}, {1}}), Error);
  }
}

TEST_CASE("graph metrics") {
  SUBCASE("triangle") {
    const auto s = graph_to_metric(SimpleGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(s(i, j) == (i == j ? 0.0 : 1.0));
  }
  SUBCASE("path") {
    const auto s = graph_to_metric(SimpleGraph(3, {{0, 1}, {1, 2}}), 2.0);
    CHECK(s.matrix().isApprox(mat({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})));
  }
  SUBCASE("isomorphic 4-cycles share the distance multiset") {
    const SimpleGraph c1(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const SimpleGraph c2(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
    auto flat = [](const FiniteMetricSpace& s) {
      std::vector<double> v(s.matrix().data(), s.matrix().data() + s.matrix().size());
      std::sort(v.begin(), v.end());
      return v;
    };
    CHECK(flat(graph_to_metric(c1)) == flat(graph_to_metric(c2)));
  }
  SUBCASE("K outside (1, 2] is rejected unless literal") {
    const SimpleGraph p(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(graph_to_metric(p, 3.0), Error);
    CHECK_THROWS_AS(graph_to_metric(p, 1.0), Error);
    const auto s = graph_to_metric(p, 5.0, GraphMetricMode::LiteralLargeK);
    CHECK(s(0, 2) == 5.0);
  }
  SUBCASE("relabeling") {
    const SimpleGraph g(3, {{0, 1}});
    const SimpleGraph h = g.relabeled({2, 0, 1});
    CHECK(h.has_edge(0, 2));
    CHECK_FALSE(h.has_edge(0, 1));
    CHECK(g.degrees() == std::vector<int>{1, 1, 0});
  }
}

TEST_CASE("epsilon nets") {
  const auto sq = unit_square();
  CHECK(epsilon_net(sq, 1.0).indices.size() == 2);
  CHECK(epsilon_net(sq, 2.0).indices.size() == 1);
  CHECK(epsilon_net(sq, 0.0).indices.size() == 4);

  const auto rep = pad_with_repeats(sq, 6);
  const auto net = epsilon_net(rep, 0.0);
  CHECK(net.indices.size() == 4);
  CHECK(net.covering_radius == 0.0);

  const auto half = epsilon_net(sq, 1.0);
  CHECK(half.covering_radius <= 1.0 + 1e-12);
  CHECK_THROWS_AS(epsilon_net(sq, -1.0), Error);
}

TEST_CASE("padding with repeats") {
  const auto two = validate_metric(mat({{0, 1}, {1, 0}}));
  SUBCASE("to three points") {
    const auto three = pad_with_repeats(two, 3);
    CHECK(three.size() == 3);
    CHECK(three.matrix().row(0) == three.matrix().row(2));
  }
  SUBCASE("no-op") {
    CHECK(pad_with_repeats(two, 2).matrix() == two.matrix());
  }
  SUBCASE("explicit multiset {x, x, y}") {
    const auto y = pad_with_repeats(two, 3, std::vector<int>{0, 0, 1});
    CHECK(y.matrix().isApprox(mat({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}})));
  }
  SUBCASE("bad targets") {
    CHECK_THROWS_AS(pad_with_repeats(two, 1), Error);
    CHECK_THROWS_AS(pad_with_repeats(two, 3, std::vector<int>{0, 0, 0}), Error);
    CHECK_THROWS_AS(pad_with_repeats(two, 3, std::vector<int>{0, 1, 5}), Error);
  }
}

TEST_CASE("perturbation") {
  const auto base = cloud({{0, 0}, {1, 0.1}, {0.3, 2}, {2.5, 1.7}, {1.1, 0.9}});
  CHECK(perturb(base, 0.0, 3).matrix() == base.matrix());

  const auto gen = is_generic(base);
  REQUIRE(gen.generic);
  const double mag = 0.9 * gen.min_gap / (2.0 * base.size());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = perturb(base, mag, seed);
    CHECK_NOTHROW(validate_metric(p.matrix()));
    CHECK((p.matrix() - base.matrix()).cwiseAbs().maxCoeff() <= mag + 1e-12);
    CHECK(is_generic(p).generic);
  }
  CHECK(perturb(base, mag, 42).matrix() == perturb(base, mag, 42).matrix());
}

TEST_CASE("shortest path closure repairs the triangle inequality") {
  const auto closed = shortest_path_closure(mat({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
  CHECK(closed(0, 2) == 2.0);
  CHECK_NOTHROW(validate_metric(closed));
}

TEST_CASE("genericity") {
  const auto line = cloud({{0}, {1}, {3}});
  const auto r = is_generic(line);
  CHECK(r.generic);
  CHECK(r.min_gap == doctest::Approx(1.0));
  CHECK_FALSE(is_generic(unit_square()).generic);
}

TEST_CASE("subspaces, relabeling and scaling") {
  const auto s = cloud({{0}, {1}, {3}});
  const auto sub = subspace(s, {2, 0});
  CHECK(sub.size() == 2);
  CHECK(sub(0, 1) == 3.0);
  const auto p = s.permuted({2, 0, 1});
  CHECK(p(0, 1) == s(2, 0));
  CHECK(s.scaled(2.0).diameter() == 6.0);
  CHECK_THROWS_AS(s.scaled(0.0), Error);
  CHECK_THROWS_AS(subspace(s, {3}), Error);
}
