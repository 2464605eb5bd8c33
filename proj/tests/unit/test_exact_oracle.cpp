#include "doctest.h"

#include <random>

#include "ghrelax/classification.hpp"
#include "ghrelax/exact_oracle.hpp"

using namespace ghrelax;

namespace {

FiniteMetricSpace cloud(const std::vector<std::vector<double>>& pts) { return from_point_cloud(pts); }

}  // namespace

TEST_CASE("two point spaces") {
  const auto r = exact_gh(cloud({{0}, {1}}), cloud({{0}, {3}}));
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.enumerated_count >= 1);
  CHECK(r.enumerated_count <= 7);
  CHECK(r.argmin.size() >= 2);
}

TEST_CASE("isometries and padding") {
  std::mt19937_64 rng(6);
  const auto x = random_generic_space(4, rng);
  const auto perm = random_permutation(4, rng);
  const auto y = x.permuted(perm);
  CHECK(exact_gh(x, y).value == 0.0);
  const auto b = exact_gh_bijective(x, y);
  CHECK(b.value == 0.0);
  for (const auto& [i, j] : b.argmin) CHECK(perm[j] == i);

  const auto small = cloud({{0}, {1}, {4}});
  CHECK(exact_gh(small, pad_with_repeats(small, 5)).value == 0.0);
}

TEST_CASE("bijections never beat relations") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_generic_space(3, rng);
    const auto y = random_generic_space(3, rng);
    CHECK(exact_gh(x, y).value <= exact_gh_bijective(x, y).value + 1e-15);
  }
}

TEST_CASE("one bumped distance of a generic space") {
  std::mt19937_64 rng(15);
  const auto x = random_generic_space(4, rng);
  const double delta = 0.2 * is_generic(x).min_gap;
  Eigen::MatrixXd d = x.matrix();
  d(1, 3) += delta;
  d(3, 1) += delta;
  const auto y = FiniteMetricSpace::validated(d);
  const auto r = exact_gh_bijective(x, y);
  CHECK(r.value == doctest::Approx(delta / 2));
  for (const auto& [i, j] : r.argmin) CHECK(i == j);
}

TEST_CASE("rank one values of the padded pair") {
  const auto x = cloud({{0}, {1}});
  const auto y = pad_with_repeats(x, 3, std::vector<int>{0, 0, 1});
  const auto w = cloud({{1}});
  CHECK(exact_gh_p_rank1(x, y, 1.0, Normalization::None).value == doctest::Approx(0.0));
  CHECK(exact_gh_p_rank1(y, w, 1.0, Normalization::None).value == doctest::Approx(2.0));
  CHECK(exact_gh_p_rank1(x, w, 1.0, Normalization::None).value == doctest::Approx(1.0));
  CHECK(exact_gh_p_rank1(x, x, 2.0).value == 0.0);
}

TEST_CASE("size limits") {
  std::mt19937_64 rng(2);
  const auto five = random_generic_space(5, rng);
  CHECK_THROWS_AS(exact_gh(five, five), Error);
  CHECK_THROWS_AS(exact_gh_bijective(five, random_generic_space(4, rng)), Error);
  const auto ten = random_generic_space(10, rng);
  CHECK_THROWS_AS(exact_gh_bijective(ten, ten), Error);
  try {
    exact_gh(five, five);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}
