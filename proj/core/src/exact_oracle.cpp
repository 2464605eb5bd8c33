#include "ghrelax/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ghrelax/distortion.hpp"
#include "ghrelax/error.hpp"

namespace ghrelax {

namespace {

void check_relation_size(int n, int m) {
  if (n * m > kMaxRelationCells) {
    throw Error(ErrorCode::TooLarge, "exact enumeration needs |X||Y| <= " + std::to_string(kMaxRelationCells) +
                                         ", got " + std::to_string(n * m));
  }
}

// Depth-first walk over cells in row-major order, excluding before including.
// Prunes relations that can no longer cover a row or column.
class RelationWalker {
 public:
  RelationWalker(int n, int m) : n_(n), m_(m), chosen_(n * m, false), row_(n, 0), col_(m, 0) {}

  template <class Include, class Exclude, class Leaf>
  void run(Include&& on_include, Exclude&& on_exclude, Leaf&& on_leaf) {
    walk(0, on_include, on_exclude, on_leaf);
  }

  const std::vector<bool>& chosen() const { return chosen_; }
  bool stop = false;

 private:
  template <class Include, class Exclude, class Leaf>
  void walk(int a, Include& on_include, Exclude& on_exclude, Leaf& on_leaf) {
    if (stop) return;
    if (a == n_ * m_) {
      on_leaf();
      return;
    }
    const int i = a / m_;
    const int j = a % m_;
    const bool row_closes = j == m_ - 1;
    const bool col_closes = i == n_ - 1;
    if (!(row_closes && row_[i] == 0) && !(col_closes && col_[j] == 0)) {
      on_exclude(a);
      walk(a + 1, on_include, on_exclude, on_leaf);
    }
    if (stop) return;
    if (on_include(a)) {
      chosen_[a] = true;
      ++row_[i];
      ++col_[j];
      walk(a + 1, on_include, on_exclude, on_leaf);
      chosen_[a] = false;
      --row_[i];
      --col_[j];
    }
  }

  int n_, m_;
  std::vector<bool> chosen_;
  std::vector<int> row_, col_;
};

std::vector<std::pair<int, int>> pairs_of(const std::vector<bool>& chosen, int m) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < static_cast<int>(chosen.size()); ++a) {
    if (chosen[a]) out.emplace_back(a / m, a % m);
  }
  return out;
}

}  // namespace

OracleResult exact_gh(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const int n = x.size();
  const int m = y.size();
  check_relation_size(n, m);
  const Eigen::MatrixXd g = build_gamma(x, y, 1.0).matrix();
  const int nm = n * m;

  OracleResult res;
  double best = std::numeric_limits<double>::infinity();
  // Running max of the partial relation, one entry per depth.
  std::vector<double> level_max(nm + 1, 0.0);
  RelationWalker walker(n, m);
  auto include = [&](int a) {
    double mx = level_max[a];
    const auto& chosen = walker.chosen();
    for (int b = 0; b < a && mx < best; ++b) {
      if (chosen[b]) mx = std::max(mx, g(a, b));
    }
    if (mx >= best) return false;
    level_max[a + 1] = mx;
    return true;
  };
  auto exclude = [&](int a) { level_max[a + 1] = level_max[a]; };
  auto leaf = [&]() {
    ++res.enumerated_count;
    if (level_max[nm] < best) {
      best = level_max[nm];
      res.argmin = pairs_of(walker.chosen(), m);
      if (best == 0.0) walker.stop = true;
    }
  };
  walker.run(include, exclude, leaf);
  res.value = 0.5 * best;
  return res;
}

OracleResult exact_gh_bijective(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const int n = x.size();
  if (y.size() != n) throw Error(ErrorCode::CardinalityMismatch, "bijections need |X| = |Y|");
  if (n > kMaxBijectionSize) {
    throw Error(ErrorCode::TooLarge, "bijection enumeration needs n <= " + std::to_string(kMaxBijectionSize));
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  double best = std::numeric_limits<double>::infinity();
  OracleResult res;
  do {
    ++res.enumerated_count;
    double mx = 0.0;
    for (int i = 0; i < n && mx < best; ++i) {
      for (int i2 = i + 1; i2 < n; ++i2) {
        mx = std::max(mx, std::abs(x(i, i2) - y(perm[i], perm[i2])));
      }
    }
    if (mx < best) {
      best = mx;
      best_perm = perm;
      if (best == 0.0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  res.value = 0.5 * best;
  for (int i = 0; i < n; ++i) res.argmin.emplace_back(i, best_perm[i]);
  return res;
}

OracleResult exact_gh_p_rank1(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double p,
                              Normalization normalization) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "p must be finite and >= 1");
  const int n = x.size();
  const int m = y.size();
  check_relation_size(n, m);
  const Eigen::MatrixXd g = build_gamma(x, y, p).matrix();
  const int nm = n * m;
  const double big = std::max(n, m);
  const double scale = normalization == Normalization::MaxSquared ? 1.0 / (big * big) : 1.0;

  OracleResult res;
  double best = std::numeric_limits<double>::infinity();
  RelationWalker walker(n, m);
  std::vector<int> row_deg(n), col_deg(m);
  std::vector<int> members;
  std::vector<double> mu(nm);
  auto leaf = [&]() {
    ++res.enumerated_count;
    const auto& chosen = walker.chosen();
    std::fill(row_deg.begin(), row_deg.end(), 0);
    std::fill(col_deg.begin(), col_deg.end(), 0);
    members.clear();
    for (int a = 0; a < nm; ++a) {
      if (!chosen[a]) continue;
      members.push_back(a);
      ++row_deg[a / m];
      ++col_deg[a % m];
    }
    for (int a : members) mu[a] = n >= m ? 1.0 / row_deg[a / m] : 1.0 / col_deg[a % m];
    double s = 0.0;
    for (int a : members) {
      for (int b : members) s += g(a, b) * mu[a] * mu[b];
    }
    if (s < best) {
      best = s;
      res.argmin = pairs_of(chosen, m);
    }
  };
  walker.run([](int) { return true; }, [](int) {}, leaf);
  res.value = 0.5 * std::pow(std::max(0.0, best) * scale, 1.0 / p);
  return res;
}

}  // namespace ghrelax
