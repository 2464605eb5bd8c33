#include <algorithm>
#include <cmath>
#include <limits>

#include "ghrelax/error.hpp"
#include "ghrelax/matching.hpp"

namespace ghrelax {

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < map.size(); ++i) out.emplace_back(static_cast<int>(i), map[i]);
  return out;
}

std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  if (n > m) throw Error(ErrorCode::InvalidArgument, "assignment needs rows <= columns");
  if (!cost.allFinite()) throw Error(ErrorCode::NonFinite, "assignment cost is not finite");
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> owner(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (owner[j] != 0) assignment[owner[j] - 1] = j - 1;
  }
  return assignment;
}

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weight) {
  if (weight.rows() != weight.cols()) {
    throw Error(ErrorCode::NotSquare, "perfect matching needs a square weight matrix");
  }
  return min_cost_assignment(-weight);
}

bool is_bijection(const std::vector<int>& map, int m) {
  if (static_cast<int>(map.size()) != m) return false;
  std::vector<char> hit(m, 0);
  for (int j : map) {
    if (j < 0 || j >= m || hit[j]) return false;
    hit[j] = 1;
  }
  return true;
}

double distortion_of_matching(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                              const std::vector<int>& map) {
  const int n = x.size();
  if (static_cast<int>(map.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "matching must be total on X");
  }
  for (int j : map) {
    if (j < 0 || j >= y.size()) throw Error(ErrorCode::BadIndex, "matching target out of range");
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int i2 = i + 1; i2 < n; ++i2) {
      worst = std::max(worst, std::abs(x(i, i2) - y(map[i], map[i2])));
    }
  }
  return 0.5 * worst;
}

}  // namespace ghrelax
