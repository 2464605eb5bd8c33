#include <algorithm>
#include <sstream>

#include "ghrelax/error.hpp"
#include "ghrelax/relaxed_distance.hpp"

namespace ghrelax {

std::string to_string(FeasibleSetKind kind) {
  switch (kind) {
    case FeasibleSetKind::GH: return "gh";
    case FeasibleSetKind::Reg: return "reg";
    case FeasibleSetKind::Sur: return "sur";
  }
  return "unknown";
}

FeasibleSetKind parse_feasible_set_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "gh") return FeasibleSetKind::GH;
  if (lower == "reg") return FeasibleSetKind::Reg;
  if (lower == "sur") return FeasibleSetKind::Sur;
  throw Error(ErrorCode::InvalidArgument, "unknown feasible set '" + std::string(name) + "'");
}

namespace {

LinearConstraint make(ConstraintFamily family, ConstraintSense sense, double rhs) {
  LinearConstraint c;
  c.family = family;
  c.sense = sense;
  c.rhs = rhs;
  return c;
}

}  // namespace

ConicProgram build_feasible_set(FeasibleSetKind kind, int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::IncompatibleCardinalities, "spaces must be nonempty");
  if (kind == FeasibleSetKind::Reg && n != m) {
    throw Error(ErrorCode::IncompatibleCardinalities, "Reg needs |X| = |Y|");
  }
  if (kind == FeasibleSetKind::Sur && n < m) {
    throw Error(ErrorCode::IncompatibleCardinalities, "Sur needs |X| >= |Y|; swap the arguments");
  }
  const int nm = n * m;
  const int last = nm;
  const int big = std::max(n, m);
  ConicProgram prog(nm + 1);
  const auto idx = [m](int i, int j) { return flat_index(i, j, m); };

  // Sense of each marginal family per kind: (sum over i, sum over j).
  ConstraintSense over_i = ConstraintSense::GreaterEqual;
  ConstraintSense over_j = ConstraintSense::GreaterEqual;
  if (kind == FeasibleSetKind::Reg) over_i = over_j = ConstraintSense::Equal;
  if (kind == FeasibleSetKind::Sur) over_j = ConstraintSense::Equal;

  // sum_i z_ij (each j) and sum_j z_ij (each i)
  for (int j = 0; j < m; ++j) {
    auto c = make(ConstraintFamily::PointMarginal, over_i, 1.0);
    for (int i = 0; i < n; ++i) c.terms.push_back({idx(i, j), last, 1.0});
    prog.add_constraint(std::move(c));
  }
  for (int i = 0; i < n; ++i) {
    auto c = make(ConstraintFamily::PointMarginal, over_j, 1.0);
    for (int j = 0; j < m; ++j) c.terms.push_back({idx(i, j), last, 1.0});
    prog.add_constraint(std::move(c));
  }
  // sum_{i,i'} Z_{ij,i'j'} (each j <= j') and sum_{j,j'} Z_{ij,i'j'} (each i <= i')
  for (int j = 0; j < m; ++j) {
    for (int j2 = j; j2 < m; ++j2) {
      auto c = make(ConstraintFamily::BlockSum, over_i, 1.0);
      for (int i = 0; i < n; ++i) {
        for (int i2 = 0; i2 < n; ++i2) c.terms.push_back({idx(i, j), idx(i2, j2), 1.0});
      }
      prog.add_constraint(std::move(c));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int i2 = i; i2 < n; ++i2) {
      auto c = make(ConstraintFamily::BlockSum, over_j, 1.0);
      for (int j = 0; j < m; ++j) {
        for (int j2 = 0; j2 < m; ++j2) c.terms.push_back({idx(i, j), idx(i2, j2), 1.0});
      }
      prog.add_constraint(std::move(c));
    }
  }
  // Zhat 1 = max(n, m) z
  for (int r = 0; r < nm; ++r) {
    auto c = make(ConstraintFamily::RowSum, ConstraintSense::Equal, 0.0);
    for (int col = 0; col < nm; ++col) c.terms.push_back({r, col, 1.0});
    c.terms.push_back({r, last, -static_cast<double>(big)});
    prog.add_constraint(std::move(c));
  }
  if (kind != FeasibleSetKind::GH) {
    auto c = make(ConstraintFamily::Trace, ConstraintSense::Equal, static_cast<double>(n + 1));
    for (int r = 0; r <= nm; ++r) c.terms.push_back({r, r, 1.0});
    prog.add_constraint(std::move(c));
    // Z_{ij,ij'} = 0 for j != j'
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        for (int j2 = j + 1; j2 < m; ++j2) prog.add_zero(idx(i, j), idx(i, j2));
      }
    }
  }
  if (kind == FeasibleSetKind::Reg) {
    // Z_{ij,i'j} = 0 for i != i'
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) {
        for (int i2 = i + 1; i2 < n; ++i2) prog.add_zero(idx(i, j), idx(i2, j));
      }
    }
  }
  prog.pin(last, last, 1.0);
  prog.set_box(0.0, 1.0);
  return prog;
}

Eigen::VectorXd correspondence_weights(const std::vector<std::pair<int, int>>& relation, int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::NotACorrespondence, "spaces must be nonempty");
  std::vector<int> row_degree(n, 0), col_degree(m, 0);
  std::vector<std::pair<int, int>> pairs = relation;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (auto [i, j] : pairs) {
    if (i < 0 || i >= n || j < 0 || j >= m) {
      std::ostringstream os;
      os << "pair (" << i << "," << j << ") out of range";
      throw Error(ErrorCode::NotACorrespondence, os.str());
    }
    ++row_degree[i];
    ++col_degree[j];
  }
  if (std::find(row_degree.begin(), row_degree.end(), 0) != row_degree.end() ||
      std::find(col_degree.begin(), col_degree.end(), 0) != col_degree.end()) {
    throw Error(ErrorCode::NotACorrespondence, "relation must cover both spaces");
  }
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(n * m);
  for (auto [i, j] : pairs) {
    mu(flat_index(i, j, m)) = n >= m ? 1.0 / row_degree[i] : 1.0 / col_degree[j];
  }
  return mu;
}

Eigen::MatrixXd lift_correspondence(const std::vector<std::pair<int, int>>& relation, int n, int m) {
  const Eigen::VectorXd mu = correspondence_weights(relation, n, m);
  const int nm = n * m;
  Eigen::MatrixXd z(nm + 1, nm + 1);
  z.topLeftCorner(nm, nm) = mu * mu.transpose();
  z.topRightCorner(nm, 1) = mu;
  z.bottomLeftCorner(1, nm) = mu.transpose();
  z(nm, nm) = 1.0;
  return z;
}

Eigen::MatrixXd lift_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  if (!is_bijection(perm, n)) throw Error(ErrorCode::NotACorrespondence, "not a permutation");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(i, perm[i]);
  return lift_correspondence(pairs, n, n);
}

}  // namespace ghrelax
