#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ghrelax {

/// coef * Z(row, col) for a symmetric Z. Off-diagonal terms stand for the
/// symmetric coefficient matrix with coef/2 at (row, col) and (col, row).
struct SymmetricTerm {
  int row;
  int col;
  double coef;
};

enum class ConstraintSense { Equal, GreaterEqual };

/// Constraint families, used to group residual reports.
enum class ConstraintFamily {
  PointMarginal,  ///< sums of the border z
  BlockSum,       ///< sums of Zhat over one index pair
  RowSum,         ///< Zhat 1 = N z
  Trace,
  Other,
};

struct LinearConstraint {
  std::vector<SymmetricTerm> terms;
  double rhs = 0.0;
  ConstraintSense sense = ConstraintSense::Equal;
  ConstraintFamily family = ConstraintFamily::Other;

  double evaluate(const Eigen::MatrixXd& z) const;
};

/// min <C, Z> subject to linear (in)equalities, entrywise box bounds,
/// entries pinned to zero, entries pinned to a value, and Z PSD.
class ConicProgram {
 public:
  explicit ConicProgram(int dim);

  int dim() const { return dim_; }

  const Eigen::MatrixXd& objective() const { return objective_; }
  void set_objective(Eigen::MatrixXd c);

  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  void add_constraint(LinearConstraint c);

  /// Entries with row <= col.
  const std::vector<std::pair<int, int>>& zero_pattern() const { return zero_pattern_; }
  void add_zero(int row, int col);
  bool is_zero_pinned(int row, int col) const;

  const std::map<std::pair<int, int>, double>& pinned_entries() const { return pinned_; }
  void pin(int row, int col, double value);

  double box_lower() const { return box_lower_; }
  double box_upper() const { return box_upper_; }
  void set_box(double lower, double upper);

  /// Throws InvalidArgument on out-of-range indices, asymmetric objective,
  /// non-finite data, or entries both zero-pinned and value-pinned.
  void validate() const;

 private:
  int dim_;
  Eigen::MatrixXd objective_;
  std::vector<LinearConstraint> constraints_;
  std::vector<std::pair<int, int>> zero_pattern_;
  std::vector<bool> zero_mask_;
  std::map<std::pair<int, int>, double> pinned_;
  double box_lower_ = 0.0;
  double box_upper_ = 1.0;
};

/// Worst violation per constraint family for a candidate Z.
struct FeasibilityReport {
  double equality = 0.0;
  double inequality = 0.0;
  double box = 0.0;
  double zero_pattern = 0.0;
  double pins = 0.0;
  double symmetry = 0.0;
  double min_eigenvalue = 0.0;

  /// Largest linear/box/pin violation (PSD excluded).
  double max_linear() const;
  /// All linear violations <= tol and min eigenvalue >= -tol.
  bool feasible(double tol) const;
};

FeasibilityReport check_feasible(const ConicProgram& prog, const Eigen::MatrixXd& z);

}  // namespace ghrelax
