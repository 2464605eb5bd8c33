#include "ghrelax/conic_program.hpp"

#include <algorithm>
#include <cmath>

#include "ghrelax/error.hpp"
#include "ghrelax/symmetric_eigen.hpp"

namespace ghrelax {

double LinearConstraint::evaluate(const Eigen::MatrixXd& z) const {
  double acc = 0.0;
  for (const auto& t : terms) {
    acc += t.coef * (t.row == t.col ? z(t.row, t.row) : 0.5 * (z(t.row, t.col) + z(t.col, t.row)));
  }
  return acc;
}

ConicProgram::ConicProgram(int dim)
    : dim_(dim),
      objective_(Eigen::MatrixXd::Zero(dim, dim)),
      zero_mask_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), false) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "program dimension must be positive");
}

void ConicProgram::set_objective(Eigen::MatrixXd c) {
  if (c.rows() != dim_ || c.cols() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "objective has the wrong shape");
  }
  objective_ = std::move(c);
}

void ConicProgram::add_constraint(LinearConstraint c) {
  for (const auto& t : c.terms) {
    if (t.row < 0 || t.col < 0 || t.row >= dim_ || t.col >= dim_) {
      throw Error(ErrorCode::BadIndex, "constraint term out of range");
    }
  }
  constraints_.push_back(std::move(c));
}

void ConicProgram::add_zero(int row, int col) {
  if (row < 0 || col < 0 || row >= dim_ || col >= dim_) {
    throw Error(ErrorCode::BadIndex, "zero-pattern entry out of range");
  }
  if (row > col) std::swap(row, col);
  const auto idx = static_cast<std::size_t>(row) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(col);
  if (zero_mask_[idx]) return;
  zero_mask_[idx] = true;
  zero_pattern_.emplace_back(row, col);
}

bool ConicProgram::is_zero_pinned(int row, int col) const {
  if (row > col) std::swap(row, col);
  return zero_mask_[static_cast<std::size_t>(row) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(col)];
}

void ConicProgram::pin(int row, int col, double value) {
  if (row < 0 || col < 0 || row >= dim_ || col >= dim_) {
    throw Error(ErrorCode::BadIndex, "pinned entry out of range");
  }
  if (row > col) std::swap(row, col);
  pinned_[{row, col}] = value;
}

void ConicProgram::set_box(double lower, double upper) {
  if (!(lower <= upper)) throw Error(ErrorCode::InvalidArgument, "box lower bound exceeds upper bound");
  box_lower_ = lower;
  box_upper_ = upper;
}

void ConicProgram::validate() const {
  if (!objective_.allFinite()) throw Error(ErrorCode::InvalidArgument, "objective is not finite");
  if ((objective_ - objective_.transpose()).cwiseAbs().maxCoeff() > 0.0) {
    throw Error(ErrorCode::InvalidArgument, "objective must be symmetric");
  }
  for (const auto& c : constraints_) {
    if (!std::isfinite(c.rhs)) throw Error(ErrorCode::InvalidArgument, "constraint rhs is not finite");
  }
  for (const auto& [entry, value] : pinned_) {
    if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "pinned value is not finite");
    if (is_zero_pinned(entry.first, entry.second)) {
      throw Error(ErrorCode::InvalidArgument, "entry is both zero-pinned and value-pinned");
    }
  }
}

double FeasibilityReport::max_linear() const {
  return std::max({equality, inequality, box, zero_pattern, pins, symmetry});
}

bool FeasibilityReport::feasible(double tol) const {
  return max_linear() <= tol && min_eigenvalue >= -tol;
}

FeasibilityReport check_feasible(const ConicProgram& prog, const Eigen::MatrixXd& z) {
  if (z.rows() != prog.dim() || z.cols() != prog.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "candidate has the wrong shape");
  }
  FeasibilityReport r;
  r.symmetry = (z - z.transpose()).cwiseAbs().maxCoeff();
  for (const auto& c : prog.constraints()) {
    const double v = c.evaluate(z);
    if (c.sense == ConstraintSense::Equal) {
      r.equality = std::max(r.equality, std::abs(v - c.rhs));
    } else {
      r.inequality = std::max(r.inequality, std::max(0.0, c.rhs - v));
    }
  }
  const double lo = prog.box_lower(), hi = prog.box_upper();
  r.box = std::max({0.0, lo - z.minCoeff(), z.maxCoeff() - hi});
  for (auto [a, b] : prog.zero_pattern()) {
    r.zero_pattern = std::max({r.zero_pattern, std::abs(z(a, b)), std::abs(z(b, a))});
  }
  for (const auto& [entry, value] : prog.pinned_entries()) {
    r.pins = std::max(r.pins, std::abs(z(entry.first, entry.second) - value));
  }
  const Eigen::MatrixXd sym = 0.5 * (z + z.transpose());
  r.min_eigenvalue = symmetric_eigen(sym).values(0);
  return r;
}

}  // namespace ghrelax
