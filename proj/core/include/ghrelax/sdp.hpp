#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "ghrelax/conic_program.hpp"

namespace ghrelax {

struct SolverConfig {
  double tol = 1e-7;
  int max_iter = 50000;
  double rho = 1.0;
  bool adaptive_rho = true;
  /// Over-relaxation factor in (0, 2).
  double alpha = 1.6;
  /// Anderson acceleration memory; 0 disables it.
  int anderson_memory = 5;
  /// Eigenvalues above tau_rank * lambda_max count towards the numerical rank.
  double tau_rank = 1e-6;

  void validate() const;
};

enum class SdpStatus { Optimal, MaxIter, Infeasible };

std::string to_string(SdpStatus status);

struct SdpSolution {
  /// PSD iterate; symmetric with eigenvalues >= 0 up to rounding.
  Eigen::MatrixXd Z;
  double objective_value = 0.0;
  /// Relative splitting residuals at termination.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  SdpStatus status = SdpStatus::MaxIter;
  Eigen::VectorXd eigenvalues;  ///< ascending
  int numerical_rank = 0;
  /// Absolute per-family violations of Z, recomputed with check_feasible.
  FeasibilityReport feasibility;
};

/// Alternating-projection splitting for `prog`:
///   x   <- argmin <C,x> over the affine set (equalities and slacked
///          inequalities), given the two copies below
///   y1  <- box/pin/zero-pattern clip of x + u1
///   y2  <- PSD projection of x + u2
/// with over-relaxation, scaled dual updates, residual-balancing penalty
/// adaptation and safeguarded Anderson extrapolation of the whole state.
///
/// Iterates are dumped as CSV when GHRELAX_SDP_TRACE names a directory.
SdpSolution solve(const ConicProgram& prog, const SolverConfig& cfg = {},
                  const std::optional<Eigen::MatrixXd>& warm_start = std::nullopt);

}  // namespace ghrelax
