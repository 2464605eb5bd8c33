#pragma once

#include <Eigen/Dense>

namespace ghrelax {

struct SymmetricEigenResult {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< orthonormal columns, vectors.col(k) pairs with values(k)
};

/// Householder tridiagonalization followed by implicit-shift QL iteration.
/// Only the lower triangle of `m` is read. Throws NumericalBreakdown if an
/// eigenvalue fails to converge within the iteration cap, or on non-finite input.
SymmetricEigenResult symmetric_eigen(const Eigen::MatrixXd& m);

/// Nearest positive semidefinite matrix in Frobenius norm: Q max(L, 0) Q^T.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m);

/// Same as project_psd but also hands back the spectrum of the input.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m, Eigen::VectorXd& eigenvalues);

}  // namespace ghrelax
