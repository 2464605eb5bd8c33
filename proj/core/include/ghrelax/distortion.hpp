#pragma once

#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ghrelax/metric_space.hpp"

namespace ghrelax {

/// Marker for the unpowered tensor used by the max (p = infinity) objective.
inline constexpr double kInfinityOrder = std::numeric_limits<double>::infinity();

/// Flattening of the pair (i, j), i in X and j in Y, shared by every module.
inline int flat_index(int i, int j, int m) { return i * m + j; }

/// Gamma_{ij,i'j'} = |d_X(i,i') - d_Y(j,j')|, raised entrywise to `power`
/// unless power is kInfinityOrder.
class DistortionTensor {
 public:
  DistortionTensor(Eigen::MatrixXd dx, Eigen::MatrixXd dy, double power, Eigen::MatrixXd gamma)
      : dx_(std::move(dx)), dy_(std::move(dy)), power_(power), gamma_(std::move(gamma)) {}

  int n() const { return static_cast<int>(dx_.rows()); }
  int m() const { return static_cast<int>(dy_.rows()); }
  double power() const { return power_; }
  bool unpowered() const { return power_ == kInfinityOrder || power_ == 1.0; }

  /// The stored (powered) nm x nm matrix.
  const Eigen::MatrixXd& matrix() const { return gamma_; }
  /// Unpowered entry for flat indices a = (i,j), b = (i',j').
  double base_entry(int a, int b) const;

 private:
  Eigen::MatrixXd dx_, dy_;
  double power_;
  Eigen::MatrixXd gamma_;
};

/// Dense tensor. `p` must be >= 1 and finite, or kInfinityOrder.
DistortionTensor build_gamma(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double p);

/// Max of the unpowered tensor over the given (flat, flat) index pairs.
double max_support_value(const DistortionTensor& t, const std::vector<std::pair<int, int>>& support);

/// Matrix-free Gamma^(p) * v without materializing the nm x nm matrix.
/// p = 2 uses the separable expansion (O(n^2 m + n m^2)); other orders
/// cost O(n^2 m^2) per product.
class DistortionOperator {
 public:
  DistortionOperator(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double p);

  int n() const { return static_cast<int>(dx_.rows()); }
  int m() const { return static_cast<int>(dy_.rows()); }
  int dim() const { return n() * m(); }
  double power() const { return p_; }

  /// out = Gamma^(p) * v; reentrant.
  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const;
  double entry(int a, int b) const;

 private:
  Eigen::MatrixXd dx_, dy_;
  double p_;
};

}  // namespace ghrelax
