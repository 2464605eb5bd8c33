#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "ghrelax/matching.hpp"
#include "ghrelax/metric_space.hpp"

namespace ghrelax {

struct GhMatchConfig {
  double sigma0 = 5.0;
  double mu = 10.0;
  double lambda0 = 1.0;
  int outer_iters = 12;
  double inner_tol = 1e-8;
  int inner_max_iters = 1000;
  double p = 1.0;
  /// Outer loop stops once ||Ay - b||_inf drops to this value.
  double violation_tol = 1e-8;
  bool thresholding = false;
  double threshold = 1e-3;
  /// Spaces with more points use the matrix-free product.
  int dense_limit = 60;

  void validate() const;
};

struct GhMatchIterate {
  int outer = 0;
  double sigma = 0.0;
  double objective = 0.0;   ///< y^T Gamma^(p) y
  double lagrangian = 0.0;
  double violation = 0.0;   ///< ||Ay - b||_inf
  double sparsity = 0.0;
  int inner_iterations = 0;
  double projected_gradient = 0.0;
};

struct GhMatchResult {
  Eigen::VectorXd y;
  /// Row-wise argmax of y.
  Matching matching;
  /// Hungarian bijection on y; equals `matching` when that is bijective.
  Matching repaired;
  /// 1/2 max distortion of `repaired`, an upper bound on d_GH.
  double upper_bound = 0.0;
  /// 1/2 (y^T Gamma^(p) y / n^2)^(1/p).
  double p_mean_value = 0.0;
  double constraint_violation = 0.0;
  double sparsity = 0.0;
  /// Inner solves that hit the iteration cap without meeting inner_tol.
  int inner_stalls = 0;
  std::vector<GhMatchIterate> trajectory;
};

/// Row and column sums of y viewed as an n x n matrix (row-major), b = 1.
class MarginalOperator {
 public:
  explicit MarginalOperator(int n) : n_(n) {}
  int n() const { return n_; }
  /// out[0..n) = row sums, out[n..2n) = column sums.
  Eigen::VectorXd apply(const Eigen::VectorXd& y) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& w) const;
  Eigen::VectorXd rhs() const { return Eigen::VectorXd::Ones(2 * n_); }

 private:
  int n_;
};

/// Smooth objective on the box: returns f(y) and writes grad f(y).
struct BoxQpProblem {
  std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)> value_and_gradient;
};

/// f(y) = y^T Q y + c^T y + constant, with Q symmetric and given as a product.
BoxQpProblem quadratic_problem(std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> apply_q,
                               Eigen::VectorXd linear, double constant = 0.0);

struct BoxQpResult {
  Eigen::VectorXd y;
  double objective = 0.0;
  double projected_gradient = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Projected gradient on [0,1]^d with Barzilai-Borwein steps and monotone
/// Armijo backtracking. Returns the best iterate seen.
BoxQpResult box_qp_minimize(const BoxQpProblem& problem, const Eigen::VectorXd& start, double tol,
                            int max_iters);

struct MapExtraction {
  std::vector<int> map;
  bool bijective = false;
  std::vector<int> repaired;
};

/// map(i) = argmax_j y[i*n + j], lowest index on ties. The repair is a
/// maximum-weight perfect matching on y.
MapExtraction extract_map(const Eigen::VectorXd& y, int n);

/// Projected augmented-Lagrangian matching for |X| = |Y|.
GhMatchResult gh_match(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhMatchConfig& cfg = {});

/// Fraction of entries within `eps` of 0 or 1.
double sparsity_of(const Eigen::VectorXd& y, double eps = 1e-3);

void write_trajectory_csv(std::ostream& os, const GhMatchResult& result);

}  // namespace ghrelax
