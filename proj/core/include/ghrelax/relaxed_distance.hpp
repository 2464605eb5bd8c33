#pragma once

#include <optional>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ghrelax/conic_program.hpp"
#include "ghrelax/distortion.hpp"
#include "ghrelax/matching.hpp"
#include "ghrelax/metric_space.hpp"
#include "ghrelax/sdp.hpp"

namespace ghrelax {

/// Convex supersets of lifted correspondences: all relations (GH),
/// bijections (Reg, n = m) and surjections X -> Y (Sur, n >= m).
enum class FeasibleSetKind { GH, Reg, Sur };

std::string to_string(FeasibleSetKind kind);
FeasibleSetKind parse_feasible_set_kind(std::string_view name);

/// Support threshold for reading the support of a solution.
inline constexpr double kSupportThreshold = 1e-5;

/// Constraint set over (nm+1) x (nm+1) matrices with the bordered layout
/// [Zhat z; z^T 1]. The objective is left at zero.
ConicProgram build_feasible_set(FeasibleSetKind kind, int n, int m);

/// Rank-one lift [mu mu^T, mu; mu^T, 1] of a relation covering X and Y.
/// The weights of each point of the larger space are normalized to sum to
/// one, so |mu| = max(n, m) and Zhat 1 = max(n, m) z holds exactly. Mass is
/// split when a point of the larger space has several partners.
Eigen::MatrixXd lift_correspondence(const std::vector<std::pair<int, int>>& relation, int n, int m);
Eigen::MatrixXd lift_permutation(const std::vector<int>& perm);

/// The weights mu used by lift_correspondence, flattened as i*m + j.
Eigen::VectorXd correspondence_weights(const std::vector<std::pair<int, int>>& relation, int n, int m);

struct RelaxedDistanceResult {
  double value = 0.0;
  double p = 1.0;
  FeasibleSetKind kind = FeasibleSetKind::GH;
  /// Solution of the program actually solved. For Sur with |X| < |Y| the
  /// arguments were swapped and this solution is in (Y, X) layout.
  SdpSolution solution;
  bool swapped = false;
  /// |X| x |Y| nonnegative matrix in caller orientation.
  Eigen::MatrixXd soft_assignment;
  Matching matching;
  /// True only for GH, whose value never exceeds d_GH.
  bool lower_bound_of = false;
  /// Max-objective variant only: half the gap to the next smaller candidate
  /// threshold, and the number of SDP solves used by the bisection.
  double bisection_resolution = 0.0;
  int feasibility_solves = 0;
  /// The warm start was returned because it beat the solver output.
  bool warm_start_kept = false;
};

/// Trace(Gamma Zhat) with Zhat clipped to [0, 1] and entries below
/// `support_threshold` read as zero. `gamma` is the nm x nm block; `z` may be
/// bordered.
double lifted_objective(const Eigen::MatrixXd& gamma, const Eigen::MatrixXd& z,
                        double support_threshold = kSupportThreshold);

/// 1/2 (lifted_objective(Gamma^(p), Z) / max(n,m)^2)^(1/p) at the minimizer of
/// Trace(Gamma^(p) Zhat) over the chosen set.
/// `warm_start` is an initial Z in the layout of `RelaxedDistanceResult::solution`,
/// e.g. the solution of another order for the same pair. It is kept as the
/// answer when its objective is lower and its linear violation is within
/// max(10 tol, violation of the solver output).
RelaxedDistanceResult relaxed_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                       FeasibleSetKind kind, double p, const SolverConfig& cfg = {},
                                       const std::optional<Eigen::MatrixXd>& warm_start = std::nullopt);

/// 1/2 min over the set of the largest Gamma on the support of Z, found by
/// bisection over the distinct Gamma values. Each step minimizes the mass
/// Z puts on entries with Gamma above the candidate threshold; the threshold
/// is feasible when that mass is at most `tau_supp`.
RelaxedDistanceResult relaxed_distance_inf(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                           FeasibleSetKind kind, const SolverConfig& cfg = {},
                                           double tau_supp = kSupportThreshold);

/// Zhat 1 / max(n, m), reshaped to n x m.
Eigen::MatrixXd round_soft(const Eigen::MatrixXd& z, int n, int m);
inline Eigen::MatrixXd round_soft(const SdpSolution& sol, int n, int m) { return round_soft(sol.Z, n, m); }

/// Square: maximum-weight perfect matching. Rectangular: row-wise argmax
/// with lowest-index ties. Distortion is evaluated on the given spaces.
Matching round_hard(const Eigen::MatrixXd& soft, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Composition of relaxed solutions for (X, Y) and (Y, W):
///   T_{ik,i'k'} = sum_{j,j'} Z_{ij,i'j'} V_{jk,j'k'},  border t = z * v.
struct CompositionCertificate {
  Eigen::MatrixXd T;
  FeasibilityReport feasibility;
  /// Trace(Gamma^(p)_{XW} That).
  double objective_T = 0.0;
  /// Trace(Gamma^(p)_{XY} Zhat) + Trace(Gamma^(p)_{YW} Vhat).
  double objective_sum = 0.0;
  /// (Trace(.. Zhat)^(1/p) + Trace(.. Vhat)^(1/p))^p, the Minkowski bound.
  double minkowski_bound = 0.0;
};

CompositionCertificate compose_certificate(const Eigen::MatrixXd& z, const Eigen::MatrixXd& v,
                                           const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                           const FiniteMetricSpace& w, FeasibleSetKind kind, double p);

}  // namespace ghrelax
