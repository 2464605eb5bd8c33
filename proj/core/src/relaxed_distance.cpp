#include "ghrelax/relaxed_distance.hpp"

#include <algorithm>
#include <cmath>

#include "ghrelax/error.hpp"
#include "ghrelax/symmetric_eigen.hpp"

namespace ghrelax {

namespace {

Eigen::MatrixXd bordered_objective(const Eigen::MatrixXd& block) {
  const Eigen::Index nm = block.rows();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(nm + 1, nm + 1);
  c.topLeftCorner(nm, nm) = block;
  return c;
}

double block_objective(const Eigen::MatrixXd& gamma, const Eigen::MatrixXd& z) {
  const Eigen::Index nm = gamma.rows();
  return gamma.cwiseProduct(z.topLeftCorner(nm, nm)).sum();
}

}  // namespace

double lifted_objective(const Eigen::MatrixXd& gamma, const Eigen::MatrixXd& z, double support_threshold) {
  const Eigen::Index nm = gamma.rows();
  if (z.rows() < nm || z.cols() < nm) throw Error(ErrorCode::DimensionMismatch, "Z is smaller than Gamma");
  const auto clipped = z.topLeftCorner(nm, nm).unaryExpr(
      [support_threshold](double v) { return v < support_threshold ? 0.0 : std::min(v, 1.0); });
  return gamma.cwiseProduct(clipped).sum();
}

namespace {

void check_order(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidArgument, "order p must be finite and >= 1");
  }
}

// Re-describes `z` as a solution of `prog`, keeping the run statistics of `run`.
SdpSolution solution_at(const ConicProgram& prog, const Eigen::MatrixXd& z, const SolverConfig& cfg,
                        const SdpSolution& run) {
  SdpSolution sol = run;
  sol.Z = z;
  sol.objective_value = prog.objective().cwiseProduct(z).sum();
  const SymmetricEigenResult eig = symmetric_eigen(z);
  sol.eigenvalues = eig.values;
  const double top = std::max(eig.values.maxCoeff(), 0.0);
  sol.numerical_rank = top > 0.0 ? static_cast<int>((eig.values.array() > cfg.tau_rank * top).count()) : 0;
  sol.feasibility = check_feasible(prog, z);
  return sol;
}

// Fills soft assignment and rounding in caller orientation.
void finish(RelaxedDistanceResult& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const int n = x.size();
  const int m = y.size();
  if (r.swapped) {
    r.soft_assignment = round_soft(r.solution.Z, m, n).transpose();
  } else {
    r.soft_assignment = round_soft(r.solution.Z, n, m);
  }
  r.matching = round_hard(r.soft_assignment, x, y);
  r.lower_bound_of = r.kind == FeasibleSetKind::GH;
}

}  // namespace

RelaxedDistanceResult relaxed_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                       FeasibleSetKind kind, double p, const SolverConfig& cfg,
                                       const std::optional<Eigen::MatrixXd>& warm_start) {
  check_order(p);
  cfg.validate();
  RelaxedDistanceResult r;
  r.p = p;
  r.kind = kind;
  r.swapped = kind == FeasibleSetKind::Sur && x.size() < y.size();
  const FiniteMetricSpace& a = r.swapped ? y : x;
  const FiniteMetricSpace& b = r.swapped ? x : y;

  ConicProgram prog = build_feasible_set(kind, a.size(), b.size());
  const DistortionTensor gamma = build_gamma(a, b, p);
  prog.set_objective(bordered_objective(gamma.matrix()));
  if (warm_start && (warm_start->rows() != prog.dim() || warm_start->cols() != prog.dim())) {
    throw Error(ErrorCode::DimensionMismatch, "warm start does not match the lifted dimension");
  }
  r.solution = solve(prog, cfg, warm_start);
  if (r.solution.status == SdpStatus::Infeasible) {
    throw Error(ErrorCode::NumericalBreakdown, "solver reported the relaxation infeasible");
  }

  if (warm_start) {
    const FeasibilityReport wf = check_feasible(prog, *warm_start);
    const double allowed = std::max(10.0 * cfg.tol, r.solution.feasibility.max_linear());
    if (wf.max_linear() <= allowed && wf.min_eigenvalue >= -allowed &&
        lifted_objective(gamma.matrix(), *warm_start) < lifted_objective(gamma.matrix(), r.solution.Z)) {
      r.solution = solution_at(prog, *warm_start, cfg, r.solution);
      r.warm_start_kept = true;
    }
  }

  const double big = std::max(a.size(), b.size());
  const double obj = lifted_objective(gamma.matrix(), r.solution.Z);
  r.value = 0.5 * std::pow(obj / (big * big), 1.0 / p);
  finish(r, x, y);
  return r;
}

RelaxedDistanceResult relaxed_distance_inf(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                           FeasibleSetKind kind, const SolverConfig& cfg,
                                           double tau_supp) {
  cfg.validate();
  if (!(tau_supp > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau_supp must be positive");
  RelaxedDistanceResult r;
  r.p = kInfinityOrder;
  r.kind = kind;
  r.swapped = kind == FeasibleSetKind::Sur && x.size() < y.size();
  const FiniteMetricSpace& a = r.swapped ? y : x;
  const FiniteMetricSpace& b = r.swapped ? x : y;

  const ConicProgram base = build_feasible_set(kind, a.size(), b.size());
  const DistortionTensor gamma = build_gamma(a, b, kInfinityOrder);
  const Eigen::MatrixXd& g = gamma.matrix();
  const double scale = std::max(1.0, g.maxCoeff());
  const double merge = 1e-12 * scale;

  std::vector<double> candidates(g.data(), g.data() + g.size());
  std::sort(candidates.begin(), candidates.end());
  std::vector<double> levels;
  for (double v : candidates) {
    if (levels.empty() || v - levels.back() > merge) levels.push_back(v);
  }

  std::optional<Eigen::MatrixXd> warm;
  auto feasible_at = [&](std::size_t k, SdpSolution& out) {
    const double t = levels[k];
    const Eigen::MatrixXd mask = (g.array() > t + merge).cast<double>().matrix();
    ConicProgram prog = base;
    prog.set_objective(bordered_objective(mask));
    out = solve(prog, cfg, warm);
    ++r.feasibility_solves;
    if (out.status == SdpStatus::Infeasible) {
      throw Error(ErrorCode::NumericalBreakdown, "solver reported the relaxation infeasible");
    }
    warm = out.Z;
    return block_objective(mask, out.Z) <= tau_supp;
  };

  // levels.back() is feasible with zero forbidden mass; only solve for the
  // certificate there if nothing smaller is feasible.
  std::ptrdiff_t lo = -1;
  auto hi = static_cast<std::ptrdiff_t>(levels.size()) - 1;
  SdpSolution best;
  bool have_best = false;
  while (hi - lo > 1) {
    const std::ptrdiff_t mid = lo + (hi - lo) / 2;
    SdpSolution trial;
    if (feasible_at(static_cast<std::size_t>(mid), trial)) {
      hi = mid;
      best = std::move(trial);
      have_best = true;
    } else {
      lo = mid;
    }
  }
  if (!have_best) {
    feasible_at(static_cast<std::size_t>(hi), best);
  }
  if (r.feasibility_solves > 64) {
    throw Error(ErrorCode::BisectionExhausted, "bisection did not terminate");
  }
  r.solution = std::move(best);
  r.value = 0.5 * levels[static_cast<std::size_t>(hi)];
  r.bisection_resolution = hi > 0 ? 0.5 * (levels[static_cast<std::size_t>(hi)] - levels[static_cast<std::size_t>(hi - 1)]) : 0.0;
  finish(r, x, y);
  return r;
}

Eigen::MatrixXd round_soft(const Eigen::MatrixXd& z, int n, int m) {
  const int nm = n * m;
  if (z.rows() != nm + 1 || z.cols() != nm + 1) {
    throw Error(ErrorCode::DimensionMismatch, "lifted matrix has the wrong size");
  }
  const double big = std::max(n, m);
  const Eigen::VectorXd row = z.topLeftCorner(nm, nm).rowwise().sum() / big;
  Eigen::MatrixXd soft(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) soft(i, j) = std::max(0.0, row(flat_index(i, j, m)));
  }
  return soft;
}

Matching round_hard(const Eigen::MatrixXd& soft, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const int n = x.size();
  const int m = y.size();
  if (soft.rows() != n || soft.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "soft assignment does not match the spaces");
  }
  Matching out;
  if (n == m) {
    out.map = max_weight_assignment(soft);
  } else {
    out.map.resize(n);
    for (int i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      soft.row(i).maxCoeff(&best);
      out.map[i] = static_cast<int>(best);
    }
  }
  out.bijective = is_bijection(out.map, m);
  out.distortion = distortion_of_matching(x, y, out.map);
  return out;
}

CompositionCertificate compose_certificate(const Eigen::MatrixXd& z, const Eigen::MatrixXd& v,
                                           const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                           const FiniteMetricSpace& w, FeasibleSetKind kind, double p) {
  check_order(p);
  const int n = x.size();
  const int m = y.size();
  const int l = w.size();
  if (z.rows() != n * m + 1 || z.cols() != n * m + 1 || v.rows() != m * l + 1 || v.cols() != m * l + 1) {
    throw Error(ErrorCode::DimensionMismatch, "lifted matrices do not match the spaces");
  }
  const int nl = n * l;
  CompositionCertificate cert;
  cert.T = Eigen::MatrixXd::Zero(nl + 1, nl + 1);
  for (int i = 0; i < n; ++i) {
    for (int i2 = 0; i2 < n; ++i2) {
      for (int k = 0; k < l; ++k) {
        for (int k2 = 0; k2 < l; ++k2) {
          double s = 0.0;
          for (int j = 0; j < m; ++j) {
            for (int j2 = 0; j2 < m; ++j2) {
              s += z(flat_index(i, j, m), flat_index(i2, j2, m)) * v(flat_index(j, k, l), flat_index(j2, k2, l));
            }
          }
          cert.T(flat_index(i, k, l), flat_index(i2, k2, l)) = s;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < l; ++k) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += z(flat_index(i, j, m), n * m) * v(flat_index(j, k, l), m * l);
      cert.T(flat_index(i, k, l), nl) = s;
      cert.T(nl, flat_index(i, k, l)) = s;
    }
  }
  cert.T(nl, nl) = 1.0;

  const ConicProgram prog = build_feasible_set(kind, n, l);
  cert.feasibility = check_feasible(prog, cert.T);
  cert.objective_T = block_objective(build_gamma(x, w, p).matrix(), cert.T);
  const double oz = std::max(0.0, block_objective(build_gamma(x, y, p).matrix(), z));
  const double ov = std::max(0.0, block_objective(build_gamma(y, w, p).matrix(), v));
  cert.objective_sum = oz + ov;
  cert.minkowski_bound = std::pow(std::pow(oz, 1.0 / p) + std::pow(ov, 1.0 / p), p);
  return cert;
}

}  // namespace ghrelax
