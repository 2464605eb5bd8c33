#include "ghrelax/ghmatch.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>

#include "ghrelax/distortion.hpp"
#include "ghrelax/error.hpp"

namespace ghrelax {

void GhMatchConfig::validate() const {
  if (!(sigma0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma0 must be positive");
  if (!(mu > 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must exceed 1");
  if (outer_iters < 1 || inner_max_iters < 1) throw Error(ErrorCode::InvalidArgument, "iteration caps must be positive");
  if (!(inner_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "inner_tol must be positive");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "p must be finite and >= 1");
  if (!(threshold >= 0.0 && threshold < 0.5)) throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0, 0.5)");
}

Eigen::VectorXd MarginalOperator::apply(const Eigen::VectorXd& y) const {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> Y(y.data(), n_, n_);
  Eigen::VectorXd out(2 * n_);
  out.head(n_) = Y.rowwise().sum();
  out.tail(n_) = Y.colwise().sum().transpose();
  return out;
}

Eigen::VectorXd MarginalOperator::apply_transpose(const Eigen::VectorXd& w) const {
  Eigen::VectorXd out(n_ * n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out(i * n_ + j) = w(i) + w(n_ + j);
  }
  return out;
}

BoxQpProblem quadratic_problem(std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> apply_q,
                               Eigen::VectorXd linear, double constant) {
  BoxQpProblem prob;
  prob.value_and_gradient = [q = std::move(apply_q), c = std::move(linear), constant](const Eigen::VectorXd& y,
                                                                                       Eigen::VectorXd& grad) {
    Eigen::VectorXd qy;
    q(y, qy);
    grad = 2.0 * qy + c;
    return y.dot(qy) + c.dot(y) + constant;
  };
  return prob;
}

namespace {

Eigen::VectorXd clip01(const Eigen::VectorXd& v) { return v.cwiseMax(0.0).cwiseMin(1.0); }

double projected_gradient_norm(const Eigen::VectorXd& y, const Eigen::VectorXd& g) {
  return (y - clip01(y - g)).lpNorm<Eigen::Infinity>();
}

}  // namespace

BoxQpResult box_qp_minimize(const BoxQpProblem& problem, const Eigen::VectorXd& start, double tol,
                            int max_iters) {
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxHalvings = 60;
  BoxQpResult out;
  Eigen::VectorXd y = clip01(start);
  Eigen::VectorXd g;
  double f = problem.value_and_gradient(y, g);
  double alpha = 1.0 / std::max(1.0, g.lpNorm<Eigen::Infinity>());
  Eigen::VectorXd trial, g_trial;

  int it = 0;
  for (; it < max_iters; ++it) {
    out.projected_gradient = projected_gradient_norm(y, g);
    if (out.projected_gradient <= tol) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    double f_trial = f;
    for (int h = 0; h < kMaxHalvings; ++h) {
      trial = clip01(y - alpha * g);
      const double decrease = g.dot(trial - y);
      f_trial = problem.value_and_gradient(trial, g_trial);
      if (f_trial <= f + kArmijo * decrease) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd s = trial - y;
    const Eigen::VectorXd r = g_trial - g;
    const double sr = s.dot(r);
    const double ss = s.squaredNorm();
    if (ss == 0.0) break;
    alpha = sr > 0.0 ? std::clamp(ss / sr, 1e-20, 1e20) : std::min(1e20, 2.0 * alpha);
    y.swap(trial);
    g.swap(g_trial);
    f = f_trial;
  }
  out.iterations = it;
  if (!out.converged) out.projected_gradient = projected_gradient_norm(y, g);
  out.y = std::move(y);
  out.objective = f;
  return out;
}

MapExtraction extract_map(const Eigen::VectorXd& y, int n) {
  if (n < 1 || y.size() != static_cast<Eigen::Index>(n) * n) {
    throw Error(ErrorCode::DimensionMismatch, "y must have n^2 entries");
  }
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> Y(y.data(), n, n);
  MapExtraction out;
  out.map.resize(n);
  for (int i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    Y.row(i).maxCoeff(&best);
    out.map[i] = static_cast<int>(best);
  }
  out.bijective = is_bijection(out.map, n);
  out.repaired = out.bijective ? out.map : max_weight_assignment(Eigen::MatrixXd(Y));
  return out;
}

double sparsity_of(const Eigen::VectorXd& y, double eps) {
  if (y.size() == 0) return 1.0;
  Eigen::Index near = 0;
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    if (std::abs(y(k)) <= eps || std::abs(y(k) - 1.0) <= eps) ++near;
  }
  return static_cast<double>(near) / static_cast<double>(y.size());
}

GhMatchResult gh_match(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhMatchConfig& cfg) {
  cfg.validate();
  const int n = x.size();
  if (y.size() != n) throw Error(ErrorCode::CardinalityMismatch, "GHMatch needs |X| = |Y|");
  const int dim = n * n;

  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> gamma_product;
  if (n <= cfg.dense_limit) {
    auto gamma = std::make_shared<Eigen::MatrixXd>(build_gamma(x, y, cfg.p).matrix());
    gamma_product = [gamma](const Eigen::VectorXd& v, Eigen::VectorXd& out) { out.noalias() = *gamma * v; };
  } else {
    auto op = std::make_shared<DistortionOperator>(x, y, cfg.p);
    gamma_product = [op](const Eigen::VectorXd& v, Eigen::VectorXd& out) { op->apply(v, out); };
  }

  const MarginalOperator a(n);
  const Eigen::VectorXd b = a.rhs();
  Eigen::VectorXd yk = Eigen::VectorXd::Constant(dim, 1.0 / n);
  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(2 * n, cfg.lambda0);
  double sigma = cfg.sigma0;

  GhMatchResult res;
  Eigen::VectorXd gy;
  for (int k = 0; k < cfg.outer_iters; ++k) {
    BoxQpProblem prob;
    prob.value_and_gradient = [&](const Eigen::VectorXd& v, Eigen::VectorXd& grad) {
      gamma_product(v, gy);
      const Eigen::VectorXd r = a.apply(v) - b;
      grad = 2.0 * gy + a.apply_transpose(sigma * r - lambda);
      return v.dot(gy) - lambda.dot(r) + 0.5 * sigma * r.squaredNorm();
    };
    BoxQpResult inner = box_qp_minimize(prob, yk, cfg.inner_tol, cfg.inner_max_iters);
    yk = std::move(inner.y);
    if (cfg.thresholding) {
      for (Eigen::Index t = 0; t < yk.size(); ++t) {
        if (yk(t) < cfg.threshold) yk(t) = 0.0;
      }
    }
    if (!inner.converged) ++res.inner_stalls;

    const Eigen::VectorXd r = a.apply(yk) - b;
    GhMatchIterate rec;
    rec.outer = k;
    rec.sigma = sigma;
    gamma_product(yk, gy);
    rec.objective = yk.dot(gy);
    rec.lagrangian = rec.objective - lambda.dot(r) + 0.5 * sigma * r.squaredNorm();
    rec.violation = r.lpNorm<Eigen::Infinity>();
    rec.sparsity = sparsity_of(yk);
    rec.inner_iterations = inner.iterations;
    rec.projected_gradient = inner.projected_gradient;
    res.trajectory.push_back(rec);

    lambda -= sigma * r;
    sigma *= cfg.mu;
    if (rec.violation <= cfg.violation_tol) break;
  }

  const MapExtraction ext = extract_map(yk, n);
  res.matching.map = ext.map;
  res.matching.bijective = ext.bijective;
  res.matching.distortion = distortion_of_matching(x, y, ext.map);
  res.repaired.map = ext.repaired;
  res.repaired.bijective = true;
  res.repaired.distortion = distortion_of_matching(x, y, ext.repaired);
  res.upper_bound = res.repaired.distortion;

  gamma_product(yk, gy);
  const double obj = std::max(0.0, yk.dot(gy));
  res.p_mean_value = 0.5 * std::pow(obj / (static_cast<double>(n) * n), 1.0 / cfg.p);
  res.constraint_violation = (a.apply(yk) - b).lpNorm<Eigen::Infinity>();
  res.sparsity = sparsity_of(yk);
  res.y = std::move(yk);
  return res;
}

void write_trajectory_csv(std::ostream& os, const GhMatchResult& result) {
  os << "iteration,sigma,objective,lagrangian,violation,sparsity,inner_iterations,projected_gradient\n";
  const auto old = os.precision(17);
  for (const auto& t : result.trajectory) {
    os << t.outer << ',' << t.sigma << ',' << t.objective << ',' << t.lagrangian << ',' << t.violation << ','
       << t.sparsity << ',' << t.inner_iterations << ',' << t.projected_gradient << '\n';
  }
  os.precision(old);
}

}  // namespace ghrelax
