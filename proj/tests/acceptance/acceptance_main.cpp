// Acceptance suite: one PASS/FAIL line per criterion.
//
//   ghrelax_acceptance            run everything
//   ghrelax_acceptance A3 A7      run a subset

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ghrelax/classification.hpp"
#include "ghrelax/distortion.hpp"
#include "ghrelax/exact_oracle.hpp"
#include "ghrelax/ghmatch.hpp"
#include "ghrelax/matching.hpp"
#include "ghrelax/pairwise.hpp"
#include "ghrelax/relaxed_distance.hpp"
#include "ghrelax/symmetric_eigen.hpp"

using namespace ghrelax;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  int checks = 0;
  int failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      pass = false;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr FeasibleSetKind kGH = FeasibleSetKind::GH;
constexpr FeasibleSetKind kReg = FeasibleSetKind::Reg;
constexpr FeasibleSetKind kSur = FeasibleSetKind::Sur;

SolverConfig solver_with_tol(double tol) {
  SolverConfig cfg;
  cfg.tol = tol;
  return cfg;
}

// Value-scale slack for a relative solver tolerance at order p.
double value_slack(double tol, double p) { return 0.5 * std::pow(tol, 1.0 / p); }

Outcome a1_isometry_zero() {
  Outcome o;
  std::mt19937_64 rng(101);
  const SolverConfig cfg = solver_with_tol(1e-9);
  double worst_sdp = 0.0, worst_match = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + t % 3;
    const FiniteMetricSpace x = random_generic_space(n, rng);
    const FiniteMetricSpace y = x.permuted(random_permutation(n, rng));
    for (FeasibleSetKind kind : {kGH, kReg, kSur}) {
      for (double p : {1.0, 2.0}) {
        const double v = relaxed_distance(x, y, kind, p, cfg).value;
        worst_sdp = std::max(worst_sdp, v);
        o.check(v <= 1e-4, fmt("trial %d %s p=%g value %.3g", t, to_string(kind).c_str(), p, v));
      }
    }
    const double ub = gh_match(x, y).upper_bound;
    worst_match = std::max(worst_match, ub);
    o.check(ub <= 1e-6, fmt("trial %d ghmatch upper bound %.3g", t, ub));
  }
  o.detail = fmt("max relaxed value %.2e (<= 1e-4), max GHMatch bound %.2e (<= 1e-6)", worst_sdp, worst_match);
  return o;
}

Outcome a2_lower_bound_sandwich() {
  Outcome o;
  std::mt19937_64 rng(202);
  const std::vector<std::pair<int, int>> shapes = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}, {4, 2},
                                                   {3, 4}, {4, 3}, {4, 4}, {3, 5}, {5, 3}, {2, 5}};
  const SolverConfig cfg = solver_with_tol(1e-8);
  double worst_gap = -1e300, worst_upper = -1e300;
  int sandwiches = 0;
  for (int t = 0; t < 50; ++t) {
    const auto [n, m] = shapes[t % shapes.size()];
    const FiniteMetricSpace x = random_generic_space(n, rng);
    const FiniteMetricSpace y = random_generic_space(m, rng);
    const double relaxed = relaxed_distance(x, y, kGH, 1.0, cfg).value;
    const double exact = exact_gh(x, y).value;
    worst_gap = std::max(worst_gap, relaxed - exact);
    o.check(relaxed <= exact + 1e-5, fmt("pair %d (%dx%d): relaxed %.6g > exact %.6g", t, n, m, relaxed, exact));
    if (n == m) {
      const GhMatchResult g = gh_match(x, y);
      if (g.matching.bijective) {
        ++sandwiches;
        const double up = distortion_of_matching(x, y, g.matching.map);
        worst_upper = std::max(worst_upper, exact - up);
        o.check(exact <= up + 1e-9, fmt("pair %d: exact %.6g > matching distortion %.6g", t, exact, up));
      }
    }
  }
  o.detail = fmt("max(relaxed - exact) %.2e, max(exact - matching) %.2e over %d bijective matchings", worst_gap,
                 worst_upper, sandwiches);
  return o;
}

Outcome a3_triangle() {
  Outcome o;
  std::mt19937_64 rng(303);
  const double tol = 1e-7;
  const SolverConfig cfg = solver_with_tol(tol);
  double worst = -1e300, worst_power = -1e300;
  int power_violations = 0;
  for (int t = 0; t < 100; ++t) {
    const FiniteMetricSpace x = random_generic_space(4, rng);
    const FiniteMetricSpace y = random_generic_space(4, rng);
    const FiniteMetricSpace w = random_generic_space(4, rng);
    for (FeasibleSetKind kind : {kGH, kReg}) {
      for (double p : {1.0, 2.0}) {
        const double xy = relaxed_distance(x, y, kind, p, cfg).value;
        const double yw = relaxed_distance(y, w, kind, p, cfg).value;
        const double xw = relaxed_distance(x, w, kind, p, cfg).value;
        const double slack = 3.0 * value_slack(tol, p);
        worst = std::max(worst, xw - xy - yw);
        o.check(xw <= xy + yw + slack,
                fmt("triple %d %s p=%g: %.6g > %.6g + %.6g", t, to_string(kind).c_str(), p, xw, xy, yw));
        const double excess = std::pow(xw, p) - std::pow(xy, p) - std::pow(yw, p);
        worst_power = std::max(worst_power, excess);
        const bool power_ok = excess <= 3.0 * std::pow(0.5, p) * tol;
        if (!power_ok) ++power_violations;
        o.check(power_ok, fmt("triple %d %s p=%g: p-power form exceeds by %.3g", t, to_string(kind).c_str(), p, excess));
      }
    }
  }
  o.detail = fmt("max triangle excess %.2e, max p-power excess %.2e, p-power violations %d/400", worst, worst_power,
                 power_violations);
  return o;
}

Outcome a4_composition() {
  Outcome o;
  std::mt19937_64 rng(404);
  const double tol = 1e-7;
  SolverConfig cfg = solver_with_tol(tol);
  cfg.max_iter = 1000000;
  double worst_res = 0.0, worst_obj = -1e300, worst_minkowski = -1e300;
  for (int t = 0; t < 20; ++t) {
    const FiniteMetricSpace x = random_generic_space(4, rng);
    const FiniteMetricSpace y = random_generic_space(4, rng);
    const FiniteMetricSpace w = random_generic_space(4, rng);
    const FeasibleSetKind kind = t % 2 == 0 ? kGH : kReg;
    const double p = t % 4 < 2 ? 1.0 : 2.0;
    const RelaxedDistanceResult zr = relaxed_distance(x, y, kind, p, cfg);
    const RelaxedDistanceResult vr = relaxed_distance(y, w, kind, p, cfg);
    const CompositionCertificate c = compose_certificate(zr.solution.Z, vr.solution.Z, x, y, w, kind, p);
    const double res = std::max(c.feasibility.max_linear(), -c.feasibility.min_eigenvalue);
    worst_res = std::max(worst_res, res);
    const std::string tag = fmt("triple %d %s p=%g", t, to_string(kind).c_str(), p);
    o.check(res <= 10.0 * tol, tag + fmt(": residual %.3g", res));
    if (p == 1.0) {
      worst_obj = std::max(worst_obj, c.objective_T - c.objective_sum);
      o.check(c.objective_T <= c.objective_sum + 10.0 * tol,
              tag + fmt(": objective_T %.6g > sum %.6g", c.objective_T, c.objective_sum));
    } else {
      // Above p = 1 the sum of objectives is not an upper bound; the Minkowski combination is.
      worst_minkowski = std::max(worst_minkowski, c.objective_T - c.minkowski_bound);
      o.check(c.objective_T <= c.minkowski_bound + 10.0 * tol,
              tag + fmt(": objective_T %.6g > Minkowski bound %.6g", c.objective_T, c.minkowski_bound));
    }
  }
  o.detail = fmt("max residual %.2e (<= %.0e), p=1 max objective_T - sum %.2e, p=2 max objective_T - Minkowski %.2e",
                 worst_res, 10.0 * tol, worst_obj, worst_minkowski);
  return o;
}

Outcome a5_monotonicity() {
  Outcome o;
  std::mt19937_64 rng(505);
  const SolverConfig cfg = solver_with_tol(1e-8);
  const double slack = 1e-5;
  double worst_chain = -1e300, worst_limit = -1e300;
  int kept = 0;
  for (int t = 0; t < 30; ++t) {
    const FeasibleSetKind kind = t % 3 == 0 ? kGH : (t % 3 == 1 ? kReg : kSur);
    const int n = 3;
    const int m = kind == kSur ? 2 + t % 2 : 3;
    const FiniteMetricSpace x = random_generic_space(n, rng);
    const FiniteMetricSpace y = random_generic_space(m, rng);
    const RelaxedDistanceResult inf = relaxed_distance_inf(x, y, kind, cfg);
    // Large orders continue from the max-objective solution.
    const RelaxedDistanceResult r8 = relaxed_distance(x, y, kind, 8.0, cfg, inf.solution.Z);
    const RelaxedDistanceResult r32 = relaxed_distance(x, y, kind, 32.0, cfg, inf.solution.Z);
    kept += r8.warm_start_kept + r32.warm_start_kept;
    const double d1 = relaxed_distance(x, y, kind, 1.0, cfg).value;
    const double d2 = relaxed_distance(x, y, kind, 2.0, cfg).value;
    const double d8 = r8.value, d32 = r32.value, dinf = inf.value;
    const double diam = std::max(x.diameter(), y.diameter());
    worst_chain = std::max({worst_chain, d1 - d2, d2 - d8, d8 - dinf});
    worst_limit = std::max(worst_limit, (dinf - d32) / diam);
    const std::string tag = fmt("pair %d %s", t, to_string(kind).c_str());
    o.check(d1 <= d2 + slack, tag + fmt(": d1 %.6g > d2 %.6g", d1, d2));
    o.check(d2 <= d8 + slack, tag + fmt(": d2 %.6g > d8 %.6g", d2, d8));
    o.check(d8 <= dinf + slack, tag + fmt(": d8 %.6g > dinf %.6g", d8, dinf));
    o.check(dinf - d32 <= 0.1 * diam, tag + fmt(": dinf - d32 = %.4g > 0.1 diam", dinf - d32));
  }
  o.detail = fmt("max chain step excess %.2e, max (dinf - d32)/diam %.3f (<= 0.1), warm start kept in %d/60 large-p solves",
                 worst_chain, worst_limit, kept);
  return o;
}

Outcome a6_counterexample() {
  Outcome o;
  const FiniteMetricSpace x = FiniteMetricSpace::validated((Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished());
  const FiniteMetricSpace y =
      FiniteMetricSpace::validated((Eigen::MatrixXd(3, 3) << 0, 0, 1, 0, 0, 1, 1, 1, 0).finished());
  const FiniteMetricSpace w = FiniteMetricSpace::validated(Eigen::MatrixXd::Zero(1, 1));
  const auto eval = [&](Normalization norm) {
    return std::array<double, 3>{exact_gh_p_rank1(x, y, 1.0, norm).value, exact_gh_p_rank1(y, w, 1.0, norm).value,
                                 exact_gh_p_rank1(x, w, 1.0, norm).value};
  };
  const auto [xy, yw, xw] = eval(Normalization::None);
  const auto [sxy, syw, sxw] = eval(Normalization::MaxSquared);
  o.check(xy == 0.0, fmt("d(X,Y) = %.17g", xy));
  o.check(xw + xy < yw, fmt("d(X,W) + d(X,Y) = %.17g not < d(Y,W) = %.17g", xw + xy, yw));
  o.check(yw == 2.0 && xw == 1.0, fmt("constants %.17g, %.17g differ from 2, 1", yw, xw));
  o.detail = fmt("unnormalized: d(X,Y)=%g d(Y,W)=%g d(X,W)=%g; with 1/max(n,m)^2: %g, %g, %g", xy, yw, xw, sxy, syw,
                 sxw);
  return o;
}

Outcome a7_classification() {
  Outcome o;
  SyntheticClassConfig sc;
  sc.classes = 4;
  sc.per_class = 6;
  sc.points = 8;
  sc.seed = 707;
  const LabeledSpaces set = synthetic_classes(sc);
  PairwiseConfig pc;
  pc.method = PairMethod::Sdp;
  pc.kind = kGH;
  pc.p = 1.0;
  pc.solver.tol = 1e-3;
  pc.jobs = 0;
  const PairwiseResult res = pairwise_distance_matrix(set.spaces, pc);
  o.check(res.failures() == 0, fmt("%d pair failures", res.failures()));
  const ClassificationReport rep = nearest_neighbor_classify(res.distances, set.labels);
  o.check(rep.success_frequency >= 0.9, fmt("success %.3f", rep.success_frequency));
  double within = 0.0, across = 1e300;
  for (int a = 0; a < res.distances.rows(); ++a) {
    for (int b = a + 1; b < res.distances.cols(); ++b) {
      if (set.labels[a] == set.labels[b]) {
        within = std::max(within, res.distances(a, b));
      } else {
        across = std::min(across, res.distances(a, b));
      }
    }
  }
  o.detail = fmt("success %.3f (%d/%zu), max within-class %.2e, min cross-class %.2e", rep.success_frequency,
                 rep.correct, set.labels.size(), within, across);
  return o;
}

Outcome a8_generic_local_equality() {
  Outcome o;
  std::mt19937_64 rng(808);
  const SolverConfig cfg = solver_with_tol(1e-10);
  const int n = 5;
  double worst_p = 0.0, worst_inf = -1e300;
  for (int t = 0; t < 20; ++t) {
    const FiniteMetricSpace x = random_generic_space(n, rng);
    const double delta = is_generic(x).min_gap;
    const FeasibleSetKind kind = t % 2 == 0 ? kGH : kReg;
    for (double p : {1.0, 2.0}) {
      const double magnitude = 0.9 * std::pow(delta, p) / (2.0 * n);
      const FiniteMetricSpace y = perturb(x, magnitude, rng());
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) sum += std::pow(std::abs(x(i, j) - y(i, j)), p);
      }
      const double formula = 0.5 * std::pow(sum / (n * n), 1.0 / p);
      const double v = relaxed_distance(x, y, kind, p, cfg).value;
      worst_p = std::max(worst_p, std::abs(v - formula));
      o.check(std::abs(v - formula) <= 1e-4,
              fmt("space %d %s p=%g: %.6g vs formula %.6g", t, to_string(kind).c_str(), p, v, formula));
    }
    const FiniteMetricSpace y = perturb(x, 0.45 * delta, rng());
    const RelaxedDistanceResult r = relaxed_distance_inf(x, y, kind, solver_with_tol(1e-8));
    const double exact = exact_gh_bijective(x, y).value;
    worst_inf = std::max(worst_inf, std::abs(r.value - exact) - r.bisection_resolution);
    o.check(std::abs(r.value - exact) <= r.bisection_resolution + 1e-12,
            fmt("space %d %s inf: %.6g vs exact %.6g (resolution %.3g)", t, to_string(kind).c_str(), r.value, exact,
                r.bisection_resolution));
  }
  o.detail = fmt("max |relaxed - formula| %.2e (<= 1e-4), max |inf - exact| - resolution %.2e (<= 0)", worst_p,
                 worst_inf);
  return o;
}

Outcome a9_ghmatch_scale() {
  Outcome o;
  std::mt19937_64 rng(909);
  const int n = 60;
  const FiniteMetricSpace x = random_generic_space(n, rng, 3);
  const std::vector<int> perm = random_permutation(n, rng);
  const FiniteMetricSpace y = x.permuted(perm);
  const auto t0 = std::chrono::steady_clock::now();
  const GhMatchResult r = gh_match(x, y);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int recovered = 0;
  for (int a = 0; a < n; ++a) recovered += r.matching.map[perm[a]] == a;
  o.check(recovered == n, fmt("recovered %d/%d", recovered, n));
  o.check(r.constraint_violation <= 1e-5, fmt("violation %.3g", r.constraint_violation));
  o.check(secs <= 360.0, fmt("took %.1f s", secs));
  o.detail = fmt("n=%d recovered %d/%d, violation %.2e, upper bound %.2e, %.2f s", n, recovered, n,
                 r.constraint_violation, r.upper_bound, secs);
  return o;
}

// Connected or not, relabeling keeps the graph isomorphic.
bool same_degree_multiset(const SimpleGraph& a, const SimpleGraph& b) {
  auto da = a.degrees(), db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  return da == db;
}

Outcome a10_graph_isomorphism() {
  Outcome o;
  std::mt19937_64 rng(1010);
  const SolverConfig cfg = solver_with_tol(1e-8);
  double worst_iso = 0.0, min_exact = 1e300;
  std::ostringstream nonzero;
  int pairs = 0;
  for (int t = 0; t < 8; ++t) {
    const int n = 4 + t % 5;
    const SimpleGraph g = random_graph(n, 0.5, rng);
    const SimpleGraph h = g.relabeled(random_permutation(n, rng));
    const double v = relaxed_distance(graph_to_metric(g), graph_to_metric(h), kReg, 1.0, cfg).value;
    worst_iso = std::max(worst_iso, v);
    o.check(v <= 1e-4, fmt("isomorphic pair %d (n=%d): %.3g", t, n, v));
  }
  while (pairs < 6) {
    const SimpleGraph g = random_graph(4, 0.5, rng);
    const SimpleGraph h = random_graph(4, 0.5, rng);
    if (same_degree_multiset(g, h)) continue;
    const FiniteMetricSpace gx = graph_to_metric(g), hx = graph_to_metric(h);
    const double exact = exact_gh(gx, hx).value;
    const double relaxed = relaxed_distance(gx, hx, kReg, 1.0, cfg).value;
    min_exact = std::min(min_exact, exact);
    o.check(exact > 0.0, fmt("non-isomorphic pair %d: exact %.3g", pairs, exact));
    nonzero << (pairs ? ", " : "") << fmt("%.3g", relaxed);
    ++pairs;
  }
  o.detail = fmt("max isomorphic value %.2e (<= 1e-4), min exact on distinct degrees %.3g, relaxed Reg values [", worst_iso,
                 min_exact) +
             nonzero.str() + "]";
  return o;
}

Outcome a11_solver_properties() {
  Outcome o;
  std::mt19937_64 rng(1111);
  std::normal_distribution<double> gauss;
  const auto random_symmetric = [&](int d) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = gauss(rng);
    }
    return m;
  };
  double worst_idem = 0.0, worst_expand = 0.0, worst_recon = 0.0, worst_orth = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + t % 40;
    const Eigen::MatrixXd a = random_symmetric(d);
    const Eigen::MatrixXd b = random_symmetric(d);
    const Eigen::MatrixXd pa = project_psd(a);
    const Eigen::MatrixXd pb = project_psd(b);
    const double idem = (project_psd(pa) - pa).norm() / std::max(1.0, pa.norm());
    const double expand = (pa - pb).norm() - (a - b).norm();
    worst_idem = std::max(worst_idem, idem);
    worst_expand = std::max(worst_expand, expand);
    o.check(idem <= 1e-10, fmt("matrix %d: idempotence residual %.3g", t, idem));
    o.check(expand <= 1e-10 * (a - b).norm(), fmt("matrix %d: expansion %.3g", t, expand));
  }
  for (int d : {1, 2, 3, 10, 50, 100, 150, 200}) {
    const Eigen::MatrixXd m = random_symmetric(d);
    const SymmetricEigenResult e = symmetric_eigen(m);
    const double recon =
        (e.vectors * e.values.asDiagonal() * e.vectors.transpose() - m).norm() / std::max(1e-300, m.norm());
    const double orth = (e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(d, d)).norm();
    worst_recon = std::max(worst_recon, recon);
    worst_orth = std::max(worst_orth, orth);
    o.check(recon <= 1e-10, fmt("dim %d: reconstruction %.3g", d, recon));
    o.check(orth <= 1e-10, fmt("dim %d: orthogonality %.3g", d, orth));
  }
  o.detail = fmt("idempotence %.1e, expansion %.1e, reconstruction %.1e, orthogonality %.1e", worst_idem, worst_expand,
                 worst_recon, worst_orth);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"A1", a1_isometry_zero},       {"A2", a2_lower_bound_sandwich},  {"A3", a3_triangle},
      {"A4", a4_composition},         {"A5", a5_monotonicity},          {"A6", a6_counterexample},
      {"A7", a7_classification},      {"A8", a8_generic_local_equality}, {"A9", a9_ghmatch_scale},
      {"A10", a10_graph_isomorphism}, {"A11", a11_solver_properties},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s %s [%.1fs]", id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    if (o.failures > 0) std::printf(" (%d/%d checks failed; first: %s)", o.failures, o.checks, o.first_failure.c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
