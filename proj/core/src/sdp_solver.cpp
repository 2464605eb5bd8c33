#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "ghrelax/error.hpp"
#include "ghrelax/sdp.hpp"
#include "ghrelax/symmetric_eigen.hpp"

namespace ghrelax {

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  if (!(tau_rank > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau_rank must be positive");
  if (!(alpha > 0.0 && alpha < 2.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 2)");
  if (anderson_memory < 0) throw Error(ErrorCode::InvalidArgument, "anderson_memory must be >= 0");
}

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::MaxIter: return "max_iter";
    case SdpStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr int kCheckInterval = 10;
constexpr int kHistoryInterval = 500;
constexpr int kRhoInterval = 100;
constexpr double kRhoRatio = 10.0;
constexpr double kRhoTrigger = 1.5;
constexpr int kStallWindow = 3000;
constexpr int kStallMinIter = 6000;
constexpr double kDualGrowth = 1.5;

// Half-vectorization with off-diagonal entries scaled by sqrt(2), so the
// Euclidean inner product equals the Frobenius one. Column-major upper part.
class SymmetricPacking {
 public:
  explicit SymmetricPacking(int dim) : dim_(dim) {}
  int dim() const { return dim_; }
  int size() const { return dim_ * (dim_ + 1) / 2; }
  int index(int r, int c) const {
    if (r > c) std::swap(r, c);
    return c * (c + 1) / 2 + r;
  }
  double weight(int r, int c) const { return r == c ? 1.0 : kSqrt2; }

  void pack(const Eigen::MatrixXd& m, Eigen::Ref<Eigen::VectorXd> out) const {
    int k = 0;
    for (int c = 0; c < dim_; ++c) {
      for (int r = 0; r < c; ++r) out(k++) = kSqrt2 * m(r, c);
      out(k++) = m(c, c);
    }
  }
  void unpack(const Eigen::Ref<const Eigen::VectorXd>& v, Eigen::MatrixXd& m) const {
    m.resize(dim_, dim_);
    int k = 0;
    for (int c = 0; c < dim_; ++c) {
      for (int r = 0; r < c; ++r) {
        const double x = v(k++) / kSqrt2;
        m(r, c) = x;
        m(c, r) = x;
      }
      m(c, c) = v(k++);
    }
  }

 private:
  int dim_;
};

// Projection onto {x : A x = b} in the norm weighted by D = diag(w).
class AffineProjector {
 public:
  AffineProjector(Eigen::SparseMatrix<double, Eigen::RowMajor> a, Eigen::VectorXd b, Eigen::VectorXd inv_w)
      : a_(std::move(a)), b_(std::move(b)), inv_w_(std::move(inv_w)) {
    const auto k = a_.rows();
    if (k == 0) return;
    const Eigen::SparseMatrix<double, Eigen::RowMajor> aw = a_ * inv_w_.asDiagonal();
    const Eigen::MatrixXd gram = Eigen::MatrixXd(aw * Eigen::SparseMatrix<double>(a_.transpose()));
    // Constraints are redundant by construction, so invert on the range only.
    const auto eig = symmetric_eigen(gram);
    const double top = eig.values.cwiseAbs().maxCoeff();
    const double cut = 1e-10 * std::max(top, 1e-300);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (eig.values(i) > cut) inv(i) = 1.0 / eig.values(i);
    }
    gram_pinv_ = eig.vectors * inv.asDiagonal() * eig.vectors.transpose();
    rank_ = static_cast<int>((inv.array() > 0.0).count());
  }

  void project(Eigen::VectorXd& x) const {
    if (a_.rows() == 0) return;
    const Eigen::VectorXd r = a_ * x - b_;
    const Eigen::VectorXd w = gram_pinv_ * r;
    x.noalias() -= inv_w_.cwiseProduct(a_.transpose() * w);
  }

  int rank() const { return rank_; }

 private:
  Eigen::SparseMatrix<double, Eigen::RowMajor> a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd inv_w_;
  Eigen::MatrixXd gram_pinv_;
  int rank_ = 0;
};

class TraceWriter {
 public:
  TraceWriter() {
    const char* dir = std::getenv("GHRELAX_SDP_TRACE");
    if (dir == nullptr || *dir == '\0') return;
    static std::atomic<int> counter{0};
    const int id = counter.fetch_add(1);
    dir_ = dir;
    stem_ = "sdp_trace_" + std::to_string(id);
    std::filesystem::create_directories(dir_);
    out_ = std::make_unique<std::ofstream>(dir_ / (stem_ + ".csv"));
    *out_ << "iteration,rho,primal,dual,objective\n";
  }
  bool enabled() const { return out_ != nullptr; }
  void row(int it, double rho, double primal, double dual, double objective) {
    if (out_) *out_ << it << ',' << rho << ',' << primal << ',' << dual << ',' << objective << '\n';
  }
  void final_iterate(const Eigen::MatrixXd& z) {
    if (!out_) return;
    std::ofstream zf(dir_ / (stem_ + "_Z.csv"));
    zf.precision(17);
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      for (Eigen::Index j = 0; j < z.cols(); ++j) zf << (j ? "," : "") << z(i, j);
      zf << '\n';
    }
  }

 private:
  std::filesystem::path dir_;
  std::string stem_;
  std::unique_ptr<std::ofstream> out_;
};

// Type-II Anderson extrapolation of a fixed-point map s -> T(s), with a
// ring buffer of residual and image differences.
class AndersonMixer {
 public:
  AndersonMixer(int memory, Eigen::Index n) : memory_(memory) {
    if (memory_ > 0) {
      dg_.resize(n, memory_);
      dt_.resize(n, memory_);
    }
  }
  bool enabled() const { return memory_ > 0; }
  void reset() {
    count_ = 0;
    head_ = 0;
    have_prev_ = false;
  }

  /// Records (s, T(s)) and writes the extrapolated point. Returns false until
  /// one difference is stored or when the least-squares system is degenerate.
  bool extrapolate(const Eigen::VectorXd& s, const Eigen::VectorXd& ts, Eigen::VectorXd& out) {
    const Eigen::VectorXd g = s - ts;
    if (have_prev_) {
      dg_.col(head_) = g - g_prev_;
      dt_.col(head_) = ts - t_prev_;
      head_ = (head_ + 1) % memory_;
      count_ = std::min(count_ + 1, memory_);
    }
    g_prev_ = g;
    t_prev_ = ts;
    have_prev_ = true;
    if (count_ == 0) return false;

    const auto dg = dg_.leftCols(count_);
    Eigen::MatrixXd gram = dg.transpose() * dg;
    const double reg = 1e-10 * std::max(gram.trace(), 1e-300);
    gram.diagonal().array() += reg;
    const Eigen::VectorXd gamma = gram.ldlt().solve(dg.transpose() * g);
    if (!gamma.allFinite()) {
      reset();
      return false;
    }
    out = ts - dt_.leftCols(count_) * gamma;
    return true;
  }

 private:
  int memory_;
  int count_ = 0;
  int head_ = 0;
  bool have_prev_ = false;
  Eigen::MatrixXd dg_, dt_;
  Eigen::VectorXd g_prev_, t_prev_;
};

}  // namespace

SdpSolution solve(const ConicProgram& prog, const SolverConfig& cfg,
                  const std::optional<Eigen::MatrixXd>& warm_start) {
  cfg.validate();
  prog.validate();
  const int dim = prog.dim();
  const SymmetricPacking pack(dim);
  const int packed = pack.size();

  // Slack variables turn inequalities into equalities with slack >= 0.
  int slacks = 0;
  for (const auto& c : prog.constraints()) slacks += c.sense == ConstraintSense::GreaterEqual;
  const int len = packed + slacks;

  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(prog.constraints().size()));
  {
    int row = 0, slack = 0;
    std::vector<std::pair<int, double>> entries;
    for (const auto& c : prog.constraints()) {
      entries.clear();
      for (const auto& t : c.terms) {
        const double coef = t.row == t.col ? t.coef : t.coef / kSqrt2;
        entries.emplace_back(pack.index(t.row, t.col), coef);
      }
      if (c.sense == ConstraintSense::GreaterEqual) entries.emplace_back(packed + slack++, -1.0);
      std::sort(entries.begin(), entries.end());
      // Merge duplicates, then normalize the row.
      std::vector<std::pair<int, double>> merged;
      for (const auto& e : entries) {
        if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
        else merged.push_back(e);
      }
      double norm2 = 0.0;
      for (const auto& e : merged) norm2 += e.second * e.second;
      const double scale = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 1.0;
      for (const auto& e : merged) trips.emplace_back(row, e.first, e.second * scale);
      rhs(row) = c.rhs * scale;
      ++row;
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> a(static_cast<Eigen::Index>(prog.constraints().size()), len);
  a.setFromTriplets(trips.begin(), trips.end());

  // Matrix coordinates appear in two copies (box and PSD), slacks in one.
  Eigen::VectorXd inv_w = Eigen::VectorXd::Constant(len, 0.5);
  inv_w.tail(slacks).setOnes();
  const AffineProjector affine(std::move(a), rhs, inv_w);

  // Box bounds in packed coordinates.
  Eigen::VectorXd lo(len), hi(len);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r <= c; ++r) {
      const int k = pack.index(r, c);
      const double w = pack.weight(r, c);
      lo(k) = w * prog.box_lower();
      hi(k) = w * prog.box_upper();
    }
  }
  for (auto [r, c] : prog.zero_pattern()) {
    const int k = pack.index(r, c);
    lo(k) = 0.0;
    hi(k) = 0.0;
  }
  for (const auto& [entry, value] : prog.pinned_entries()) {
    const int k = pack.index(entry.first, entry.second);
    const double w = pack.weight(entry.first, entry.second);
    lo(k) = w * value;
    hi(k) = w * value;
  }
  lo.tail(slacks).setZero();
  hi.tail(slacks).setConstant(std::numeric_limits<double>::infinity());

  const double c_scale = [&] {
    const double m = prog.objective().cwiseAbs().maxCoeff();
    return m > 0.0 ? m : 1.0;
  }();
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(len);
  pack.pack(prog.objective() / c_scale, cost.head(packed));

  // Splitting state s = [y1; u1; y2; u2]; x is recomputed from it.
  const Eigen::Index o_u1 = len;
  const Eigen::Index o_y2 = 2 * static_cast<Eigen::Index>(len);
  const Eigen::Index o_u2 = o_y2 + packed;
  const Eigen::Index state_len = o_u2 + packed;
  Eigen::VectorXd state = Eigen::VectorXd::Zero(state_len);
  {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(len);
    if (warm_start) {
      if (warm_start->rows() != dim || warm_start->cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "warm start has the wrong shape");
      }
      pack.pack(*warm_start, x0.head(packed));
    }
    state.head(len) = x0.cwiseMax(lo).cwiseMin(hi);
    state.segment(o_y2, packed) = x0.head(packed);
  }

  Eigen::VectorXd x(len), target(len), xr1(len), xr2(packed);
  Eigen::MatrixXd work(dim, dim), psd(dim, dim);
  Eigen::VectorXd spectrum;
  double rho = cfg.rho;

  struct StepInfo {
    double r_abs = 0.0;
    double s_abs = 0.0;
    double x_norm = 0.0;
    double u_norm = 0.0;
  };
  auto step = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out, StepInfo& info) {
    out.resize(state_len);
    const auto y1 = in.head(len);
    const auto u1 = in.segment(o_u1, len);
    const auto y2 = in.segment(o_y2, packed);
    const auto u2 = in.segment(o_u2, packed);
    target.head(packed) = 0.5 * ((y1.head(packed) - u1.head(packed)) + (y2 - u2));
    target.tail(slacks) = y1.tail(slacks) - u1.tail(slacks);
    x = target - inv_w.cwiseProduct(cost) / rho;
    affine.project(x);

    xr1 = cfg.alpha * x + (1.0 - cfg.alpha) * y1;
    xr2 = cfg.alpha * x.head(packed) + (1.0 - cfg.alpha) * y2;
    auto ny1 = out.head(len);
    auto ny2 = out.segment(o_y2, packed);
    ny1 = (xr1 + u1).cwiseMax(lo).cwiseMin(hi);
    pack.unpack(xr2 + u2, work);
    psd = project_psd(work, spectrum);
    pack.pack(psd, ny2);
    out.segment(o_u1, len) = u1 + xr1 - ny1;
    out.segment(o_u2, packed) = u2 + xr2 - ny2;

    info.r_abs = std::sqrt((x - ny1).squaredNorm() + (x.head(packed) - ny2).squaredNorm());
    info.s_abs = rho * std::sqrt((ny1 - y1).squaredNorm() + (ny2 - y2).squaredNorm());
    info.x_norm = x.norm();
    info.u_norm = rho * std::sqrt(out.segment(o_u1, len).squaredNorm() + out.segment(o_u2, packed).squaredNorm());
  };

  SdpSolution sol;
  sol.status = SdpStatus::MaxIter;
  TraceWriter trace;
  AndersonMixer mixer(cfg.anderson_memory, state_len);
  std::vector<double> primal_history;
  std::vector<double> dual_norm_history;

  double primal = std::numeric_limits<double>::infinity();
  double dual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd mapped, candidate, mapped_candidate;
  StepInfo info, cand_info;
  step(state, mapped, info);
  int it = 1;
  int last_rho_update = 0;
  int last_history = 0;
  int last_trace = 0;
  while (true) {
    primal = info.r_abs / (1.0 + info.x_norm);
    dual = info.s_abs / (1.0 + info.u_norm);
    if (trace.enabled() && it - last_trace >= kCheckInterval) {
      last_trace = it;
      trace.row(it, rho, primal, dual, cost.head(packed).dot(mapped.segment(o_y2, packed)) * c_scale);
    }
    if (primal <= cfg.tol && dual <= cfg.tol) {
      sol.status = SdpStatus::Optimal;
      break;
    }
    if (it >= cfg.max_iter) break;

    if (it - last_history >= kHistoryInterval) {
      last_history = it;
      primal_history.push_back(primal);
      dual_norm_history.push_back(info.u_norm);
      const std::size_t back = kStallWindow / kHistoryInterval;
      if (it >= kStallMinIter && primal_history.size() > back) {
        const double before = primal_history[primal_history.size() - 1 - back];
        const double dual_norm_before = dual_norm_history[dual_norm_history.size() - 1 - back];
        if (primal > std::sqrt(cfg.tol) && primal > 0.95 * before && info.u_norm > kDualGrowth * dual_norm_before) {
          sol.status = SdpStatus::Infeasible;
          break;
        }
      }
    }

    if (cfg.adaptive_rho && it - last_rho_update >= kRhoInterval) {
      last_rho_update = it;
      const double ratio = dual > 0.0 ? std::sqrt(primal / dual) : kRhoRatio;
      const double factor = std::clamp(ratio, 1.0 / kRhoRatio, kRhoRatio);
      if (factor > kRhoTrigger || factor < 1.0 / kRhoTrigger) {
        rho *= factor;
        state = mapped;
        state.segment(o_u1, len) /= factor;
        state.segment(o_u2, packed) /= factor;
        mixer.reset();
        step(state, mapped, info);
        ++it;
        continue;
      }
    }

    if (mixer.enabled() && mixer.extrapolate(state, mapped, candidate)) {
      const double current = (state - mapped).norm();
      step(candidate, mapped_candidate, cand_info);
      ++it;
      if ((candidate - mapped_candidate).norm() <= current) {
        state.swap(candidate);
        mapped.swap(mapped_candidate);
        info = cand_info;
        continue;
      }
      mixer.reset();
      if (it >= cfg.max_iter) break;
    }
    state = mapped;
    step(state, mapped, info);
    ++it;
  }
  const Eigen::VectorXd y2 = mapped.segment(o_y2, packed);

  sol.iterations = std::min(it, cfg.max_iter);
  sol.primal_residual = primal;
  sol.dual_residual = dual;
  pack.unpack(y2, sol.Z);
  sol.objective_value = (prog.objective().cwiseProduct(sol.Z)).sum();
  const auto eig = symmetric_eigen(sol.Z);
  sol.eigenvalues = eig.values;
  const double top = std::max(eig.values.maxCoeff(), 0.0);
  sol.numerical_rank = static_cast<int>((eig.values.array() > cfg.tau_rank * top).count());
  if (top == 0.0) sol.numerical_rank = 0;
  sol.feasibility = check_feasible(prog, sol.Z);
  trace.final_iterate(sol.Z);
  return sol;
}

}  // namespace ghrelax
