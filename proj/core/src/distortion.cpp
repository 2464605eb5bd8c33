#include "ghrelax/distortion.hpp"

#include <algorithm>
#include <cmath>

namespace ghrelax {
namespace {

void check_order(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "order p must be >= 1");
}

inline double powered(double base, double p) {
  if (p == 1.0 || p == kInfinityOrder) return base;
  if (p == 2.0) return base * base;
  return std::pow(base, p);
}

}  // namespace

double DistortionTensor::base_entry(int a, int b) const {
  const int mm = m();
  return std::abs(dx_(a / mm, b / mm) - dy_(a % mm, b % mm));
}

DistortionTensor build_gamma(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double p) {
  check_order(p);
  const int n = x.size();
  const int m = y.size();
  const int nm = n * m;
  Eigen::MatrixXd gamma(nm, nm);
  for (int a = 0; a < nm; ++a) {
    const int i = a / m, j = a % m;
    for (int b = a; b < nm; ++b) {
      const int i2 = b / m, j2 = b % m;
      const double v = powered(std::abs(x(i, i2) - y(j, j2)), p);
      gamma(a, b) = v;
      gamma(b, a) = v;
    }
  }
  return DistortionTensor(x.matrix(), y.matrix(), p, std::move(gamma));
}

double max_support_value(const DistortionTensor& t, const std::vector<std::pair<int, int>>& support) {
  if (support.empty()) throw Error(ErrorCode::EmptySupport, "support set is empty");
  const int nm = t.n() * t.m();
  double best = 0.0;
  for (auto [a, b] : support) {
    if (a < 0 || b < 0 || a >= nm || b >= nm) throw Error(ErrorCode::BadIndex, "support index out of range");
    best = std::max(best, t.base_entry(a, b));
  }
  return best;
}

DistortionOperator::DistortionOperator(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double p)
    : dx_(x.matrix()), dy_(y.matrix()), p_(p) {
  check_order(p);
  if (p == kInfinityOrder) throw Error(ErrorCode::InvalidArgument, "operator needs a finite order");
}

double DistortionOperator::entry(int a, int b) const {
  const int mm = m();
  return powered(std::abs(dx_(a / mm, b / mm) - dy_(a % mm, b % mm)), p_);
}

void DistortionOperator::apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
  const int nn = n(), mm = m();
  out.setZero(nn * mm);
  // v viewed as the n x m matrix V(i', j') = v[i'*m + j'].
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> V(v.data(), nn, mm);
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> O(out.data(), nn, mm);
  if (p_ == 2.0) {
    // sum (a - b)^2 V = (a^2) V 1 - 2 a V b + 1^T V (b^2)
    const Eigen::MatrixXd dx2 = dx_.cwiseProduct(dx_);
    const Eigen::MatrixXd dy2 = dy_.cwiseProduct(dy_);
    const Eigen::VectorXd row_mass = V.rowwise().sum();
    const Eigen::RowVectorXd col_mass = V.colwise().sum();
    O = (dx2 * row_mass).replicate(1, mm) - 2.0 * dx_ * V * dy_ + (col_mass * dy2).replicate(nn, 1);
    return;
  }
  for (int i = 0; i < nn; ++i) {
    for (int i2 = 0; i2 < nn; ++i2) {
      const double a = dx_(i, i2);
      for (int j = 0; j < mm; ++j) {
        double acc = 0.0;
        if (p_ == 1.0) {
          for (int j2 = 0; j2 < mm; ++j2) acc += std::abs(a - dy_(j2, j)) * V(i2, j2);
        } else {
          for (int j2 = 0; j2 < mm; ++j2) acc += std::pow(std::abs(a - dy_(j2, j)), p_) * V(i2, j2);
        }
        O(i, j) += acc;
      }
    }
  }
}

}  // namespace ghrelax
