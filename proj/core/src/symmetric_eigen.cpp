#include "ghrelax/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ghrelax/error.hpp"

namespace ghrelax {
namespace {

constexpr int kMaxSweepsPerEigenvalue = 60;

// Reduces the symmetric matrix held in v to tridiagonal form. On exit d holds
// the diagonal, e the subdiagonal (e(0) = 0) and v the accumulated orthogonal
// transformation.
void tridiagonalize(Eigen::MatrixXd& v, Eigen::VectorXd& d, Eigen::VectorXd& e) {
  const int n = static_cast<int>(v.rows());
  for (int j = 0; j < n; ++j) d(j) = v(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(d(k));
    if (scale == 0.0) {
      e(i) = d(i - 1);
      for (int j = 0; j < i; ++j) {
        d(j) = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d(k) /= scale;
        h += d(k) * d(k);
      }
      double f = d(i - 1);
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e(i) = scale * g;
      h -= f * g;
      d(i - 1) = f - g;
      for (int j = 0; j < i; ++j) e(j) = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d(j);
        v(j, i) = f;
        g = e(j) + v(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d(k);
          e(k) += v(k, j) * f;
        }
        e(j) = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e(j) /= h;
        f += e(j) * d(j);
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e(j) -= hh * d(j);
      for (int j = 0; j < i; ++j) {
        f = d(j);
        g = e(j);
        for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * e(k) + g * d(k));
        d(j) = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d(i) = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d(i + 1);
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d(k) = v(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (int k = 0; k <= i; ++k) v(k, j) -= g * d(k);
      }
    }
    for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d(j) = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e(0) = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of v.
void tridiagonal_ql(Eigen::MatrixXd& v, Eigen::VectorXd& d, Eigen::VectorXd& e) {
  const int n = static_cast<int>(v.rows());
  for (int i = 1; i < n; ++i) e(i - 1) = e(i);
  e(n - 1) = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
    int m = l;
    while (m < n) {
      if (std::abs(e(m)) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweepsPerEigenvalue) {
          throw Error(ErrorCode::NumericalBreakdown, "QL iteration did not converge");
        }
        double g = d(l);
        double p = (d(l + 1) - g) / (2.0 * e(l));
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d(l) = e(l) / (p + r);
        d(l + 1) = e(l) * (p + r);
        const double dl1 = d(l + 1);
        double h = g - d(l);
        for (int i = l + 2; i < n; ++i) d(i) -= h;
        f += h;

        p = d(m);
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e(l + 1);
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e(i);
          h = c * p;
          r = std::hypot(p, e(i));
          e(i + 1) = s * r;
          s = e(i) / r;
          c = p / r;
          p = c * d(i) - s * g;
          d(i + 1) = h + s * (c * g + s * d(i));
          double* vi = v.col(i).data();
          double* vi1 = v.col(i + 1).data();
          for (int k = 0; k < n; ++k) {
            h = vi1[k];
            vi1[k] = s * vi[k] + c * h;
            vi[k] = c * vi[k] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e(l) / dl1;
        e(l) = s * p;
        d(l) = c * p;
      } while (std::abs(e(l)) > eps * tst1);
    }
    d(l) += f;
    e(l) = 0.0;
  }
}

}  // namespace

SymmetricEigenResult symmetric_eigen(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "eigensolver needs a square matrix");
  if (!m.allFinite()) throw Error(ErrorCode::NumericalBreakdown, "non-finite input to eigensolver");
  const int n = static_cast<int>(m.rows());
  SymmetricEigenResult out;
  if (n == 0) return out;

  Eigen::MatrixXd v = m.selfadjointView<Eigen::Lower>();
  Eigen::VectorXd d(n), e(n);
  tridiagonalize(v, d, e);
  tridiagonal_ql(v, d, e);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d(a) < d(b); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = d(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m, Eigen::VectorXd& eigenvalues) {
  const auto eig = symmetric_eigen(m);
  eigenvalues = eig.values;
  const auto n = m.rows();
  Eigen::Index first_positive = 0;
  while (first_positive < n && eig.values(first_positive) <= 0.0) ++first_positive;
  const auto k = n - first_positive;
  if (k == 0) return Eigen::MatrixXd::Zero(n, n);
  const auto q = eig.vectors.rightCols(k);
  const Eigen::MatrixXd scaled = q * eig.values.tail(k).cwiseSqrt().asDiagonal();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  out.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
  return out.selfadjointView<Eigen::Lower>();
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
  Eigen::VectorXd ignored;
  return project_psd(m, ignored);
}

}  // namespace ghrelax
