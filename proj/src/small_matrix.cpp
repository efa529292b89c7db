#include "levelcurv/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

namespace levelcurv {

namespace {

Vec eigenvalues_2x2(const Mat& a) {
  const double mean = 0.5 * (a(0, 0) + a(1, 1));
  const double radius = std::hypot(0.5 * (a(0, 0) - a(1, 1)), a(0, 1));
  Vec out(2);
  out << mean - radius, mean + radius;
  return out;
}

// Trigonometric solution of the characteristic cubic of a symmetric 3x3.
Vec eigenvalues_3x3(const Mat& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  Vec out(3);
  if (p1 == 0.0) {
    out << a(0, 0), a(1, 1), a(2, 2);
    std::sort(out.data(), out.data() + 3);
    return out;
  }
  const double q = a.trace() / 3.0;
  const double d0 = a(0, 0) - q;
  const double d1 = a(1, 1) - q;
  const double d2 = a(2, 2) - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Mat b = (a - q * Mat::Identity(3, 3)) / p;
  const double r = std::clamp(0.5 * b.determinant(), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  out << lo, 3.0 * q - hi - lo, hi;
  std::sort(out.data(), out.data() + 3);
  return out;
}

}  // namespace

double symmetry_defect(const Mat& a) { return (a - a.transpose()).cwiseAbs().maxCoeff(); }

SymmetricEigen jacobi_eigen(const Mat& input, double tol) {
  const Eigen::Index n = input.rows();
  Mat a = 0.5 * (input + input.transpose());
  Mat v = Mat::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > tol * scale; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index l, Eigen::Index r) { return a(l, l) < a(r, r); });
  SymmetricEigen out{Vec(n), Mat(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

Vec symmetric_eigenvalues(const Mat& a) {
  switch (a.rows()) {
    case 0: return Vec(0);
    case 1: return Vec::Constant(1, a(0, 0));
    case 2: return eigenvalues_2x2(a);
    case 3: return eigenvalues_3x3(a);
    default: return jacobi_eigen(a).values;
  }
}

}  // namespace levelcurv
