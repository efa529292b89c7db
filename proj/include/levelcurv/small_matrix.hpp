#pragma once

// Dense helpers for the small symmetric matrices that appear in level-set
// geometry (sizes 1..8).

#include <Eigen/Core>

namespace levelcurv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Eigenvalues of a symmetric matrix in ascending order. Sizes 1-3 use
/// closed forms, larger sizes cyclic Jacobi rotations.
Vec symmetric_eigenvalues(const Mat& a);

struct SymmetricEigen {
  Vec values;   // ascending
  Mat vectors;  // columns, orthonormal
};

/// Cyclic Jacobi iteration; stops when the off-diagonal Frobenius norm is
/// below tol times the matrix norm.
SymmetricEigen jacobi_eigen(const Mat& a, double tol = 1e-13);

double symmetry_defect(const Mat& a);

/// Determinant by Gaussian elimination with partial pivoting. Generic over
/// the scalar so that dual numbers propagate derivatives through it.
template <class T>
T determinant(Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> m) {
  using std::abs;
  const Eigen::Index n = m.rows();
  T det(1.0);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (abs(m(r, c)) > abs(m(piv, c))) piv = r;
    }
    if (m(piv, c) == T(0.0)) return T(0.0);
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const T f = m(r, c) / m(c, c);
      for (Eigen::Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

}  // namespace levelcurv
