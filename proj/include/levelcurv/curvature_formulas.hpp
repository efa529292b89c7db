#pragma once

// Scalar-generic curvature formulas for level sets and graphs. Instantiated
// with double for evaluation and with Dual for exact directional derivatives.

#include <cmath>

#include <Eigen/Core>

namespace levelcurv {

template <class T>
using VecT = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
struct CurvatureTerms {
  T grad_norm;
  T W;
  MatT<T> h;  // unnormalised second fundamental form
  MatT<T> B;
  MatT<T> C;
  MatT<T> A;  // -h + B - C
  MatT<T> a;  // A / (|grad u| u_n^2)
};

/// h_ij = u_n^2 u_ij + u_nn u_i u_j - u_n u_j u_in - u_n u_i u_jn, 1 <= i,j <= n-1,
/// with the chart direction being the last coordinate.
template <class T>
MatT<T> level_set_h(const VecT<T>& g, const MatT<T>& hess) {
  const Eigen::Index n = g.size();
  const Eigen::Index m = n - 1;
  const T un = g(m);
  MatT<T> h(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      h(i, j) = un * un * hess(i, j) + hess(m, m) * g(i) * g(j) - un * g(j) * hess(i, m) -
                un * g(i) * hess(j, m);
  return h;
}

/// Curvature matrix of the level set through the point, written in the chart
/// x_n = v(x'). Requires u_n != 0; the caller checks.
template <class T>
CurvatureTerms<T> level_set_curvature_terms(const VecT<T>& g, const MatT<T>& hess) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = g.size();
  const Eigen::Index m = n - 1;
  const T un = g(m);
  const T un2 = un * un;

  CurvatureTerms<T> out;
  out.grad_norm = sqrt(g.squaredNorm());
  out.W = out.grad_norm / abs(un);
  out.h = level_set_h<T>(g, hess);

  const VecT<T> gt = g.head(m);
  const VecT<T> hg = out.h * gt;  // sum_l h_jl u_l
  const T gtg = gt.dot(hg);       // sum_kl u_k u_l h_kl
  const T w1 = out.W * (T(1.0) + out.W);

  out.B.resize(m, m);
  out.C.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      out.B(i, j) = (gt(i) * hg(j) + gt(j) * hg(i)) / (w1 * un2);
      out.C(i, j) = gt(i) * gt(j) * gtg / (w1 * w1 * un2 * un2);
    }
  out.A = -out.h + out.B - out.C;
  out.a = out.A / (out.grad_norm * un2);
  return out;
}

/// Curvature matrix of the graph x_n = v(x') with respect to the upward normal.
template <class T>
MatT<T> graph_curvature_terms(const VecT<T>& vg, const MatT<T>& vh) {
  using std::sqrt;
  const Eigen::Index m = vg.size();
  const T W = sqrt(T(1.0) + vg.squaredNorm());
  const T w1 = W * (T(1.0) + W);
  const VecT<T> hv = vh * vg;  // sum_j v_j v_jl
  const T vhv = vg.dot(hv);
  MatT<T> a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index l = 0; l < m; ++l)
      a(i, l) = (vh(i, l) - vg(i) * hv(l) / w1 - vg(l) * hv(i) / w1 +
                 vg(i) * vg(l) * vhv / (w1 * w1)) /
                W;
  return a;
}

}  // namespace levelcurv
