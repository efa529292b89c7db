#include <immintrin.h>

#include "kernels_common.hpp"

namespace levelcurv::kernels::avx2 {

namespace {

inline __m256d ld(const double* p) { return _mm256_loadu_pd(p); }
inline void st(double* p, __m256d v) { _mm256_storeu_pd(p, v); }
inline __m256d add(__m256d a, __m256d b) { return _mm256_add_pd(a, b); }
inline __m256d sub(__m256d a, __m256d b) { return _mm256_sub_pd(a, b); }
inline __m256d mul(__m256d a, __m256d b) { return _mm256_mul_pd(a, b); }

}  // namespace

void stencil_row(const double* um, const double* u0, const double* up, std::size_t nt,
                 const StencilSteps& s, const RowDerivatives& out) {
  if (nt < 6) {
    scalar::stencil_row(um, u0, up, nt, s, out);
    return;
  }
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d k_2hs = _mm256_set1_pd(s.inv_2hs);
  const __m256d k_hs2 = _mm256_set1_pd(s.inv_hs2);
  const __m256d k_2ht = _mm256_set1_pd(s.inv_2ht);
  const __m256d k_ht2 = _mm256_set1_pd(s.inv_ht2);
  const __m256d k_4st = _mm256_set1_pd(s.inv_4hsht);

  detail::stencil_node(um, u0, up, nt, 0, s, out);
  std::size_t j = 1;
  for (; j + 4 < nt; j += 4) {
    const __m256d um0 = ld(um + j), ummi = ld(um + j - 1), umpl = ld(um + j + 1);
    const __m256d u00 = ld(u0 + j), u0mi = ld(u0 + j - 1), u0pl = ld(u0 + j + 1);
    const __m256d up0 = ld(up + j), upmi = ld(up + j - 1), uppl = ld(up + j + 1);
    st(out.ds + j, mul(sub(up0, um0), k_2hs));
    st(out.dt + j, mul(sub(u0pl, u0mi), k_2ht));
    st(out.dss + j, mul(add(sub(up0, mul(two, u00)), um0), k_hs2));
    st(out.dst + j, mul(add(sub(sub(uppl, upmi), umpl), ummi), k_4st));
    st(out.dtt + j, mul(add(sub(u0pl, mul(two, u00)), u0mi), k_ht2));
  }
  for (; j < nt; ++j) detail::stencil_node(um, u0, up, nt, j, s, out);
}

void to_cartesian_row(const double* coef, const RowDerivatives& d, std::size_t nt,
                      const RowCartesian& out) {
  double* dst[5] = {out.ux, out.uy, out.uxx, out.uxy, out.uyy};
  std::size_t j = 0;
  for (; j + 4 <= nt; j += 4) {
    const __m256d d0 = ld(d.ds + j), d1 = ld(d.dt + j), d2 = ld(d.dss + j), d3 = ld(d.dst + j),
                  d4 = ld(d.dtt + j);
    for (std::size_t m = 0; m < 5; ++m) {
      const double* c = coef + m * 5 * nt;
      __m256d acc = mul(ld(c + j), d0);
      acc = add(acc, mul(ld(c + nt + j), d1));
      acc = add(acc, mul(ld(c + 2 * nt + j), d2));
      acc = add(acc, mul(ld(c + 3 * nt + j), d3));
      acc = add(acc, mul(ld(c + 4 * nt + j), d4));
      st(dst[m] + j, acc);
    }
  }
  for (; j < nt; ++j) detail::cartesian_node(coef, d, nt, j, out);
}

void minimal_operator_row(const CartesianView& q, std::size_t n, double* out) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ux = ld(q.ux + j), uy = ld(q.uy + j);
    const __m256d a = add(one, mul(uy, uy));
    const __m256d b = mul(ux, uy);
    const __m256d c = add(one, mul(ux, ux));
    const __m256d r = add(sub(mul(a, ld(q.uxx + j)), mul(mul(two, b), ld(q.uxy + j))), mul(c, ld(q.uyy + j)));
    st(out + j, r);
  }
  for (; j < n; ++j) out[j] = detail::minimal_node(q.ux[j], q.uy[j], q.uxx[j], q.uxy[j], q.uyy[j]);
}

void laplacian_row(const CartesianView& q, std::size_t n, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) st(out + j, add(ld(q.uxx + j), ld(q.uyy + j)));
  for (; j < n; ++j) out[j] = q.uxx[j] + q.uyy[j];
}

void level_curvature(const CartesianView& q, std::size_t n, double* kappa, double* grad_sq) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ux = ld(q.ux + j), uy = ld(q.uy + j);
    const __m256d xx = mul(ux, ux), yy = mul(uy, uy);
    const __m256d g2 = add(xx, yy);
    const __m256d num =
        add(sub(mul(yy, ld(q.uxx + j)), mul(mul(two, mul(ux, uy)), ld(q.uxy + j))), mul(xx, ld(q.uyy + j)));
    st(grad_sq + j, g2);
    st(kappa + j, _mm256_div_pd(_mm256_xor_pd(num, sign), mul(g2, _mm256_sqrt_pd(g2))));
  }
  for (; j < n; ++j)
    detail::curvature_node(q.ux[j], q.uy[j], q.uxx[j], q.uxy[j], q.uyy[j], kappa + j, grad_sq + j);
}

}  // namespace levelcurv::kernels::avx2
