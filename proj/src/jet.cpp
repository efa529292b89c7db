#include "levelcurv/jet.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace levelcurv {

Mat Tensor3::slice(int c) const {
  Mat m(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) m(a, b) = (*this)(a, b, c);
  return m;
}

double Tensor3::symmetry_defect() const {
  double worst = 0.0;
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c) {
        const double t = (*this)(a, b, c);
        for (double p : {(*this)(a, c, b), (*this)(b, a, c), (*this)(b, c, a), (*this)(c, a, b),
                         (*this)(c, b, a)})
          worst = std::max(worst, std::abs(t - p));
      }
  return worst;
}

Tensor3 Tensor3::rotated(const Mat& q) const {
  const int n = dim_;
  Tensor3 s1(n), s2(n), out(n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += q(a, i) * (*this)(i, j, k);
        s1(a, j, k) = acc;
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += q(b, j) * s1(a, j, k);
        s2(a, b, k) = acc;
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += q(c, k) * s2(a, b, k);
        out(a, b, c) = acc;
      }
  return out;
}

Jet rotate_jet(const Jet& jet, const Mat& q) {
  Jet out;
  out.grad = q * jet.grad;
  out.hess = q * jet.hess * q.transpose();
  out.hess = 0.5 * (out.hess + out.hess.transpose()).eval();
  if (jet.third) out.third = jet.third->rotated(q);
  return out;
}

}  // namespace levelcurv
