#pragma once

// Per-node expressions shared by the scalar and AVX2 kernels. The vector
// code mirrors these operation by operation.

#include <cmath>
#include <cstddef>

#include "levelcurv/kernels.hpp"

namespace levelcurv::kernels::detail {

inline void stencil_node(const double* um, const double* u0, const double* up, std::size_t nt,
                         std::size_t j, const StencilSteps& s, const RowDerivatives& out) {
  const std::size_t jm = j == 0 ? nt - 1 : j - 1;
  const std::size_t jp = j + 1 == nt ? 0 : j + 1;
  out.ds[j] = (up[j] - um[j]) * s.inv_2hs;
  out.dt[j] = (u0[jp] - u0[jm]) * s.inv_2ht;
  out.dss[j] = ((up[j] - 2.0 * u0[j]) + um[j]) * s.inv_hs2;
  out.dst[j] = (((up[jp] - up[jm]) - um[jp]) + um[jm]) * s.inv_4hsht;
  out.dtt[j] = ((u0[jp] - 2.0 * u0[j]) + u0[jm]) * s.inv_ht2;
}

inline void cartesian_node(const double* coef, const RowDerivatives& d, std::size_t nt,
                           std::size_t j, const RowCartesian& out) {
  double* dst[5] = {out.ux, out.uy, out.uxx, out.uxy, out.uyy};
  for (std::size_t m = 0; m < 5; ++m) {
    const double* c = coef + m * 5 * nt;
    double acc = c[j] * d.ds[j];
    acc = acc + c[nt + j] * d.dt[j];
    acc = acc + c[2 * nt + j] * d.dss[j];
    acc = acc + c[3 * nt + j] * d.dst[j];
    acc = acc + c[4 * nt + j] * d.dtt[j];
    dst[m][j] = acc;
  }
}

inline double minimal_node(double ux, double uy, double uxx, double uxy, double uyy) {
  const double a = 1.0 + uy * uy;
  const double b = ux * uy;
  const double c = 1.0 + ux * ux;
  return ((a * uxx) - ((2.0 * b) * uxy)) + (c * uyy);
}

inline void curvature_node(double ux, double uy, double uxx, double uxy, double uyy, double* kappa,
                           double* grad_sq) {
  const double g2 = ux * ux + uy * uy;
  const double num = (((uy * uy) * uxx) - ((2.0 * (ux * uy)) * uxy)) + ((ux * ux) * uyy);
  *grad_sq = g2;
  *kappa = -num / (g2 * std::sqrt(g2));
}

}  // namespace levelcurv::kernels::detail
