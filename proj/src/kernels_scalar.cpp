#include "kernels_common.hpp"

namespace levelcurv::kernels::scalar {

void stencil_row(const double* um, const double* u0, const double* up, std::size_t nt,
                 const StencilSteps& steps, const RowDerivatives& out) {
  for (std::size_t j = 0; j < nt; ++j) detail::stencil_node(um, u0, up, nt, j, steps, out);
}

void to_cartesian_row(const double* coef, const RowDerivatives& d, std::size_t nt,
                      const RowCartesian& out) {
  for (std::size_t j = 0; j < nt; ++j) detail::cartesian_node(coef, d, nt, j, out);
}

void minimal_operator_row(const CartesianView& q, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j)
    out[j] = detail::minimal_node(q.ux[j], q.uy[j], q.uxx[j], q.uxy[j], q.uyy[j]);
}

void laplacian_row(const CartesianView& q, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = q.uxx[j] + q.uyy[j];
}

void level_curvature(const CartesianView& q, std::size_t n, double* kappa, double* grad_sq) {
  for (std::size_t j = 0; j < n; ++j)
    detail::curvature_node(q.ux[j], q.uy[j], q.uxx[j], q.uxy[j], q.uyy[j], kappa + j, grad_sq + j);
}

}  // namespace levelcurv::kernels::scalar
