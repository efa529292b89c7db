#include <atomic>

#include "levelcurv/kernels.hpp"

namespace levelcurv::kernels {

namespace {

Isa detect() { return avx2_supported() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported()) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
}

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void stencil_row(const double* um, const double* u0, const double* up, std::size_t nt,
                 const StencilSteps& steps, const RowDerivatives& out) {
  if (active_isa() == Isa::Avx2)
    avx2::stencil_row(um, u0, up, nt, steps, out);
  else
    scalar::stencil_row(um, u0, up, nt, steps, out);
}

void to_cartesian_row(const double* coef, const RowDerivatives& d, std::size_t nt,
                      const RowCartesian& out) {
  if (active_isa() == Isa::Avx2)
    avx2::to_cartesian_row(coef, d, nt, out);
  else
    scalar::to_cartesian_row(coef, d, nt, out);
}

void minimal_operator_row(const CartesianView& q, std::size_t n, double* out) {
  if (active_isa() == Isa::Avx2)
    avx2::minimal_operator_row(q, n, out);
  else
    scalar::minimal_operator_row(q, n, out);
}

void laplacian_row(const CartesianView& q, std::size_t n, double* out) {
  if (active_isa() == Isa::Avx2)
    avx2::laplacian_row(q, n, out);
  else
    scalar::laplacian_row(q, n, out);
}

void level_curvature(const CartesianView& q, std::size_t n, double* kappa, double* grad_sq) {
  if (active_isa() == Isa::Avx2)
    avx2::level_curvature(q, n, kappa, grad_sq);
  else
    scalar::level_curvature(q, n, kappa, grad_sq);
}

}  // namespace levelcurv::kernels
