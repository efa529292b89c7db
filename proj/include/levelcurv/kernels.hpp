#pragma once

// Row kernels over structured (s, t) grids. Every kernel has a portable
// scalar version and an AVX2 version; both evaluate the same expression tree
// without fused multiply-add, so their results agree bit for bit. The active
// variant is picked once from the CPU and can be pinned for testing.

#include <cstddef>

namespace levelcurv::kernels {

enum class Isa { Scalar, Avx2 };

bool avx2_supported();
Isa active_isa();
/// Pins the variant; requesting Avx2 on a machine without it falls back to Scalar.
void set_isa(Isa isa);
const char* to_string(Isa isa);

/// Computational derivatives for one interior grid row (periodic in t).
/// um, u0, up are rows i-1, i, i+1 of length nt.
struct StencilSteps {
  double inv_2hs;
  double inv_hs2;
  double inv_2ht;
  double inv_ht2;
  double inv_4hsht;
};

struct RowDerivatives {
  double* ds;
  double* dt;
  double* dss;
  double* dst;
  double* dtt;
};

/// Per-row coefficient planes: coef[(m * 5 + l) * nt + j] maps computational
/// derivative l to Cartesian derivative m at node j.
struct RowCartesian {
  double* ux;
  double* uy;
  double* uxx;
  double* uxy;
  double* uyy;
};

struct CartesianView {
  const double* ux;
  const double* uy;
  const double* uxx;
  const double* uxy;
  const double* uyy;
};

void stencil_row(const double* um, const double* u0, const double* up, std::size_t nt,
                 const StencilSteps& steps, const RowDerivatives& out);

void to_cartesian_row(const double* coef, const RowDerivatives& d, std::size_t nt,
                      const RowCartesian& out);

/// (1 + u_y^2) u_xx - 2 u_x u_y u_xy + (1 + u_x^2) u_yy.
void minimal_operator_row(const CartesianView& q, std::size_t n, double* out);

/// u_xx + u_yy.
void laplacian_row(const CartesianView& q, std::size_t n, double* out);

/// Level-curve curvature -(u_y^2 u_xx - 2 u_x u_y u_xy + u_x^2 u_yy) / |grad u|^3
/// and |grad u|^2 for a batch of points.
void level_curvature(const CartesianView& q, std::size_t n, double* kappa, double* grad_sq);

namespace scalar {
void stencil_row(const double* um, const double* u0, const double* up, std::size_t nt,
                 const StencilSteps& steps, const RowDerivatives& out);
void to_cartesian_row(const double* coef, const RowDerivatives& d, std::size_t nt,
                      const RowCartesian& out);
void minimal_operator_row(const CartesianView& q, std::size_t n, double* out);
void laplacian_row(const CartesianView& q, std::size_t n, double* out);
void level_curvature(const CartesianView& q, std::size_t n, double* kappa, double* grad_sq);
}  // namespace scalar

namespace avx2 {
void stencil_row(const double* um, const double* u0, const double* up, std::size_t nt,
                 const StencilSteps& steps, const RowDerivatives& out);
void to_cartesian_row(const double* coef, const RowDerivatives& d, std::size_t nt,
                      const RowCartesian& out);
void minimal_operator_row(const CartesianView& q, std::size_t n, double* out);
void laplacian_row(const CartesianView& q, std::size_t n, double* out);
void level_curvature(const CartesianView& q, std::size_t n, double* kappa, double* grad_sq);
}  // namespace avx2

}  // namespace levelcurv::kernels
