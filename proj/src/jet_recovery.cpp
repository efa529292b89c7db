#include "levelcurv/jet_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/QR>

#include "levelcurv/closed_form.hpp"
#include "levelcurv/error.hpp"
#include "levelcurv/kernels.hpp"

namespace levelcurv {

namespace {

void check_order(int order) {
  if (order < 1 || order > 3) throw Error(ErrorKind::InvalidInstance, "jet recovery supports orders 1 to 3");
}

/// First row of the window in one direction: centred on c, shifted to fit in [0, n).
int window_start(int c, int half, int n) {
  return std::clamp(c - half, 0, n - 1 - 2 * half);
}

// Monomials z1^p z2^q with p + q <= degree, in graded order.
std::vector<std::pair<int, int>> monomials_2d(int degree) {
  std::vector<std::pair<int, int>> out;
  for (int d = 0; d <= degree; ++d)
    for (int q = 0; q <= d; ++q) out.emplace_back(d - q, q);
  return out;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Jet fit_grid(const RingDomain2D& d, double h, const std::vector<double>& values, const Vec2& p, int i0, int j0,
             int order) {
  const int half = recovery_layers(order);
  const int width = 2 * half + 1;
  if (d.ns() < width) throw Error(ErrorKind::TooCoarse, "grid has too few layers for the recovery window");
  const int istart = window_start(i0, half, d.ns());
  const auto mono = monomials_2d(order + 1);
  const Eigen::Index rows = width * width;
  const auto cols = static_cast<Eigen::Index>(mono.size());

  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  Eigen::Index r = 0;
  for (int ii = istart; ii < istart + width; ++ii)
    for (int dj = -half; dj <= half; ++dj) {
      const int jj = ((j0 + dj) % d.nt() + d.nt()) % d.nt();
      const Vec2 z = (d.node(ii, jj) - p) / h;
      const double w = std::sqrt(1.0 / (1.0 + z.squaredNorm()));
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto [e1, e2] = mono[static_cast<std::size_t>(c)];
        a(r, c) = w * std::pow(z.x(), e1) * std::pow(z.y(), e2);
      }
      b(r) = w * values[static_cast<std::size_t>(d.index(ii, jj))];
      ++r;
    }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);

  auto deriv = [&](int e1, int e2) {
    for (std::size_t c = 0; c < mono.size(); ++c)
      if (mono[c].first == e1 && mono[c].second == e2)
        return coef(static_cast<Eigen::Index>(c)) * factorial(e1) * factorial(e2) / std::pow(h, e1 + e2);
    return 0.0;
  };
  Jet jet;
  jet.grad = Vec(2);
  jet.grad << deriv(1, 0), deriv(0, 1);
  jet.hess = Mat(2, 2);
  jet.hess << deriv(2, 0), deriv(1, 1), deriv(1, 1), deriv(0, 2);
  if (order >= 3) {
    Tensor3 t(2);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) {
          const int ny = x + y + z;  // number of y indices
          t(x, y, z) = deriv(3 - ny, ny);
        }
    jet.third = t;
  }
  return jet;
}

}  // namespace

int recovery_layers(int order) { return order >= 3 ? 3 : 2; }

Jet recover_jet(const GridSolution& sol, int i, int j, int order, bool strict) {
  return fit_grid_values(sol.domain, sol.h, sol.u, i, j, order, strict);
}

Jet fit_grid_values(const RingDomain2D& d, double h, const std::vector<double>& values, int i, int j, int order,
                    bool strict) {
  check_order(order);
  if (values.size() != static_cast<std::size_t>(d.ns()) * static_cast<std::size_t>(d.nt()))
    throw Error(ErrorKind::InvalidInstance, "value array does not match the grid");
  if (i < 0 || i >= d.ns() || j < 0 || j >= d.nt()) throw Error(ErrorKind::OutOfDomain, "node index outside the grid");
  const int half = recovery_layers(order);
  if (strict && (i < half || i > d.ns() - 1 - half))
    throw Error(ErrorKind::TooCloseToBoundary, "node lies within the recovery stencil of a boundary curve");
  return fit_grid(d, h, values, d.node(i, j), i, j, order);
}

Jet recover_jet(const GridSolution& sol, const Vec2& point, int order, bool strict) {
  check_order(order);
  const RingDomain2D& d = sol.domain;
  const Vec2 st = d.to_computational(point);
  if (!(st(0) >= -1e-12 && st(0) <= 1.0 + 1e-12)) throw Error(ErrorKind::OutOfDomain, "point lies outside the ring");
  const int i0 = std::clamp(static_cast<int>(std::lround(st(0) / d.hs())), 0, d.ns() - 1);
  const int j0 = static_cast<int>(std::lround(st(1) / d.ht())) % d.nt();
  const int half = recovery_layers(order);
  if (strict && (i0 < half || i0 > d.ns() - 1 - half))
    throw Error(ErrorKind::TooCloseToBoundary, "point lies within the recovery stencil of a boundary curve");
  return fit_grid(d, sol.h, sol.u, point, i0, j0, order);
}

Jet recover_jet(const RadialSolution& sol, const Vec& x, int order, bool strict) {
  check_order(order);
  if (x.size() != sol.n) throw Error(ErrorKind::UnsupportedDimension, "point dimension differs from the solution");
  const double r = x.norm();
  if (!(r >= sol.a - 1e-12 * sol.a && r <= sol.b + 1e-12 * sol.b))
    throw Error(ErrorKind::OutOfDomain, "point lies outside the radial ring");
  const int count = static_cast<int>(sol.r.size());
  const int half = recovery_layers(order);
  const int width = 2 * half + 1;
  if (count < width) throw Error(ErrorKind::TooCoarse, "too few radial samples for the recovery window");
  const int k0 = std::clamp(static_cast<int>(std::lround((r - sol.a) / sol.h)), 0, count - 1);
  if (strict && (k0 < half || k0 > count - 1 - half))
    throw Error(ErrorKind::TooCloseToBoundary, "point lies within the recovery stencil of a boundary sphere");
  const int start = window_start(k0, half, count);
  const int degree = order + 1;

  Eigen::MatrixXd a(width, degree + 1);
  Eigen::VectorXd b(width);
  for (int k = 0; k < width; ++k) {
    const auto idx = static_cast<std::size_t>(start + k);
    const double z = (sol.r[idx] - r) / sol.h;
    const double w = std::sqrt(1.0 / (1.0 + z * z));
    for (int c = 0; c <= degree; ++c) a(k, c) = w * std::pow(z, c);
    b(k) = w * sol.u[idx];
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
  const double up = coef(1) / sol.h;
  const double upp = 2.0 * coef(2) / (sol.h * sol.h);
  const double uppp = degree >= 3 ? 6.0 * coef(3) / (sol.h * sol.h * sol.h) : 0.0;
  return radial_jet(x, up, upp, uppp, order);
}

Jet recover_jet(const RingSolution& sol, const Vec& x, int order, bool strict) {
  if (const auto* radial = std::get_if<RadialSolution>(&sol)) return recover_jet(*radial, x, order, strict);
  if (x.size() != 2) throw Error(ErrorKind::UnsupportedDimension, "planar solutions take 2D points");
  return recover_jet(std::get<GridSolution>(sol), Vec2(x(0), x(1)), order, strict);
}

GridDerivatives recover_derivatives(const GridSolution& sol) {
  const RingDomain2D& d = sol.domain;
  const std::size_t total = static_cast<std::size_t>(d.ns()) * static_cast<std::size_t>(d.nt());
  GridDerivatives out;
  for (auto* v : {&out.ux, &out.uy, &out.uxx, &out.uxy, &out.uyy}) v->assign(total, 0.0);
  for (int i = 0; i < d.ns(); ++i)
    for (int j = 0; j < d.nt(); ++j) {
      const Jet jet = recover_jet(sol, i, j, 2, false);
      const auto k = static_cast<std::size_t>(d.index(i, j));
      out.ux[k] = jet.grad(0);
      out.uy[k] = jet.grad(1);
      out.uxx[k] = jet.hess(0, 0);
      out.uxy[k] = jet.hess(0, 1);
      out.uyy[k] = jet.hess(1, 1);
    }
  return out;
}

LevelCurvatureField level_curvature_field(const GridDerivatives& d) {
  LevelCurvatureField f;
  f.kappa.resize(d.ux.size());
  f.grad_sq.resize(d.ux.size());
  kernels::level_curvature({d.ux.data(), d.uy.data(), d.uxx.data(), d.uxy.data(), d.uyy.data()}, d.ux.size(),
                           f.kappa.data(), f.grad_sq.data());
  return f;
}

}  // namespace levelcurv
