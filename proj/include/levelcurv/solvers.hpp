#pragma once

// Solvers for the minimal surface equation and the semilinear equation
// Laplace(u) = f(x, u) on convex rings: radial profiles in any dimension and
// boundary-fitted grids in the plane.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levelcurv/jet.hpp"
#include "levelcurv/ring_domain.hpp"
#include "levelcurv/semilinear_rhs.hpp"

namespace levelcurv {

enum class EquationKind { MinimalSurface, Semilinear };
std::string to_string(EquationKind e);

struct SolverOptions {
  double tol = 1e-9;
  int max_iter = 50;
  int picard_steps = 5;
};

/// Radial solution on a <= |x| <= b in R^n, sampled at uniformly spaced radii.
struct RadialSolution {
  int n = 2;
  double a = 0.0;
  double b = 0.0;
  double u_a = 0.0;
  double u_b = 0.0;
  EquationKind equation = EquationKind::MinimalSurface;
  std::optional<SemilinearRHS> rhs;
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> u_prime;
  /// Minimal profiles: u' = sign * flux / sqrt(r^{2(n-1)} - flux^2).
  double flux = 0.0;
  double sign = 1.0;
  double residual_norm = 0.0;
  int iterations = 0;
  double h = 0.0;

  /// Derivatives of the computed profile in closed form (minimal surface only).
  Jet profile_jet(const Vec& x, int order = 2) const;
  double profile_value(double r) const;
  double profile_prime(double r) const;
};

struct BoundaryData {
  std::string outer_name;
  std::string inner_name;
  std::function<double(const Vec2&)> outer;
  std::function<double(const Vec2&)> inner;
};

/// Named closed forms for one boundary side: "constant:<v>",
/// "catenoid" (arccosh |x - c|), "harmonic-annulus" (log(R0/r)/log(R0/R1) for
/// concentric circles).
std::function<double(const Vec2&)> named_boundary_function(const std::string& name,
                                                           const RingDomain2D& domain);
BoundaryData named_boundary_data(const std::string& outer, const std::string& inner,
                                 const RingDomain2D& domain);
/// Boundary traces sampled at the grid angles t_j = 2 pi j / nt, interpolated
/// linearly and periodically in t.
BoundaryData sampled_boundary_data(std::vector<double> outer, std::vector<double> inner,
                                   const RingDomain2D& domain);

struct GridSolution {
  RingDomain2D domain;
  std::vector<double> u;  // row-major (i, j), i = 0 the outer curve
  EquationKind equation = EquationKind::MinimalSurface;
  std::optional<SemilinearRHS> rhs;
  std::string boundary_outer;
  std::string boundary_inner;
  double residual_norm = 0.0;
  int picard_iterations = 0;
  int newton_iterations = 0;
  double h = 0.0;

  double at(int i, int j) const { return u[static_cast<std::size_t>(domain.index(i, j))]; }
};

using RingSolution = std::variant<RadialSolution, GridSolution>;

/// Radial minimal graph with u(a) = u_a, u(b) = u_b: flux found by bisection
/// against the quadrature of the profile. NoSolution when the data are too
/// steep for a graph over the ring.
RadialSolution solve_minimal_radial(int n, double a, double b, double u_a, double u_b, int samples = 1025);

/// Conservative finite-volume discretisation of (r^{n-1} u')' = r^{n-1} f and
/// Newton iteration. f must be radially symmetric.
RadialSolution solve_semilinear_radial(int n, double a, double b, double u_a, double u_b,
                                       const SemilinearRHS& rhs, int samples = 1025,
                                       SolverOptions options = {});

GridSolution solve_minimal_ring2d(const RingDomain2D& domain, const BoundaryData& data,
                                  SolverOptions options = {});
GridSolution solve_semilinear_ring2d(const RingDomain2D& domain, const BoundaryData& data,
                                     const SemilinearRHS& rhs, SolverOptions options = {});

/// Max-norm of the discrete equation residual over interior nodes.
double discrete_residual(const GridSolution& sol);

/// Cartesian derivatives (u_x, u_y, u_xx, u_xy, u_yy) of the discrete field
/// from the 9-point stencil at interior nodes (zero on boundary rows).
struct GridDerivatives {
  std::vector<double> ux, uy, uxx, uxy, uyy;
};
GridDerivatives stencil_derivatives(const RingDomain2D& domain, const std::vector<double>& u);

}  // namespace levelcurv
