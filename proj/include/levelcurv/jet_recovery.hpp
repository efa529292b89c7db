#pragma once

// Pointwise jets from discrete solutions by local weighted least squares.
// A polynomial of degree order + 1 is fitted in physical coordinates around
// the evaluation point, so samples of such a polynomial are reproduced exactly.

#include <vector>

#include "levelcurv/jet.hpp"
#include "levelcurv/solvers.hpp"

namespace levelcurv {

/// Grid layers a centred window needs on each side: 2 for order <= 2, 3 for order 3.
int recovery_layers(int order);

/// Jet at grid node (i, j). With strict = false the window is shifted
/// one-sided near the curves instead of raising TooCloseToBoundary.
Jet recover_jet(const GridSolution& sol, int i, int j, int order = 2, bool strict = true);

/// Same fit for any nodal field on the grid of `d` with spacing scale h.
Jet fit_grid_values(const RingDomain2D& d, double h, const std::vector<double>& values, int i, int j,
                    int order = 2, bool strict = true);

/// Jet at an arbitrary point of the ring, fitted on the window around the nearest node.
Jet recover_jet(const GridSolution& sol, const Vec2& point, int order = 2, bool strict = true);

/// Jet of the radial field at x (|x| inside [a, b]) from a 1D fit in r.
Jet recover_jet(const RadialSolution& sol, const Vec& x, int order = 2, bool strict = true);

Jet recover_jet(const RingSolution& sol, const Vec& x, int order = 2, bool strict = true);

/// Fitted derivatives (u_x, u_y, u_xx, u_xy, u_yy) at every node; boundary
/// rows use one-sided windows.
GridDerivatives recover_derivatives(const GridSolution& sol);

/// Signed level-curve curvature and |grad u|^2 at every node of a planar solution.
struct LevelCurvatureField {
  std::vector<double> kappa;
  std::vector<double> grad_sq;
};
LevelCurvatureField level_curvature_field(const GridDerivatives& d);

}  // namespace levelcurv
