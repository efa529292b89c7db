#pragma once

// Pointwise identity checks for the level-set curvature machinery, driven by
// exactly differentiable fields (polynomials and closed forms).

#include <cstdint>
#include <vector>

#include "levelcurv/closed_form.hpp"
#include "levelcurv/geometry.hpp"
#include "levelcurv/poly_field.hpp"

namespace levelcurv {

struct TestField {
  PolyField field;
  Vec point;
};

/// Random degree-4 polynomial in n in {2,3,4} variables with coefficients in
/// [-1, 1] and an evaluation point in [-0.5, 0.5]^n, resampled until
/// |grad u| >= 0.1 and |det a| >= 1e-4 at the point. With
/// require_strictly_convex the oriented curvature matrix must also be
/// positive definite. Deterministic per seed.
TestField random_test_jet(std::uint64_t seed, int n, bool require_strictly_convex = false);

/// Spatial derivatives a_ij,k (k = 0..n-1) of the curvature-matrix field in
/// the aligned chart, before orientation.
struct CurvatureDerivatives {
  Mat a;                 // pre-orientation curvature matrix at the point
  std::vector<Mat> a_k;  // a_k[k](i, j) = d a_ij / d y_k
  double sigma1 = 0.0;   // trace of a
};

/// Exact derivatives of the chart formula along each aligned axis, obtained by
/// pushing dual numbers through it. The jet must be aligned and carry third
/// derivatives.
CurvatureDerivatives curvature_derivatives(const Jet& aligned);

/// Closed form a_ij,k = -u_ijk/u_n + (u_ij u_kn + u_ik u_jn + u_jk u_in)/u_n^2
/// for tangential i, j, k at an aligned jet.
std::vector<Mat> codazzi_closed_form(const Jet& aligned);

struct CodazziReport {
  double closed_form_asymmetry = 0.0;
  double differentiated_asymmetry = 0.0;
  double route_gap = 0.0;  // max |closed form - differentiated|
  double residual() const { return std::max(closed_form_asymmetry, differentiated_asymmetry); }
};

CodazziReport codazzi_report(const PolyField& field, const Vec& point);
/// max over tangential i,j,k of |a_ij,k - a_ik,j|, the larger of both routes.
double codazzi_residual(const PolyField& field, const Vec& point);

/// max over alpha of |phi_alpha - (tr(a^{-1} a_alpha) + rho' (|grad u|^2)_alpha)|
/// with phi = rho(|grad u|^2) + log det a in the aligned chart (oriented a).
double phi_gradient_identity_residual(const PolyField& field, const Vec& point,
                                      const TestFunctionSpec& spec);

/// max over i < n, alpha <= n of
/// |u_iia + u_n a_ii,a - 2 u_ni u_ia / u_n + u_na a_ii| at the aligned point.
double uiia_residual(const PolyField& field, const Vec& point);

struct QuadraticBoundInstance {
  double lambda = 0.0;
  double mu = 0.0;
  Vec b;
  Vec c;
};

struct QuadraticBound {
  double gamma = 0.0;
  double bound = 0.0;
};

/// Gamma = sum c_i^2/b_i - lambda (1 + lambda sum 1/b_i)^{-1} (sum c_i/b_i)^2,
/// bound = 4 mu^2 Gamma.
QuadraticBound lemma_quadratic_bound(const QuadraticBoundInstance& inst);

/// Q(X) = -sum b_i X_i^2 - lambda (sum X_i)^2 + 4 mu sum c_i X_i.
double quadratic_form_value(const QuadraticBoundInstance& inst, const Vec& x);

struct QuadraticMaximum {
  double value = 0.0;
  Vec argmax;
  bool grid_search = false;
};

/// m in 1..6, lambda in [0, 3], mu in [-2, 2], b_i in [0.1, 5], c_i in [-3, 3].
/// Deterministic per seed.
QuadraticBoundInstance random_quadratic_instance(std::uint64_t seed);

/// Maximum of Q from its stationarity system; dense grid search on
/// [-10, 10]^m when the system is numerically singular.
QuadraticMaximum maximize_quadratic_form(const QuadraticBoundInstance& inst);

struct PhiJet {
  double phi = 0.0;
  Vec grad_phi;
  Mat hess_phi;
};

struct MasterIdentityResult {
  double lhs = 0.0;       // sum F^{ab} phi_ab
  double rhs = 0.0;       // explicit right-hand side
  double residual = 0.0;  // |lhs - rhs| at the chosen step
  double residual_half_step = 0.0;
  double step = 0.0;
  double equation_residual = 0.0;  // F^{ab} u_ab at the point
  PhiJet phi;
  CurvatureDerivatives curvature;
};

/// Checks the second-order identity satisfied by phi = rho(|grad u|^2) + log K,
/// rho(t) = theta [log t - log(1+t)], for a solution of the minimal surface
/// equation. Works in the aligned frame with diagonal tangential Hessian;
/// phi_ab comes from 6th-order central differences of the exact phi_a.
/// step <= 0 selects 1e-2 times the local length |grad u| / |Hess u|.
MasterIdentityResult minimal_master_identity(const ClosedFormField& supplier, const Vec& point,
                                             double theta, double step = 0.0);

double minimal_master_identity_residual(const ClosedFormField& supplier, const Vec& point,
                                        double theta, double step = 0.0);

/// Jet of phi (value and exact gradient) in the coordinates y with x = x0 + R y.
PhiJet phi_first_order(const ClosedFormField& supplier, const Vec& x0, const Mat& r,
                       const Vec& y, const TestFunctionSpec& spec);

}  // namespace levelcurv
