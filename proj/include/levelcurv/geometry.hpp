#pragma once

// Pointwise differential geometry of level sets {u = const}: frames, normals,
// fundamental forms, the symmetric curvature matrix, principal and Gauss
// curvature, convexity, and the weighted curvature test functions.

#include <optional>
#include <string>

#include "levelcurv/jet.hpp"
#include "levelcurv/small_matrix.hpp"

namespace levelcurv {

/// Below this gradient norm the level set is not a hypersurface and every
/// curvature operation raises GradientTooSmall.
inline constexpr double kGradientFloor = 1e-8;
inline constexpr double kDefaultConvexityTol = 1e-9;

struct LevelSetFrame {
  Mat rotation;  // Q, orthogonal with det +1; aligned coordinates are y = Q x
  Jet aligned;   // grad = (0, ..., 0, |grad u|)
};

/// Rotates coordinates so the gradient lies along +e_n (Givens sweep).
/// With diagonalize_tangential the first n-1 axes are additionally turned so
/// the tangential Hessian block becomes diagonal.
LevelSetFrame align_frame(const Jet& jet, bool diagonalize_tangential = false);

/// Upward normal of the level set in the chart x_n = v(x'): sign(u_n) grad/|grad|.
Vec level_set_normal(const Vec& grad);

/// Unnormalised second fundamental form h (size n-1) in the raw chart.
Mat second_fundamental_h(const Jet& jet);

/// Curvature matrix of the graph x_n = v(x') given grad v and Hessian of v.
Mat graph_curvature_matrix(const Vec& v_grad, const Mat& v_hess);

enum class ChartMode { Raw, Aligned };
enum class Orientation { AsComputed, Flipped };

struct CurvatureData {
  ChartMode mode = ChartMode::Aligned;
  double W = 1.0;
  Vec normal;
  Mat h;
  Mat A, B, C;
  Mat a_signed;  // as produced by the chart formula, before orientation
  Mat a;         // geometric convention: convex level sets give a >= 0
  Vec principal; // eigenvalues of a, ascending
  double gauss = 0.0;
  Orientation orientation = Orientation::AsComputed;
  std::optional<Mat> frame;  // rotation used in Aligned mode

  double sign() const { return orientation == Orientation::Flipped ? -1.0 : 1.0; }
};

/// Full curvature data of the level set through the jet's point.
/// Raw mode evaluates the chart formula with x_n as graph direction and needs
/// u_n != 0; Aligned mode first rotates the gradient onto +e_n.
CurvatureData curvature_matrix(const Jet& jet, ChartMode mode = ChartMode::Aligned);

/// Sign choice that makes a strictly convex level set have positive-definite a:
/// flip when -a is positive semidefinite and nonzero.
Orientation orientation_for(const Mat& a_signed);

enum class Convexity { StrictlyConvex, Convex, NonConvex };
std::string to_string(Convexity c);

Convexity convexity_classify(const Mat& a, double tol = kDefaultConvexityTol);
Convexity convexity_from_principal(const Vec& principal, double tol = kDefaultConvexityTol);

/// Weight function of the auxiliary quantity psi = exp(rho(|grad u|^2)) K.
/// MinimalTheta: rho(t) = theta [log t - log(1+t)].
/// PoissonPower: rho(t) = (p/2) log t, i.e. psi = |grad u|^p K.
class TestFunctionSpec {
 public:
  enum class Kind { MinimalTheta, PoissonPower };

  static TestFunctionSpec minimal_theta(double theta) { return {Kind::MinimalTheta, theta}; }
  static TestFunctionSpec poisson_power(double p) { return {Kind::PoissonPower, p}; }

  Kind kind() const { return kind_; }
  /// theta for MinimalTheta, p for PoissonPower.
  double parameter() const { return param_; }

  double rho(double t) const;
  double rho_prime(double t) const;
  double rho_second(double t) const;
  /// exp(rho(t)).
  double weight(double t) const;

  std::string describe() const;

 private:
  TestFunctionSpec(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

/// psi = weight(|grad u|^2) * K.
double weighted_curvature(const TestFunctionSpec& spec, double grad_norm_sq, double gauss);

/// phi = rho(|grad u|^2) + log K; raises NonpositiveCurvature for K <= 0.
double log_weighted_curvature(const TestFunctionSpec& spec, double grad_norm_sq, double gauss);

struct CatenoidValues {
  double grad_norm_sq;
  double gauss;
  double psi_minus_half;
  double u_prime;
};

/// Closed forms along the n-dimensional catenoid u' = 1/sqrt(r^{2(n-1)} - 1).
CatenoidValues catenoid_oracle(int n, double r);

}  // namespace levelcurv
