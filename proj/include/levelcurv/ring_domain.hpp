#pragma once

// Convex rings between two star-shaped conic curves, discretised on the
// boundary-fitted grid x(s, t) = c + [(1 - s) R0(t) + s R1(t)] (cos t, sin t).
// s = 0 is the outer curve, s = 1 the inner one; t is periodic.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace levelcurv {

using Vec2 = Eigen::Vector2d;

/// Ellipse (circle when both semi-axes agree) with centre, semi-axes and tilt.
struct ConicCurve {
  Vec2 centre = Vec2::Zero();
  double semi_a = 1.0;
  double semi_b = 1.0;
  double angle = 0.0;

  static ConicCurve circle(double radius, Vec2 centre = Vec2::Zero()) {
    return {centre, radius, radius, 0.0};
  }
  static ConicCurve ellipse(double a, double b, double angle = 0.0, Vec2 centre = Vec2::Zero()) {
    return {centre, a, b, angle};
  }
  bool is_circle() const { return semi_a == semi_b; }
  std::string describe() const;
};

/// Radial distance R(t) from a pole to the curve along (cos t, sin t), with
/// its first two t-derivatives.
struct PolarSample {
  double r = 0.0;
  double dr = 0.0;
  double ddr = 0.0;
};

PolarSample polar_radius(const ConicCurve& curve, const Vec2& pole, double t);

/// Geometry of one grid node: position and the linear map from the
/// computational derivatives (u_s, u_t, u_ss, u_st, u_tt) to the Cartesian
/// ones (u_x, u_y, u_xx, u_xy, u_yy).
struct NodeMetric {
  Vec2 x;
  Eigen::Matrix<double, 5, 5> to_cartesian;
  Eigen::Matrix2d jacobian;  // columns x_s, x_t
};

class RingDomain2D {
 public:
  RingDomain2D(ConicCurve outer, ConicCurve inner, Vec2 centre, int ns, int nt);

  const ConicCurve& outer() const { return outer_; }
  const ConicCurve& inner() const { return inner_; }
  const Vec2& centre() const { return centre_; }
  int ns() const { return ns_; }
  int nt() const { return nt_; }
  double hs() const { return 1.0 / (ns_ - 1); }
  double ht() const;

  /// Same curves on another grid.
  RingDomain2D with_grid(int ns, int nt) const { return {outer_, inner_, centre_, ns, nt}; }

  int index(int i, int j) const { return i * nt_ + j; }
  double s(int i) const { return static_cast<double>(i) * hs(); }
  double t(int j) const { return static_cast<double>(j) * ht(); }
  const NodeMetric& metric(int i, int j) const { return metric_[static_cast<std::size_t>(index(i, j))]; }
  const Vec2& node(int i, int j) const { return metric(i, j).x; }

  /// Largest physical distance between neighbouring nodes.
  double spacing() const { return spacing_; }
  /// Smallest distance between the curves along a ray.
  double min_gap() const { return min_gap_; }

  /// Maps a physical point to (s, t); s outside [0, 1] means outside the ring.
  Vec2 to_computational(const Vec2& x) const;
  Vec2 map(double s, double t) const;

  /// Coordinates and spacing descriptors, echoed in reports.
  std::string describe() const;

 private:
  ConicCurve outer_;
  ConicCurve inner_;
  Vec2 centre_;
  int ns_;
  int nt_;
  std::vector<NodeMetric> metric_;
  double spacing_ = 0.0;
  double min_gap_ = 0.0;
};

}  // namespace levelcurv
