#include "levelcurv/ring_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "levelcurv/error.hpp"

namespace levelcurv {

std::string ConicCurve::describe() const {
  std::ostringstream s;
  s.precision(17);
  if (is_circle())
    s << "circle(r=" << semi_a;
  else
    s << "ellipse(a=" << semi_a << ",b=" << semi_b << ",angle=" << angle;
  s << ",centre=[" << centre.x() << "," << centre.y() << "])";
  return s.str();
}

PolarSample polar_radius(const ConicCurve& curve, const Vec2& pole, double t) {
  const double ca = std::cos(curve.angle);
  const double sa = std::sin(curve.angle);
  const Vec2 p = pole - curve.centre;
  const Vec2 d(ca * p.x() + sa * p.y(), -sa * p.x() + ca * p.y());
  const Vec2 e(std::cos(t - curve.angle), std::sin(t - curve.angle));
  const Vec2 et(-e.y(), e.x());
  const Vec2 m(1.0 / (curve.semi_a * curve.semi_a), 1.0 / (curve.semi_b * curve.semi_b));
  auto dot = [&](const Vec2& u, const Vec2& v) { return u.x() * m.x() * v.x() + u.y() * m.y() * v.y(); };

  const double qa = dot(e, e);
  const double qb = 2.0 * dot(d, e);
  const double qc = dot(d, d) - 1.0;
  if (!(qc < 0.0)) throw Error(ErrorKind::InvalidInstance, "ring centre is not inside " + curve.describe());
  const double qa1 = 2.0 * dot(e, et);
  const double qa2 = 2.0 * (dot(et, et) - dot(e, e));
  const double qb1 = 2.0 * dot(d, et);
  const double qb2 = -qb;

  PolarSample out;
  out.r = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
  const double r = out.r;
  const double den = 2.0 * qa * r + qb;
  out.dr = -(qa1 * r * r + qb1 * r) / den;
  const double r1 = out.dr;
  out.ddr = -(qa2 * r * r + 4.0 * qa1 * r * r1 + 2.0 * qa * r1 * r1 + qb2 * r + 2.0 * qb1 * r1) / den;
  return out;
}

RingDomain2D::RingDomain2D(ConicCurve outer, ConicCurve inner, Vec2 centre, int ns, int nt)
    : outer_(outer), inner_(inner), centre_(centre), ns_(ns), nt_(nt) {
  if (ns < 5 || nt < 8) throw Error(ErrorKind::InvalidInstance, "ring grid needs ns >= 5 and nt >= 8");
  for (const ConicCurve* c : {&outer_, &inner_})
    if (!(c->semi_a > 0.0 && c->semi_b > 0.0))
      throw Error(ErrorKind::InvalidInstance, "curve semi-axes must be positive");

  // star-shapedness and nesting, checked on a ray fan four times finer than the grid
  min_gap_ = std::numeric_limits<double>::infinity();
  const int rays = 4 * nt;
  for (int k = 0; k < rays; ++k) {
    const double t = 2.0 * std::numbers::pi * k / rays;
    const double gap = polar_radius(outer_, centre_, t).r - polar_radius(inner_, centre_, t).r;
    min_gap_ = std::min(min_gap_, gap);
  }
  if (!(min_gap_ > 0.0)) throw Error(ErrorKind::InvalidInstance, "inner curve is not strictly inside the outer one");

  metric_.resize(static_cast<std::size_t>(ns_) * static_cast<std::size_t>(nt_));
  for (int j = 0; j < nt_; ++j) {
    const double tj = t(j);
    const PolarSample p0 = polar_radius(outer_, centre_, tj);
    const PolarSample p1 = polar_radius(inner_, centre_, tj);
    const Vec2 e(std::cos(tj), std::sin(tj));
    const Vec2 ep(-e.y(), e.x());
    for (int i = 0; i < ns_; ++i) {
      const double si = s(i);
      const double rho = (1.0 - si) * p0.r + si * p1.r;
      const double rho_t = (1.0 - si) * p0.dr + si * p1.dr;
      const double rho_tt = (1.0 - si) * p0.ddr + si * p1.ddr;
      NodeMetric& nm = metric_[static_cast<std::size_t>(index(i, j))];
      nm.x = centre_ + rho * e;
      const Vec2 xs = (p1.r - p0.r) * e;
      const Vec2 xt = rho_t * e + rho * ep;
      const Vec2 xst = (p1.dr - p0.dr) * e + (p1.r - p0.r) * ep;
      const Vec2 xtt = (rho_tt - rho) * e + 2.0 * rho_t * ep;
      nm.jacobian.col(0) = xs;
      nm.jacobian.col(1) = xt;
      const Eigen::Matrix2d k = nm.jacobian.inverse().transpose();
      const Eigen::RowVector2d gst = xst.transpose() * k;  // x_st . grad u in terms of (u_s, u_t)
      const Eigen::RowVector2d gtt = xtt.transpose() * k;

      auto& c = nm.to_cartesian;
      c.setZero();
      c.block<2, 2>(0, 0) = k;
      const int pq[3][2] = {{0, 0}, {0, 1}, {1, 1}};
      for (int row = 0; row < 3; ++row) {
        const int p = pq[row][0];
        const int q = pq[row][1];
        const double w_ss = k(p, 0) * k(q, 0);
        const double w_st = k(p, 0) * k(q, 1) + k(p, 1) * k(q, 0);
        const double w_tt = k(p, 1) * k(q, 1);
        c(2 + row, 2) = w_ss;
        c(2 + row, 3) = w_st;
        c(2 + row, 4) = w_tt;
        c(2 + row, 0) = -(w_st * gst(0) + w_tt * gtt(0));
        c(2 + row, 1) = -(w_st * gst(1) + w_tt * gtt(1));
      }
    }
  }
  for (int i = 0; i < ns_; ++i)
    for (int j = 0; j < nt_; ++j) {
      if (i + 1 < ns_) spacing_ = std::max(spacing_, (node(i + 1, j) - node(i, j)).norm());
      spacing_ = std::max(spacing_, (node(i, (j + 1) % nt_) - node(i, j)).norm());
    }
}

double RingDomain2D::ht() const { return 2.0 * std::numbers::pi / nt_; }

Vec2 RingDomain2D::map(double s, double t) const {
  const double r0 = polar_radius(outer_, centre_, t).r;
  const double r1 = polar_radius(inner_, centre_, t).r;
  return centre_ + ((1.0 - s) * r0 + s * r1) * Vec2(std::cos(t), std::sin(t));
}

Vec2 RingDomain2D::to_computational(const Vec2& x) const {
  const Vec2 d = x - centre_;
  double t = std::atan2(d.y(), d.x());
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  const double r0 = polar_radius(outer_, centre_, t).r;
  const double r1 = polar_radius(inner_, centre_, t).r;
  return {(r0 - d.norm()) / (r0 - r1), t};
}

std::string RingDomain2D::describe() const {
  std::ostringstream s;
  s << "ring(outer=" << outer_.describe() << ",inner=" << inner_.describe() << ",grid=" << ns_ << "x"
    << nt_ << ")";
  return s.str();
}

}  // namespace levelcurv
