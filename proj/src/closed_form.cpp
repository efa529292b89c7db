#include "levelcurv/closed_form.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "levelcurv/error.hpp"

namespace levelcurv {

Jet radial_jet(const Vec& x, double up, double upp, double uppp, int order) {
  const Eigen::Index n = x.size();
  const double r = x.norm();
  if (!(r > 0.0)) throw Error(ErrorKind::OutOfDomain, "radial jet at the origin");
  const Vec xh = x / r;
  Jet j;
  j.grad = up * xh;
  const Mat proj = xh * xh.transpose();
  j.hess = upp * proj + (up / r) * (Mat::Identity(n, n) - proj);
  if (order >= 3) {
    // u_ij = p1 x_i x_j + p0 delta_ij
    const double p1 = (upp - up / r) / (r * r);
    const double dp0 = upp / r - up / (r * r);
    const double dp1 = uppp / (r * r) - 3.0 * upp / (r * r * r) + 3.0 * up / (r * r * r * r);
    Tensor3 t(static_cast<int>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) {
          double v = dp1 * xh(l) * x(i) * x(k);
          if (i == l) v += p1 * x(k);
          if (k == l) v += p1 * x(i);
          if (i == k) v += dp0 * xh(l);
          t(static_cast<int>(i), static_cast<int>(k), static_cast<int>(l)) = v;
        }
    j.third = std::move(t);
  }
  return j;
}

RadialMinimalField::RadialMinimalField(int n, double flux, double sign)
    : n_(n), c_(flux), sign_(sign) {
  if (n < 2) throw Error(ErrorKind::UnsupportedDimension, "radial field needs n >= 2");
  if (!(flux > 0.0)) throw Error(ErrorKind::OutOfDomain, "flux constant must be positive");
}

double RadialMinimalField::throat() const { return std::pow(c_, 1.0 / (n_ - 1)); }

double RadialMinimalField::profile_prime(double r) const {
  const double m = n_ - 1;
  return sign_ * c_ / std::sqrt(std::pow(r, 2.0 * m) - c_ * c_);
}

double RadialMinimalField::profile_second(double r) const {
  const double m = n_ - 1;
  const double d = std::pow(r, 2.0 * m) - c_ * c_;
  return -sign_ * c_ * m * std::pow(r, 2.0 * m - 1.0) * std::pow(d, -1.5);
}

double RadialMinimalField::profile_third(double r) const {
  const double m = n_ - 1;
  const double d = std::pow(r, 2.0 * m) - c_ * c_;
  return -sign_ * c_ * m * std::pow(d, -2.5) *
         ((2.0 * m - 1.0) * std::pow(r, 2.0 * m - 2.0) * d - 3.0 * m * std::pow(r, 4.0 * m - 2.0));
}

double RadialMinimalField::profile(double r) const {
  const double r0 = throat();
  if (!(r >= r0)) throw Error(ErrorKind::OutOfDomain, "radius inside the catenoid throat");
  if (n_ == 2) return sign_ * c_ * std::acosh(r / c_);
  if (r == r0) return 0.0;
  const double m = n_ - 1;
  // s = r0 + w^2 removes the endpoint singularity; s^{2m} - c^2 = c^2 expm1(2m log1p(w^2 / r0))
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double w) {
    const double e = std::expm1(2.0 * m * std::log1p(w * w / r0));
    if (e < 1e-12) return 2.0 * std::sqrt(r0 / (2.0 * m));
    return 2.0 * w / std::sqrt(e);
  };
  return sign_ * integrator.integrate(f, 0.0, std::sqrt(r - r0), 1e-15);
}

double RadialMinimalField::value(const Vec& x) const { return profile(x.norm()); }

Jet RadialMinimalField::jet(const Vec& x, int order) const {
  const double r = x.norm();
  if (!(r > throat())) throw Error(ErrorKind::OutOfDomain, "radius inside the catenoid throat");
  return radial_jet(x, profile_prime(r), profile_second(r), order >= 3 ? profile_third(r) : 0.0,
                    order);
}

std::string RadialMinimalField::name() const {
  std::ostringstream s;
  s << "radial-minimal(n=" << n_ << ",c=" << c_ << (sign_ < 0 ? ",-" : "") << ")";
  return s.str();
}

double ScherkField::value(const Vec& x) const {
  return sign_ * (std::log(std::cos(x(0))) - std::log(std::cos(x(1))));
}

Jet ScherkField::jet(const Vec& x, int order) const {
  const double t0 = std::tan(x(0));
  const double t1 = std::tan(x(1));
  const double s0 = 1.0 + t0 * t0;  // sec^2
  const double s1 = 1.0 + t1 * t1;
  Jet j;
  j.grad = Vec(2);
  j.grad << -sign_ * t0, sign_ * t1;
  j.hess = Mat::Zero(2, 2);
  j.hess(0, 0) = -sign_ * s0;
  j.hess(1, 1) = sign_ * s1;
  if (order >= 3) {
    Tensor3 t(2);
    t(0, 0, 0) = -2.0 * sign_ * s0 * t0;
    t(1, 1, 1) = 2.0 * sign_ * s1 * t1;
    j.third = std::move(t);
  }
  return j;
}

HarmonicRingField::HarmonicRingField(int n, double a, double b, double u_a, double u_b)
    : n_(n), a_(a), b_(b), u_b_(u_b) {
  if (n < 2) throw Error(ErrorKind::UnsupportedDimension, "harmonic ring needs n >= 2");
  if (!(a > 0.0 && b > a)) throw Error(ErrorKind::InvalidInstance, "harmonic ring needs 0 < a < b");
  k_ = (u_a - u_b) / (fundamental(a, 0) - fundamental(b, 0));
}

double HarmonicRingField::fundamental(double r, int derivative) const {
  if (n_ == 2) {
    switch (derivative) {
      case 0: return std::log(r);
      case 1: return 1.0 / r;
      case 2: return -1.0 / (r * r);
      default: return 2.0 / (r * r * r);
    }
  }
  const double p = 2.0 - n_;
  switch (derivative) {
    case 0: return std::pow(r, p);
    case 1: return p * std::pow(r, p - 1.0);
    case 2: return p * (p - 1.0) * std::pow(r, p - 2.0);
    default: return p * (p - 1.0) * (p - 2.0) * std::pow(r, p - 3.0);
  }
}

double HarmonicRingField::value(const Vec& x) const {
  return u_b_ + k_ * (fundamental(x.norm(), 0) - fundamental(b_, 0));
}

Jet HarmonicRingField::jet(const Vec& x, int order) const {
  if (x.size() != n_) throw Error(ErrorKind::UnsupportedDimension, "point dimension differs from the field");
  const double r = x.norm();
  if (r == 0.0) throw Error(ErrorKind::OutOfDomain, "harmonic ring field is singular at the origin");
  return radial_jet(x, k_ * fundamental(r, 1), k_ * fundamental(r, 2), k_ * fundamental(r, 3), order);
}

}  // namespace levelcurv
