#pragma once

// Scalar fields with closed-form derivatives, used as exact jet sources.

#include <memory>
#include <string>

#include "levelcurv/jet.hpp"
#include "levelcurv/poly_field.hpp"

namespace levelcurv {

class ClosedFormField {
 public:
  virtual ~ClosedFormField() = default;
  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  /// Derivatives up to `order` (<= 3).
  virtual Jet jet(const Vec& x, int order = 2) const = 0;
  virtual std::string name() const = 0;
};

/// Jet of u(x) = U(|x|) from the radial derivatives U', U'', U'''.
Jet radial_jet(const Vec& x, double up, double upp, double uppp, int order);

/// Radial minimal graph u' = sign * c / sqrt(r^{2(n-1)} - c^2), c > 0.
/// With c = 1 this is the n-dimensional catenoid.
class RadialMinimalField final : public ClosedFormField {
 public:
  RadialMinimalField(int n, double flux, double sign = 1.0);

  int dim() const override { return n_; }
  double value(const Vec& x) const override;
  Jet jet(const Vec& x, int order = 2) const override;
  std::string name() const override;

  /// U(r) - U(r0) for the profile, by quadrature (closed form when n = 2).
  double profile(double r) const;
  double profile_prime(double r) const;
  double profile_second(double r) const;
  double profile_third(double r) const;
  /// Smallest radius where the profile is defined: c^{1/(n-1)}.
  double throat() const;

 private:
  int n_;
  double c_;
  double sign_;
};

/// Radial harmonic function on a <= |x| <= b with U(a) = u_a, U(b) = u_b:
/// affine in log r for n = 2 and in r^{2-n} otherwise.
class HarmonicRingField final : public ClosedFormField {
 public:
  HarmonicRingField(int n, double a, double b, double u_a, double u_b);

  int dim() const override { return n_; }
  double value(const Vec& x) const override;
  Jet jet(const Vec& x, int order = 2) const override;
  std::string name() const override { return "harmonic-ring"; }

  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double fundamental(double r, int derivative) const;
  int n_;
  double a_;
  double b_;
  double u_b_;
  double k_;  // (u_a - u_b) / (Phi(a) - Phi(b))
};

/// Scherk's surface u = sign * (log cos x1 - log cos x2) on |x1|,|x2| < pi/2.
class ScherkField final : public ClosedFormField {
 public:
  explicit ScherkField(double sign = 1.0) : sign_(sign) {}
  int dim() const override { return 2; }
  double value(const Vec& x) const override;
  Jet jet(const Vec& x, int order = 2) const override;
  std::string name() const override { return sign_ > 0 ? "scherk" : "scherk(-)"; }

 private:
  double sign_;
};

class PolyFieldSource final : public ClosedFormField {
 public:
  explicit PolyFieldSource(PolyField f) : f_(std::move(f)) {}
  int dim() const override { return f_.dim(); }
  double value(const Vec& x) const override { return f_.evaluate(x); }
  Jet jet(const Vec& x, int order = 2) const override { return f_.jet(x, order); }
  std::string name() const override { return "polynomial"; }

 private:
  PolyField f_;
};

}  // namespace levelcurv
