#pragma once

// Right-hand sides f(x, u) of the semilinear equation Laplace(u) = f and the
// sampled admissibility flags the theorem checks depend on.

#include <cstdint>
#include <functional>
#include <string>

#include "levelcurv/small_matrix.hpp"

namespace levelcurv {

struct SemilinearRHS {
  std::string name;
  std::function<double(const Vec& x, double u)> f;
  std::function<double(const Vec& x, double u)> f_u;

  double operator()(const Vec& x, double u) const { return f(x, u); }

  static SemilinearRHS zero();
  static SemilinearRHS constant(double v);
  /// f = lambda u.
  static SemilinearRHS linear(double lambda);
  /// f(x) = (2 + x_1)^{-2}.
  static SemilinearRHS inverse_square_shift();

  /// "zero", "constant:<v>", "linear:<lambda>", "inverse-square-shift".
  static SemilinearRHS parse(const std::string& spec);
};

struct RhsFlags {
  bool nonnegative = false;
  bool f_of_u_only = false;
  bool f_of_x_only = false;
  bool f_u_nonneg = false;
  bool f_u_nonpos = false;
  bool f0_zero = false;
  bool t3f_convex = false;
  double min_f = 0.0;  // smallest sampled value
  int samples = 0;
  bool sampled = true;  // flags come from sampling, not proof

  /// Nonnegative, non-decreasing in u and vanishing at u = 0.
  bool ring_bound_admissible() const { return nonnegative && f_u_nonneg && f0_zero; }
};

struct SampleBox {
  Vec lo;
  Vec hi;
  double u_lo = 0.0;
  double u_hi = 1.0;
};

/// Samples f and f_u at `samples` points of box x [u_lo, u_hi] (deterministic
/// per seed). Sign flags use tolerance 1e-12; convexity of (x, t) -> t^3 f(x)
/// is tested through a fourth-order finite-difference Hessian at random
/// (x, t in [0.25, 4]) with a relative tolerance of 1e-8.
RhsFlags admissibility_check(const SemilinearRHS& rhs, const SampleBox& box, int samples = 1000,
                             std::uint64_t seed = 1);

}  // namespace levelcurv
