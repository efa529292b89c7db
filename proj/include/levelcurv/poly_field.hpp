#pragma once

#include <array>
#include <map>

#include "levelcurv/jet.hpp"

namespace levelcurv {

/// Multivariate polynomial in up to four variables with total degree <= 4.
/// Differentiation acts on the coefficients and is exact.
class PolyField {
 public:
  static constexpr int kMaxDim = 4;
  static constexpr int kMaxDegree = 4;
  using MultiIndex = std::array<int, kMaxDim>;

  explicit PolyField(int dim);

  int dim() const { return dim_; }
  int degree() const;

  void set(const MultiIndex& alpha, double coeff);
  double coeff(const MultiIndex& alpha) const;
  const std::map<MultiIndex, double>& terms() const { return terms_; }

  PolyField derivative(int axis) const;

  double evaluate(const Vec& x) const;
  /// Value of the mixed partial d^order u at x.
  double partial(const MultiIndex& order, const Vec& x) const;
  Jet jet(const Vec& x, int order = 3) const;

  bool operator==(const PolyField& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  /// Every multi-index of total degree <= max_degree in `dim` variables,
  /// in lexicographic order.
  static std::vector<MultiIndex> monomials(int dim, int max_degree);

 private:
  int dim_;
  std::map<MultiIndex, double> terms_;
};

}  // namespace levelcurv
