#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "levelcurv/small_matrix.hpp"

namespace levelcurv {

/// Fully symmetric third-order tensor u_{abc} stored densely.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  double operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }

  /// Slice T(:, :, c) as a matrix.
  Mat slice(int c) const;

  /// Largest |T_abc - T_pqr| over index permutations.
  double symmetry_defect() const;

  /// T'_{abc} = Q_ai Q_bj Q_ck T_ijk.
  Tensor3 rotated(const Mat& q) const;

 private:
  std::size_t index(int a, int b, int c) const {
    return static_cast<std::size_t>((a * dim_ + b) * dim_ + c);
  }
  int dim_ = 0;
  std::vector<double> data_;
};

/// Derivatives of a scalar field at one point, up to order three.
struct Jet {
  Vec grad;
  Mat hess;
  std::optional<Tensor3> third;

  int dim() const { return static_cast<int>(grad.size()); }
};

/// Jet in coordinates y = Q x (grad -> Q grad, hess -> Q H Q^T, ...).
Jet rotate_jet(const Jet& jet, const Mat& q);

}  // namespace levelcurv
