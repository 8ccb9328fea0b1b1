#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <string>
#include <utility>
#include <vector>

#include "tucker/error.hpp"
#include "tucker/tensor.hpp"

namespace tucker {

inline constexpr double kOrthonormalTolerance = 1e-10;

/// Target multilinear rank (R_1, ..., R_N).
struct MultilinearRank {
  std::vector<Index> ranks;

  Index order() const noexcept { return static_cast<Index>(ranks.size()); }
  Index operator[](Index n) const { return ranks.at(static_cast<std::size_t>(n)); }
  friend bool operator==(const MultilinearRank&, const MultilinearRank&) = default;

  /// Throws a rank error unless 1 <= R_n <= I_n for every mode of `shape`.
  void validate(const Shape& shape) const {
    if (ranks.size() != shape.size()) {
      throw Error(ErrorKind::Rank, "rank has " + std::to_string(ranks.size()) + " entries, tensor has order " +
                                       std::to_string(shape.size()));
    }
    for (std::size_t n = 0; n < ranks.size(); ++n) {
      if (ranks[n] < 1 || ranks[n] > shape[n]) {
        throw Error(ErrorKind::Rank, "rank " + std::to_string(ranks[n]) + " out of range [1, " +
                                         std::to_string(shape[n]) + "] in mode " + std::to_string(n));
      }
    }
  }

  static MultilinearRank uniform(Index order, Index r) {
    return {std::vector<Index>(static_cast<std::size_t>(order), r)};
  }
  static MultilinearRank full(const Shape& shape) { return {shape}; }
};

/// max |A^T A - I|
template <typename Derived>
typename Derived::Scalar orthonormality_defect(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.cols() == 0) return Scalar(0);
  const Matrix<Scalar> gram = a.transpose() * a;
  return (gram - Matrix<Scalar>::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_columnwise_orthonormal(const Eigen::MatrixBase<Derived>& a, double tol = kOrthonormalTolerance) {
  return a.rows() >= a.cols() && orthonormality_defect(a) <= tol;
}

/// Core tensor plus one columnwise-orthonormal factor per mode. The
/// constructor rejects non-orthonormal factors instead of repairing them.
template <std::floating_point Scalar>
class TuckerDecomposition {
 public:
  TuckerDecomposition(DenseTensor<Scalar> core, std::vector<Matrix<Scalar>> factors)
      : core_(std::move(core)), factors_(std::move(factors)) {
    if (static_cast<Index>(factors_.size()) != core_.order()) {
      throw Error(ErrorKind::Shape, std::to_string(factors_.size()) + " factors for a core of order " +
                                        std::to_string(core_.order()));
    }
    for (std::size_t n = 0; n < factors_.size(); ++n) {
      if (factors_[n].cols() != core_.shape()[n]) {
        throw Error(ErrorKind::Shape, "factor " + std::to_string(n) + " has " + std::to_string(factors_[n].cols()) +
                                          " columns, core extent is " + std::to_string(core_.shape()[n]));
      }
      if (!is_columnwise_orthonormal(factors_[n])) {
        throw Error(ErrorKind::Factor, "factor " + std::to_string(n) + " is not columnwise orthonormal");
      }
    }
  }

  const DenseTensor<Scalar>& core() const noexcept { return core_; }
  const std::vector<Matrix<Scalar>>& factors() const noexcept { return factors_; }
  const Matrix<Scalar>& factor(Index n) const { return factors_.at(static_cast<std::size_t>(n)); }
  Index order() const noexcept { return core_.order(); }

  MultilinearRank rank() const { return {core_.shape()}; }
  Shape full_shape() const {
    Shape s;
    for (const auto& f : factors_) s.push_back(f.rows());
    return s;
  }

 private:
  DenseTensor<Scalar> core_;
  std::vector<Matrix<Scalar>> factors_;
};

namespace detail {

template <std::floating_point Scalar>
void check_factor_rows(const Shape& shape, const std::vector<Matrix<Scalar>>& factors) {
  if (factors.size() != shape.size()) {
    throw Error(ErrorKind::Shape, std::to_string(factors.size()) + " factors for a tensor of order " +
                                      std::to_string(shape.size()));
  }
  for (std::size_t n = 0; n < factors.size(); ++n) {
    if (factors[n].rows() != shape[n]) {
      throw Error(ErrorKind::Shape, "factor " + std::to_string(n) + " has " + std::to_string(factors[n].rows()) +
                                        " rows, tensor extent is " + std::to_string(shape[n]));
    }
  }
}

}  // namespace detail

/// G = X x_1 A1^T x_2 A2^T ... x_N AN^T, the least-squares optimal core for
/// fixed orthonormal factors.
template <std::floating_point Scalar>
DenseTensor<Scalar> optimal_core(const DenseTensor<Scalar>& t, const std::vector<Matrix<Scalar>>& factors) {
  detail::check_factor_rows(t.shape(), factors);
  for (std::size_t n = 0; n < factors.size(); ++n) {
    if (!is_columnwise_orthonormal(factors[n])) {
      throw Error(ErrorKind::Factor, "factor " + std::to_string(n) + " is not columnwise orthonormal");
    }
  }
  DenseTensor<Scalar> core = t;
  for (std::size_t n = 0; n < factors.size(); ++n) {
    core = mode_n_product(core, factors[n].transpose(), static_cast<Index>(n));
  }
  return core;
}

/// Decomposition of t with the given factors and their optimal core.
template <std::floating_point Scalar>
TuckerDecomposition<Scalar> decomposition_from_factors(const DenseTensor<Scalar>& t,
                                                       std::vector<Matrix<Scalar>> factors) {
  DenseTensor<Scalar> core = optimal_core(t, factors);
  return TuckerDecomposition<Scalar>(std::move(core), std::move(factors));
}

/// G x_1 A1 x_2 A2 ... x_N AN
template <std::floating_point Scalar>
DenseTensor<Scalar> expand(const TuckerDecomposition<Scalar>& d) {
  DenseTensor<Scalar> out = d.core();
  for (Index n = 0; n < d.order(); ++n) out = mode_n_product(out, d.factor(n), n);
  return out;
}

/// Reconstruction of t from d; checks that d matches t's shape.
template <std::floating_point Scalar>
DenseTensor<Scalar> reconstruct(const DenseTensor<Scalar>& t, const TuckerDecomposition<Scalar>& d) {
  detail::check_factor_rows(t.shape(), d.factors());
  return expand(d);
}

/// ||t - reconstruct(t, d)||_F^2, always from the explicit residual.
template <std::floating_point Scalar>
Scalar reconstruction_error_sq(const DenseTensor<Scalar>& t, const TuckerDecomposition<Scalar>& d) {
  return frobenius_norm_sq(t - reconstruct(t, d));
}

/// Mode-n unfolding of the reconstructed tensor from the Kronecker form
/// A^(n) G_(n) (A^(1) x ... x A^(n-1) x A^(n+1) x ... x A^(N))^T.
/// Kronecker order follows the lexicographic column order used by unfold.
template <std::floating_point Scalar>
Matrix<Scalar> tucker_unfolding(const TuckerDecomposition<Scalar>& d, Index mode) {
  detail::check_mode(mode, d.order());
  Matrix<Scalar> kron = Matrix<Scalar>::Ones(1, 1);
  for (Index m = 0; m < d.order(); ++m) {
    if (m == mode) continue;
    Matrix<Scalar> next = Eigen::kroneckerProduct(kron, d.factor(m)).eval();
    kron = std::move(next);
  }
  return d.factor(mode) * unfold(d.core(), mode) * kron.transpose();
}

/// A A^T for a columnwise-orthonormal A.
template <typename Derived>
Matrix<typename Derived::Scalar> projector(const Eigen::MatrixBase<Derived>& a) {
  if (!is_columnwise_orthonormal(a)) throw Error(ErrorKind::Factor, "projector of a non-orthonormal matrix");
  return a * a.transpose();
}

}  // namespace tucker
