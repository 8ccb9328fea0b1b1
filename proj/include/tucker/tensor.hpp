#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tucker/error.hpp"

namespace tucker {

using Index = Eigen::Index;
using Shape = std::vector<Index>;

/// Row-major dense matrix. Unfoldings, factor matrices and projectors all use this type.
template <std::floating_point Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <std::floating_point Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline Index num_elements(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), Index{1}, std::multiplies<>{});
}

inline std::string shape_string(const Shape& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + ")";
}

/// Order-N dense real tensor stored in lexicographic order (last index varies
/// fastest). Entry (i_1,...,i_N), 0-based, lives at sum_n i_n * prod_{m>n} I_m.
///
/// Values are immutable once constructed; every operation below returns a new
/// tensor.
template <std::floating_point Scalar>
class DenseTensor {
 public:
  using scalar_type = Scalar;

  DenseTensor(Shape shape, Vector<Scalar> data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_.empty()) throw Error(ErrorKind::Construction, "tensor order must be at least 1");
    for (Index e : shape_) {
      if (e < 1) throw Error(ErrorKind::Construction, "extents must be positive, got " + shape_string(shape_));
    }
    if (num_elements(shape_) != data_.size()) {
      throw Error(ErrorKind::Construction, "shape " + shape_string(shape_) + " needs " +
                                               std::to_string(num_elements(shape_)) + " values, got " +
                                               std::to_string(data_.size()));
    }
    if (!data_.allFinite()) throw Error(ErrorKind::Construction, "tensor entries must be finite");
  }

  static DenseTensor zeros(Shape shape) {
    const Index n = num_elements(shape);
    return DenseTensor(std::move(shape), Vector<Scalar>::Zero(n));
  }

  const Shape& shape() const noexcept { return shape_; }
  Index order() const noexcept { return static_cast<Index>(shape_.size()); }
  Index extent(Index mode) const { return shape_.at(static_cast<std::size_t>(mode)); }
  Index size() const noexcept { return data_.size(); }
  const Vector<Scalar>& data() const noexcept { return data_; }

  Index flat_index(std::span<const Index> idx) const {
    Index flat = 0;
    for (std::size_t n = 0; n < shape_.size(); ++n) flat = flat * shape_[n] + idx[n];
    return flat;
  }

  /// Inverse of flat_index.
  void multi_index(Index flat, std::span<Index> idx) const {
    for (std::size_t n = shape_.size(); n-- > 0;) {
      idx[n] = flat % shape_[n];
      flat /= shape_[n];
    }
  }

  Scalar operator()(std::span<const Index> idx) const { return data_[flat_index(idx)]; }
  Scalar operator()(std::initializer_list<Index> idx) const {
    return (*this)(std::span<const Index>(idx.begin(), idx.size()));
  }

  bool is_zero() const { return (data_.array() == Scalar(0)).all(); }

  /// Bit-exact comparison of shape and entries.
  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

  friend DenseTensor operator+(const DenseTensor& a, const DenseTensor& b) {
    require_same_shape(a, b);
    return DenseTensor(a.shape_, a.data_ + b.data_);
  }

  friend DenseTensor operator-(const DenseTensor& a, const DenseTensor& b) {
    require_same_shape(a, b);
    return DenseTensor(a.shape_, a.data_ - b.data_);
  }

 private:
  static void require_same_shape(const DenseTensor& a, const DenseTensor& b) {
    if (a.shape_ != b.shape_) {
      throw Error(ErrorKind::Shape, "shape " + shape_string(a.shape_) + " vs " + shape_string(b.shape_));
    }
  }

  Shape shape_;
  Vector<Scalar> data_;
};

using Tensor = DenseTensor<double>;
using MatrixXr = Matrix<double>;

template <std::floating_point Scalar>
DenseTensor<Scalar> tensor_from_flat(Shape shape, std::span<const Scalar> values) {
  Vector<Scalar> data(static_cast<Index>(values.size()));
  std::copy(values.begin(), values.end(), data.data());
  return DenseTensor<Scalar>(std::move(shape), std::move(data));
}

template <std::floating_point Scalar>
DenseTensor<Scalar> tensor_from_flat(Shape shape, std::initializer_list<Scalar> values) {
  return tensor_from_flat<Scalar>(std::move(shape), std::span<const Scalar>(values.begin(), values.size()));
}

namespace detail {

inline void check_mode(Index mode, Index order) {
  if (mode < 0 || mode >= order) {
    throw Error(ErrorKind::Mode, "mode " + std::to_string(mode) + " out of range for order " + std::to_string(order));
  }
}

// Flat layout viewed around one mode: flat = (outer * I_n + i_n) * inner + j.
struct ModeSplit {
  Index outer;
  Index extent;
  Index inner;
};

inline ModeSplit split_at(const Shape& shape, Index mode) {
  const auto m = static_cast<std::size_t>(mode);
  Index outer = 1, inner = 1;
  for (std::size_t k = 0; k < m; ++k) outer *= shape[k];
  for (std::size_t k = m + 1; k < shape.size(); ++k) inner *= shape[k];
  return {outer, shape[m], inner};
}

}  // namespace detail

/// Mode-n unfolding (0-based mode). Row i holds the entries with i_n = i;
/// columns run lexicographically over the remaining indices.
template <std::floating_point Scalar>
Matrix<Scalar> unfold(const DenseTensor<Scalar>& t, Index mode) {
  detail::check_mode(mode, t.order());
  const auto [outer, extent, inner] = detail::split_at(t.shape(), mode);
  Matrix<Scalar> m(extent, outer * inner);
  const Scalar* src = t.data().data();
  for (Index a = 0; a < outer; ++a)
    for (Index i = 0; i < extent; ++i)
      for (Index b = 0; b < inner; ++b) m(i, a * inner + b) = src[(a * extent + i) * inner + b];
  return m;
}

template <std::floating_point Scalar>
DenseTensor<Scalar> fold(const Matrix<Scalar>& m, Index mode, const Shape& shape) {
  detail::check_mode(mode, static_cast<Index>(shape.size()));
  for (Index e : shape) {
    if (e < 1) throw Error(ErrorKind::Shape, "extents must be positive, got " + shape_string(shape));
  }
  const auto [outer, extent, inner] = detail::split_at(shape, mode);
  if (m.rows() != extent || m.cols() != outer * inner) {
    throw Error(ErrorKind::Shape, "cannot fold " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                      " matrix along mode " + std::to_string(mode) + " into " + shape_string(shape));
  }
  Vector<Scalar> data(num_elements(shape));
  for (Index a = 0; a < outer; ++a)
    for (Index i = 0; i < extent; ++i)
      for (Index b = 0; b < inner; ++b) data[(a * extent + i) * inner + b] = m(i, a * inner + b);
  return DenseTensor<Scalar>(shape, std::move(data));
}

/// t x_n u: every mode-n fiber is multiplied by u. Computed as fold(u * unfold(t, n)).
template <std::floating_point Scalar, typename Derived>
DenseTensor<Scalar> mode_n_product(const DenseTensor<Scalar>& t, const Eigen::MatrixBase<Derived>& u, Index mode) {
  detail::check_mode(mode, t.order());
  if (u.cols() != t.extent(mode)) {
    throw Error(ErrorKind::Dimension, "matrix has " + std::to_string(u.cols()) + " columns, mode " +
                                          std::to_string(mode) + " has extent " + std::to_string(t.extent(mode)));
  }
  Shape shape = t.shape();
  shape[static_cast<std::size_t>(mode)] = u.rows();
  Matrix<Scalar> product = u * unfold(t, mode);
  return fold<Scalar>(product, mode, shape);
}

template <std::floating_point Scalar>
Scalar inner_product(const DenseTensor<Scalar>& a, const DenseTensor<Scalar>& b) {
  if (a.shape() != b.shape()) {
    throw Error(ErrorKind::Shape, "inner product of " + shape_string(a.shape()) + " and " + shape_string(b.shape()));
  }
  return a.data().dot(b.data());
}

template <std::floating_point Scalar>
Scalar frobenius_norm_sq(const DenseTensor<Scalar>& t) {
  return t.data().squaredNorm();
}

/// True when t is cubical and invariant (within tol) under every index
/// permutation. Orders up to 8 are checked against all N! permutations; above
/// that the adjacent transpositions are checked, since they generate S_N.
template <std::floating_point Scalar>
bool is_symmetric(const DenseTensor<Scalar>& t, Scalar tol) {
  const Shape& shape = t.shape();
  if (std::adjacent_find(shape.begin(), shape.end(), std::not_equal_to<>{}) != shape.end()) return false;

  const auto order = static_cast<std::size_t>(t.order());
  std::vector<std::vector<std::size_t>> perms;
  if (order <= 8) {
    std::vector<std::size_t> p(order);
    std::iota(p.begin(), p.end(), std::size_t{0});
    while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
  } else {
    for (std::size_t k = 0; k + 1 < order; ++k) {
      std::vector<std::size_t> p(order);
      std::iota(p.begin(), p.end(), std::size_t{0});
      std::swap(p[k], p[k + 1]);
      perms.push_back(std::move(p));
    }
  }

  std::vector<Index> idx(order), permuted(order);
  for (Index flat = 0; flat < t.size(); ++flat) {
    t.multi_index(flat, idx);
    const Scalar value = t.data()[flat];
    for (const auto& p : perms) {
      for (std::size_t k = 0; k < order; ++k) permuted[k] = idx[p[k]];
      if (std::abs(value - t(std::span<const Index>(permuted))) > tol) return false;
    }
  }
  return true;
}

}  // namespace tucker
