#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "tucker/error.hpp"
#include "tucker/tensor.hpp"

namespace tucker {

/// Eigenpairs of a symmetric matrix, largest eigenvalue first. For a Gram
/// matrix X X^T the values are the squared singular values of X and the
/// columns of `vectors` its left singular vectors.
template <std::floating_point Scalar>
struct SpectralResult {
  Vector<Scalar> values;
  Matrix<Scalar> vectors;
};

struct JacobiOptions {
  double off_tolerance = 1e-14;  // relative to the Frobenius norm of the input
  int max_sweeps = 100;
  double tie_tolerance = 1e-10;  // relative to max(1, largest eigenvalue)
  double symmetry_tolerance = 1e-12;
};

/// m m^T, symmetrized as (S + S^T) / 2.
template <typename Derived>
Matrix<typename Derived::Scalar> gram_left(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> s = m * m.transpose();
  return (s + s.transpose()) * Scalar(0.5);
}

namespace detail {

// Index of the largest-magnitude entry, first one on ties.
template <typename Derived>
Index leading_index(const Eigen::MatrixBase<Derived>& v) {
  Index lead = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
  }
  return lead;
}

template <std::floating_point Scalar>
Scalar off_diagonal_norm(const Matrix<Scalar>& a) {
  Scalar sum = 0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Applies the rotation in the (p, q) plane that annihilates a(p, q), accumulating it into v.
template <std::floating_point Scalar>
void jacobi_rotate(Matrix<Scalar>& a, Matrix<Scalar>& v, Index p, Index q) {
  const Scalar apq = a(p, q);
  const Scalar tau = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
  const Scalar t = (tau >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(tau) + std::sqrt(Scalar(1) + tau * tau));
  const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
  const Scalar s = t * c;

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Scalar akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Index k = 0; k < n; ++k) {
    const Scalar apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0;
  a(q, p) = 0;
  for (Index k = 0; k < n; ++k) {
    const Scalar vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition with a fixed (p, q) sweep order, so equal
/// inputs always give bit-equal outputs.
///
/// Eigenpairs come out sorted by eigenvalue, largest first. Eigenvalues within
/// the tie tolerance of each other are ordered by the row index of their
/// eigenvector's largest-magnitude entry (smaller first), and every
/// eigenvector is signed so that this entry is positive.
template <std::floating_point Scalar>
SpectralResult<Scalar> symmetric_eig_desc(const Matrix<Scalar>& s, const JacobiOptions& opts = {}) {
  if (s.rows() != s.cols()) {
    throw Error(ErrorKind::Input, "matrix is " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                                      ", expected square");
  }
  if (!s.allFinite()) throw Error(ErrorKind::Input, "matrix has non-finite entries");
  const Index n = s.rows();
  const Scalar scale = std::max(Scalar(1), s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > Scalar(opts.symmetry_tolerance) * scale) {
    throw Error(ErrorKind::Input, "matrix is not symmetric");
  }

  Matrix<Scalar> a = (s + s.transpose()) * Scalar(0.5);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar threshold = Scalar(opts.off_tolerance) * a.norm();

  int sweep = 0;
  while (detail::off_diagonal_norm(a) > threshold) {
    if (sweep == opts.max_sweeps) {
      throw Error(ErrorKind::Convergence, "Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (Index p = 0; p + 1 < n; ++p)
      for (Index q = p + 1; q < n; ++q)
        if (a(p, q) != Scalar(0)) detail::jacobi_rotate(a, v, p, q);
    ++sweep;
  }

  std::vector<Index> lead(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    Index l = detail::leading_index(v.col(j));
    if (v(l, j) < 0) v.col(j) = -v.col(j);
    lead[static_cast<std::size_t>(j)] = l;
  }

  const Vector<Scalar> diag = a.diagonal();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::stable_sort(perm.begin(), perm.end(), [&](Index i, Index j) { return diag[i] > diag[j]; });

  if (n > 0) {
    const Scalar tie = Scalar(opts.tie_tolerance) * std::max(Scalar(1), diag[perm.front()]);
    for (std::size_t begin = 0; begin < perm.size();) {
      std::size_t end = begin + 1;
      while (end < perm.size() && diag[perm[begin]] - diag[perm[end]] <= tie) ++end;
      std::stable_sort(perm.begin() + static_cast<std::ptrdiff_t>(begin), perm.begin() + static_cast<std::ptrdiff_t>(end),
                       [&](Index i, Index j) { return lead[static_cast<std::size_t>(i)] < lead[static_cast<std::size_t>(j)]; });
      begin = end;
    }
  }

  SpectralResult<Scalar> out{Vector<Scalar>(n), Matrix<Scalar>(n, n)};
  for (Index k = 0; k < n; ++k) {
    const Index j = perm[static_cast<std::size_t>(k)];
    out.values[k] = diag[j];
    out.vectors.col(k) = v.col(j);
  }
  return out;
}

/// The k leading left singular vectors of m, taken from the eigendecomposition
/// of its Gram matrix.
template <std::floating_point Scalar>
Matrix<Scalar> top_left_singular_vectors(const Matrix<Scalar>& m, Index k) {
  if (k < 1 || k > m.rows()) {
    throw Error(ErrorKind::Rank, "requested " + std::to_string(k) + " singular vectors of a matrix with " +
                                     std::to_string(m.rows()) + " rows");
  }
  return symmetric_eig_desc(gram_left(m)).vectors.leftCols(k);
}

}  // namespace tucker
