#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "tucker/error.hpp"
#include "tucker/spectra.hpp"
#include "tucker/tensor.hpp"
#include "tucker/tucker_model.hpp"

namespace tucker {

/// Called with (step, mode, gram) each time a factor is chosen from the Gram
/// matrix of an unfolding. `step` counts from 0 within one call.
template <std::floating_point Scalar>
using GramObserver = std::function<void(Index step, Index mode, const Matrix<Scalar>& gram)>;

enum class HooiInit { hosvd, st_hosvd };

struct HooiConfig {
  int max_iterations = 100;
  double tolerance = 1e-12;  // on |e_k - e_{k+1}| / max(1, e_k)
  HooiInit init = HooiInit::hosvd;
};

template <std::floating_point Scalar>
struct HooiTrace {
  TuckerDecomposition<Scalar> decomposition;  // best iterate seen, ties going to the earlier one
  Scalar error_sq = 0;                         // of `decomposition`
  std::vector<Scalar> errors_sq;               // [0] is the initialization
  int iterations_run = 0;
  bool converged = false;
  // factor_history[k] holds the factors after k outer iterations; [0] is the initialization.
  std::vector<std::vector<Matrix<Scalar>>> factor_history;
};

namespace detail {

template <std::floating_point Scalar>
Matrix<Scalar> leading_factor(const Matrix<Scalar>& unfolding, Index rank, Index step, Index mode,
                              const GramObserver<Scalar>& observer) {
  if (rank < 1 || rank > unfolding.rows()) {
    throw Error(ErrorKind::Rank, "rank " + std::to_string(rank) + " out of range in mode " + std::to_string(mode));
  }
  const Matrix<Scalar> gram = gram_left(unfolding);
  if (observer) observer(step, mode, gram);
  return symmetric_eig_desc(gram).vectors.leftCols(rank);
}

}  // namespace detail

/// HOSVD: factor n holds the R_n leading left singular vectors of the mode-n
/// unfolding of t, each mode independently.
template <std::floating_point Scalar>
TuckerDecomposition<Scalar> hosvd(const DenseTensor<Scalar>& t, const MultilinearRank& r,
                                  const GramObserver<Scalar>& observer = {}) {
  r.validate(t.shape());
  std::vector<Matrix<Scalar>> factors;
  factors.reserve(static_cast<std::size_t>(t.order()));
  for (Index n = 0; n < t.order(); ++n) {
    factors.push_back(detail::leading_factor(unfold(t, n), r[n], n, n, observer));
  }
  return decomposition_from_factors(t, std::move(factors));
}

/// Identity mode order (0, 1, ..., N-1).
inline std::vector<Index> natural_order(Index order) {
  std::vector<Index> p(static_cast<std::size_t>(order));
  std::iota(p.begin(), p.end(), Index{0});
  return p;
}

/// Sequentially truncated HOSVD. Modes are visited in `order`; each factor
/// comes from the unfolding of the tensor already projected onto the factors
/// chosen before it.
template <std::floating_point Scalar>
TuckerDecomposition<Scalar> st_hosvd(const DenseTensor<Scalar>& t, const MultilinearRank& r,
                                     const std::vector<Index>& order, const GramObserver<Scalar>& observer = {}) {
  r.validate(t.shape());
  std::vector<Index> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != natural_order(t.order())) throw Error(ErrorKind::Order, "mode order is not a permutation");

  std::vector<Matrix<Scalar>> factors(static_cast<std::size_t>(t.order()));
  DenseTensor<Scalar> current = t;
  Index step = 0;
  for (Index mode : order) {
    auto& factor = factors[static_cast<std::size_t>(mode)];
    factor = detail::leading_factor(unfold(current, mode), r[mode], step++, mode, observer);
    current = mode_n_product(current, factor.transpose(), mode);
  }
  return decomposition_from_factors(t, std::move(factors));
}

template <std::floating_point Scalar>
TuckerDecomposition<Scalar> st_hosvd(const DenseTensor<Scalar>& t, const MultilinearRank& r) {
  return st_hosvd(t, r, natural_order(t.order()));
}

/// Higher-order orthogonal iteration. Each inner step contracts every mode but
/// n with the current factors' transposes and refits factor n from the
/// resulting unfolding. Stops when the relative change of the error drops to
/// the tolerance or after max_iterations outer sweeps. The returned
/// decomposition is the best iterate, so it is never worse than the start.
template <std::floating_point Scalar>
HooiTrace<Scalar> hooi(const DenseTensor<Scalar>& t, const MultilinearRank& r, const HooiConfig& cfg = {},
                       const GramObserver<Scalar>& observer = {}) {
  r.validate(t.shape());
  if (cfg.max_iterations < 1) throw Error(ErrorKind::Parameter, "max_iterations must be at least 1");
  if (!(cfg.tolerance >= 0)) throw Error(ErrorKind::Parameter, "tolerance must be nonnegative");

  TuckerDecomposition<Scalar> init = cfg.init == HooiInit::hosvd ? hosvd(t, r) : st_hosvd(t, r);
  std::vector<Matrix<Scalar>> factors = init.factors();

  const Scalar init_error = reconstruction_error_sq(t, init);
  HooiTrace<Scalar> trace{init, init_error, {init_error}, 0, false, {factors}};
  const Index order = t.order();
  Index step = 0;
  while (trace.iterations_run < cfg.max_iterations) {
    for (Index n = 0; n < order; ++n) {
      DenseTensor<Scalar> b = t;
      for (Index m = 0; m < order; ++m) {
        if (m != n) b = mode_n_product(b, factors[static_cast<std::size_t>(m)].transpose(), m);
      }
      factors[static_cast<std::size_t>(n)] = detail::leading_factor(unfold(b, n), r[n], step++, n, observer);
    }
    ++trace.iterations_run;
    TuckerDecomposition<Scalar> d = decomposition_from_factors(t, factors);
    trace.factor_history.push_back(factors);

    const Scalar previous = trace.errors_sq.back();
    const Scalar current = reconstruction_error_sq(t, d);
    trace.errors_sq.push_back(current);
    if (current < trace.error_sq) {
      trace.decomposition = std::move(d);
      trace.error_sq = current;
    }
    if (std::abs(previous - current) <= Scalar(cfg.tolerance) * std::max(Scalar(1), previous)) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

}  // namespace tucker
