#pragma once

#include <string>
#include <vector>

#include "tucker/adversarial.hpp"
#include "tucker/algorithms.hpp"
#include "tucker/spectra.hpp"
#include "tucker/tensor.hpp"
#include "tucker/tucker_model.hpp"

namespace tucker {

enum class Algorithm { hosvd, st_hosvd, hooi };

const char* to_string(Algorithm alg);
/// Accepts "hosvd", "sthosvd", "st_hosvd" and "hooi".
Algorithm algorithm_from_string(const std::string& name);

/// Sum over modes of the squared singular values of the mode-n unfolding that
/// a rank-r truncation discards. Upper-bounds the HOSVD error.
template <std::floating_point Scalar>
Scalar tail_energy_bound(const DenseTensor<Scalar>& t, const MultilinearRank& r) {
  r.validate(t.shape());
  Scalar total = 0;
  for (Index n = 0; n < t.order(); ++n) {
    const auto spectrum = symmetric_eig_desc(gram_left(unfold(t, n)));
    for (Index i = r[n]; i < spectrum.values.size(); ++i) total += std::max(Scalar(0), spectrum.values[i]);
  }
  return total;
}

struct OracleResult {
  double error_sq;
  std::vector<std::vector<Index>> subsets;  // 0-based kept indices per mode
};

inline constexpr double kOracleEnumerationLimit = 1e7;

/// Exhaustive search over decompositions whose factors select R_n standard
/// basis vectors per mode. The error of a selection is the energy outside the
/// kept subtensor. The first minimizer in lexicographic tuple order wins.
OracleResult axis_aligned_oracle(const Tensor& t, const MultilinearRank& r,
                                 double enumeration_limit = kOracleEnumerationLimit);

/// Decomposition whose factor n is the columns of the identity listed in subsets[n].
TuckerDecomposition<double> selection_decomposition(const Tensor& t, const std::vector<std::vector<Index>>& subsets);

struct RatioReport {
  Algorithm algorithm;
  double error_sq;
  double competitor_error_sq;  // achieved objective, so an upper bound on the optimum
  double ratio_lower_bound;    // error_sq / competitor_error_sq
  double tail_bound;
  int order;
  double epsilon;
};

RatioReport ratio_report(const ConstructionInstance& inst, Algorithm alg, const HooiConfig& cfg = {});

/// Runs one algorithm with its default options.
TuckerDecomposition<double> run_algorithm(const Tensor& t, const MultilinearRank& r, Algorithm alg,
                                          const HooiConfig& cfg = {});

std::string csv_header();
std::string to_csv_row(const RatioReport& report);

}  // namespace tucker
