#include "tucker/verification.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "tucker/error.hpp"
#include "tucker/io.hpp"

namespace tucker {

const char* to_string(Algorithm alg) {
  switch (alg) {
    case Algorithm::hosvd: return "hosvd";
    case Algorithm::st_hosvd: return "st_hosvd";
    case Algorithm::hooi: return "hooi";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "hosvd") return Algorithm::hosvd;
  if (name == "sthosvd" || name == "st_hosvd") return Algorithm::st_hosvd;
  if (name == "hooi") return Algorithm::hooi;
  throw Error(ErrorKind::Parameter, "unknown algorithm '" + name + "'");
}

namespace {

// All k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<Index>> combinations(Index n, Index k) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), Index{0});
  while (true) {
    out.push_back(c);
    Index i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

double binomial(Index n, Index k) {
  double b = 1;
  for (Index i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  return b;
}

}  // namespace

OracleResult axis_aligned_oracle(const Tensor& t, const MultilinearRank& r, double enumeration_limit) {
  r.validate(t.shape());
  const auto order = static_cast<std::size_t>(t.order());
  double count = 1;
  for (std::size_t n = 0; n < order; ++n) count *= binomial(t.shape()[n], r.ranks[n]);
  if (count > enumeration_limit) {
    throw Error(ErrorKind::Size, "axis-aligned search needs " + std::to_string(count) + " candidates, limit is " +
                                     std::to_string(enumeration_limit));
  }

  std::vector<std::vector<std::vector<Index>>> choices(order);
  for (std::size_t n = 0; n < order; ++n) choices[n] = combinations(t.shape()[n], r.ranks[n]);

  // Multi-indices and squared values of the nonzero entries.
  std::vector<std::vector<Index>> support;
  std::vector<double> energy;
  std::vector<Index> idx(order);
  for (Index flat = 0; flat < t.size(); ++flat) {
    const double v = t.data()[flat];
    if (v == 0.0) continue;
    t.multi_index(flat, idx);
    support.push_back(idx);
    energy.push_back(v * v);
  }

  std::vector<std::size_t> pick(order, 0);
  std::vector<std::vector<char>> kept(order);
  OracleResult best{std::numeric_limits<double>::infinity(), {}};
  while (true) {
    for (std::size_t n = 0; n < order; ++n) {
      kept[n].assign(static_cast<std::size_t>(t.shape()[n]), 0);
      for (Index i : choices[n][pick[n]]) kept[n][static_cast<std::size_t>(i)] = 1;
    }
    double outside = 0;
    for (std::size_t e = 0; e < support.size(); ++e) {
      bool inside = true;
      for (std::size_t n = 0; n < order && inside; ++n) inside = kept[n][static_cast<std::size_t>(support[e][n])];
      if (!inside) outside += energy[e];
    }
    if (outside < best.error_sq) {
      best.error_sq = outside;
      best.subsets.clear();
      for (std::size_t n = 0; n < order; ++n) best.subsets.push_back(choices[n][pick[n]]);
    }

    std::size_t n = order;
    while (n > 0) {
      --n;
      if (++pick[n] < choices[n].size()) break;
      pick[n] = 0;
      if (n == 0) return best;
    }
  }
}

TuckerDecomposition<double> selection_decomposition(const Tensor& t, const std::vector<std::vector<Index>>& subsets) {
  if (subsets.size() != static_cast<std::size_t>(t.order())) {
    throw Error(ErrorKind::Shape, "one index subset per mode required");
  }
  std::vector<MatrixXr> factors;
  for (std::size_t n = 0; n < subsets.size(); ++n) {
    const Index extent = t.shape()[n];
    MatrixXr f = MatrixXr::Zero(extent, static_cast<Index>(subsets[n].size()));
    for (std::size_t j = 0; j < subsets[n].size(); ++j) {
      const Index i = subsets[n][j];
      if (i < 0 || i >= extent) throw Error(ErrorKind::Shape, "selected index out of range");
      f(i, static_cast<Index>(j)) = 1.0;
    }
    factors.push_back(std::move(f));
  }
  return decomposition_from_factors(t, std::move(factors));
}

TuckerDecomposition<double> run_algorithm(const Tensor& t, const MultilinearRank& r, Algorithm alg,
                                          const HooiConfig& cfg) {
  switch (alg) {
    case Algorithm::hosvd: return hosvd(t, r);
    case Algorithm::st_hosvd: return st_hosvd(t, r);
    case Algorithm::hooi: return hooi(t, r, cfg).decomposition;
  }
  throw Error(ErrorKind::Parameter, "unknown algorithm");
}

RatioReport ratio_report(const ConstructionInstance& inst, Algorithm alg, const HooiConfig& cfg) {
  const auto d = run_algorithm(inst.tensor, inst.target_rank, alg, cfg);
  const double error_sq = reconstruction_error_sq(inst.tensor, d);
  const double competitor = reconstruction_error_sq(inst.tensor, competitor_decomposition(inst));
  return {alg,
          error_sq,
          competitor,
          error_sq / competitor,
          tail_energy_bound(inst.tensor, inst.target_rank),
          inst.order,
          inst.epsilon};
}

std::string csv_header() { return "algorithm,N,epsilon,error_sq,competitor_error_sq,ratio_lower_bound,tail_bound"; }

std::string to_csv_row(const RatioReport& r) {
  return std::string(to_string(r.algorithm)) + "," + std::to_string(r.order) + "," + format_double(r.epsilon) + "," +
         format_double(r.error_sq) + "," + format_double(r.competitor_error_sq) + "," +
         format_double(r.ratio_lower_bound) + "," + format_double(r.tail_bound);
}

}  // namespace tucker
