#pragma once

#include <optional>
#include <string>

#include "tucker/tensor.hpp"
#include "tucker/tucker_model.hpp"

namespace tucker {

enum class ConstructionKind { simple, advanced };

const char* to_string(ConstructionKind kind);
ConstructionKind construction_kind_from_string(const std::string& name);

/// A symmetric worst-case input together with its named components.
///
/// simple:   3^N tensor, top + bottom, target rank (2,...,2)
/// advanced: 4^N tensor, top + bottom + middle, target rank (3,...,3)
struct ConstructionInstance {
  ConstructionKind kind;
  int order;
  double epsilon;
  Tensor tensor;
  Tensor top;
  Tensor bottom;
  std::optional<Tensor> middle;
  MultilinearRank target_rank;
};

/// Top entry sqrt(1+eps) at (1,...,1); bottom entries 1 at every index with
/// one 2 and all other positions 3 (1-based). Requires order >= 2, eps > 0.
ConstructionInstance simple_construction(int order, double eps);

/// Top entry sqrt(1+eps) at (1,...,1); bottom entries 1 at indices with one 4
/// and the rest 3; middle entries sqrt(1+eps) at indices with one 3 and the
/// rest 2 (1-based). Requires order >= 3, eps > 0.
ConstructionInstance advanced_construction(int order, double eps);

ConstructionInstance make_construction(ConstructionKind kind, int order, double eps);

/// The axis-aligned decomposition that drops only the top entry: every factor
/// selects e_2, e_3 (simple) or e_2, e_3, e_4 (advanced), with the optimal core.
TuckerDecomposition<double> competitor_decomposition(const ConstructionInstance& inst);

}  // namespace tucker
