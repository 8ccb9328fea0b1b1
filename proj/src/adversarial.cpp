#include "tucker/adversarial.hpp"

#include <cmath>
#include <vector>

#include "tucker/error.hpp"

namespace tucker {

const char* to_string(ConstructionKind kind) {
  return kind == ConstructionKind::simple ? "simple" : "advanced";
}

ConstructionKind construction_kind_from_string(const std::string& name) {
  if (name == "simple") return ConstructionKind::simple;
  if (name == "advanced") return ConstructionKind::advanced;
  throw Error(ErrorKind::Parameter, "unknown construction kind '" + name + "'");
}

namespace {

void check_parameters(int order, int min_order, double eps) {
  if (order < min_order) {
    throw Error(ErrorKind::Parameter, "order must be at least " + std::to_string(min_order) + ", got " +
                                          std::to_string(order));
  }
  if (!(eps > 0) || !std::isfinite(eps)) throw Error(ErrorKind::Parameter, "epsilon must be positive and finite");
}

Shape cube(int order, Index extent) { return Shape(static_cast<std::size_t>(order), extent); }

// Tensor whose only nonzeros sit at the N indices that equal `odd` in exactly
// one position and `fill` everywhere else (0-based values).
Tensor one_off_diagonal(int order, Index extent, Index odd, Index fill, double value) {
  const Shape shape = cube(order, extent);
  Vector<double> data = Vector<double>::Zero(num_elements(shape));
  Tensor probe = Tensor::zeros(shape);
  std::vector<Index> idx(static_cast<std::size_t>(order), fill);
  for (int k = 0; k < order; ++k) {
    idx[static_cast<std::size_t>(k)] = odd;
    data[probe.flat_index(idx)] = value;
    idx[static_cast<std::size_t>(k)] = fill;
  }
  return Tensor(shape, std::move(data));
}

Tensor corner(int order, Index extent, double value) {
  const Shape shape = cube(order, extent);
  Vector<double> data = Vector<double>::Zero(num_elements(shape));
  data[0] = value;
  return Tensor(shape, std::move(data));
}

}  // namespace

ConstructionInstance simple_construction(int order, double eps) {
  check_parameters(order, 2, eps);
  const double top_value = std::sqrt(1.0 + eps);
  Tensor top = corner(order, 3, top_value);
  Tensor bottom = one_off_diagonal(order, 3, 1, 2, 1.0);
  Tensor tensor = top + bottom;
  return {ConstructionKind::simple, order,        eps, std::move(tensor), std::move(top), std::move(bottom),
          std::nullopt,             MultilinearRank::uniform(order, 2)};
}

ConstructionInstance advanced_construction(int order, double eps) {
  check_parameters(order, 3, eps);
  const double top_value = std::sqrt(1.0 + eps);
  Tensor top = corner(order, 4, top_value);
  Tensor bottom = one_off_diagonal(order, 4, 3, 2, 1.0);
  Tensor middle = one_off_diagonal(order, 4, 2, 1, top_value);
  Tensor tensor = top + bottom + middle;
  return {ConstructionKind::advanced, order,          eps, std::move(tensor), std::move(top), std::move(bottom),
          std::move(middle),          MultilinearRank::uniform(order, 3)};
}

ConstructionInstance make_construction(ConstructionKind kind, int order, double eps) {
  return kind == ConstructionKind::simple ? simple_construction(order, eps) : advanced_construction(order, eps);
}

TuckerDecomposition<double> competitor_decomposition(const ConstructionInstance& inst) {
  const Index extent = inst.kind == ConstructionKind::simple ? 3 : 4;
  // Selects e_2, ..., e_extent.
  MatrixXr factor = MatrixXr::Zero(extent, extent - 1);
  for (Index j = 0; j + 1 < extent; ++j) factor(j + 1, j) = 1.0;
  std::vector<MatrixXr> factors(static_cast<std::size_t>(inst.order), factor);
  return decomposition_from_factors(inst.tensor, std::move(factors));
}

}  // namespace tucker
