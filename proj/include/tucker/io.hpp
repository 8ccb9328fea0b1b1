#pragma once

#include <optional>
#include <string>

#include "tucker/adversarial.hpp"
#include "tucker/tensor.hpp"
#include "tucker/tucker_model.hpp"
#include "tucker/verification.hpp"

namespace tucker {

/// printf "%.17g": enough digits to round-trip every double.
std::string format_double(double value);

// Writers. All numbers are emitted with 17 significant digits.
std::string tensor_to_json(const Tensor& t);
std::string matrix_to_json(const MatrixXr& m);
std::string decomposition_to_json(const TuckerDecomposition<double>& d);
/// Tensor JSON extended with {"metadata": {"kind","order","epsilon","target_rank"}}.
std::string instance_to_json(const ConstructionInstance& inst);
std::string report_to_json(const RatioReport& report);

struct DecompositionSummary {
  double error_sq;
  double tail_bound;
  std::optional<int> iterations;
};
/// Decomposition JSON with an extra "summary" object.
std::string decomposition_with_summary_to_json(const TuckerDecomposition<double>& d, const DecompositionSummary& s);

struct InstanceMetadata {
  ConstructionKind kind;
  int order;
  double epsilon;
  MultilinearRank target_rank;
};

// Readers. Malformed documents raise ErrorKind::Input.
Tensor parse_tensor(const std::string& text);
MatrixXr parse_matrix(const std::string& text);
TuckerDecomposition<double> parse_decomposition(const std::string& text);
InstanceMetadata parse_instance_metadata(const std::string& text);

/// Whole-file helpers; failures raise ErrorKind::Io.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace tucker
