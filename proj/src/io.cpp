#include "tucker/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tucker/error.hpp"

namespace tucker {

using nlohmann::json;

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

template <typename Range, typename Fn>
std::string json_array(const Range& values, Fn&& render) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ",";
    out += render(v);
    first = false;
  }
  return out + "]";
}

std::string index_array(const std::vector<Index>& values) {
  return json_array(values, [](Index v) { return std::to_string(v); });
}

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string tensor_body(const Tensor& t) {
  const auto& d = t.data();
  return "\"shape\":" + index_array(t.shape()) + ",\"data\":" +
         json_array(std::vector<double>(d.data(), d.data() + d.size()), format_double);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, std::string("malformed JSON: ") + e.what());
  }
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorKind::Input, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

std::vector<double> numbers(const json& arr, const char* what) {
  if (!arr.is_array()) throw Error(ErrorKind::Input, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw Error(ErrorKind::Input, std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<Index> integers(const json& arr, const char* what) {
  if (!arr.is_array()) throw Error(ErrorKind::Input, std::string(what) + " must be an array");
  std::vector<Index> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw Error(ErrorKind::Input, std::string(what) + " must hold integers");
    out.push_back(v.get<Index>());
  }
  return out;
}

Tensor tensor_from(const json& obj) {
  const Shape shape = integers(member(obj, "shape"), "shape");
  const std::vector<double> data = numbers(member(obj, "data"), "data");
  try {
    return tensor_from_flat<double>(shape, std::span<const double>(data));
  } catch (const Error& e) {
    throw Error(ErrorKind::Input, e.what());
  }
}

MatrixXr matrix_from(const json& obj) {
  const json& rows_j = member(obj, "rows");
  const json& cols_j = member(obj, "cols");
  if (!rows_j.is_number_integer() || !cols_j.is_number_integer()) {
    throw Error(ErrorKind::Input, "rows and cols must be integers");
  }
  const auto rows = rows_j.get<Index>(), cols = cols_j.get<Index>();
  const std::vector<double> data = numbers(member(obj, "data"), "data");
  if (rows < 1 || cols < 1 || static_cast<Index>(data.size()) != rows * cols) {
    throw Error(ErrorKind::Input, "matrix data does not match its dimensions");
  }
  MatrixXr m(rows, cols);
  std::copy(data.begin(), data.end(), m.data());
  if (!m.allFinite()) throw Error(ErrorKind::Input, "matrix entries must be finite");
  return m;
}

}  // namespace

std::string tensor_to_json(const Tensor& t) { return "{" + tensor_body(t) + "}\n"; }

std::string matrix_to_json(const MatrixXr& m) {
  std::vector<double> data(m.data(), m.data() + m.size());
  return "{\"rows\":" + std::to_string(m.rows()) + ",\"cols\":" + std::to_string(m.cols()) +
         ",\"data\":" + json_array(data, format_double) + "}";
}

namespace {

std::string decomposition_body(const TuckerDecomposition<double>& d) {
  std::string out = "\"core\":{" + tensor_body(d.core()) + "},\"factors\":[";
  for (Index n = 0; n < d.order(); ++n) {
    if (n) out += ",";
    out += matrix_to_json(d.factor(n));
  }
  return out + "]";
}

}  // namespace

std::string decomposition_to_json(const TuckerDecomposition<double>& d) { return "{" + decomposition_body(d) + "}\n"; }

std::string decomposition_with_summary_to_json(const TuckerDecomposition<double>& d, const DecompositionSummary& s) {
  std::string summary = "{\"error_sq\":" + format_double(s.error_sq) + ",\"tail_bound\":" + format_double(s.tail_bound);
  if (s.iterations) summary += ",\"iterations\":" + std::to_string(*s.iterations);
  summary += "}";
  return "{" + decomposition_body(d) + ",\"summary\":" + summary + "}\n";
}

std::string instance_to_json(const ConstructionInstance& inst) {
  return "{" + tensor_body(inst.tensor) + ",\"metadata\":{\"kind\":" + quoted(to_string(inst.kind)) +
         ",\"order\":" + std::to_string(inst.order) + ",\"epsilon\":" + format_double(inst.epsilon) +
         ",\"target_rank\":" + index_array(inst.target_rank.ranks) + "}}\n";
}

std::string report_to_json(const RatioReport& r) {
  return "{\"algorithm\":" + quoted(to_string(r.algorithm)) + ",\"N\":" + std::to_string(r.order) +
         ",\"epsilon\":" + format_double(r.epsilon) + ",\"error_sq\":" + format_double(r.error_sq) +
         ",\"competitor_error_sq\":" + format_double(r.competitor_error_sq) +
         ",\"ratio_lower_bound\":" + format_double(r.ratio_lower_bound) +
         ",\"tail_bound\":" + format_double(r.tail_bound) + "}\n";
}

Tensor parse_tensor(const std::string& text) { return tensor_from(parse_json(text)); }

MatrixXr parse_matrix(const std::string& text) { return matrix_from(parse_json(text)); }

TuckerDecomposition<double> parse_decomposition(const std::string& text) {
  const json doc = parse_json(text);
  Tensor core = tensor_from(member(doc, "core"));
  const json& factors_j = member(doc, "factors");
  if (!factors_j.is_array()) throw Error(ErrorKind::Input, "factors must be an array");
  std::vector<MatrixXr> factors;
  for (const auto& f : factors_j) factors.push_back(matrix_from(f));
  try {
    return TuckerDecomposition<double>(std::move(core), std::move(factors));
  } catch (const Error& e) {
    throw Error(ErrorKind::Input, e.what());
  }
}

InstanceMetadata parse_instance_metadata(const std::string& text) {
  const json doc = parse_json(text);
  const json& meta = member(doc, "metadata");
  const json& kind = member(meta, "kind");
  const json& order = member(meta, "order");
  const json& eps = member(meta, "epsilon");
  if (!kind.is_string() || !order.is_number_integer() || !eps.is_number()) {
    throw Error(ErrorKind::Input, "malformed instance metadata");
  }
  InstanceMetadata out{ConstructionKind::simple, order.get<int>(), eps.get<double>(),
                       {integers(member(meta, "target_rank"), "target_rank")}};
  try {
    out.kind = construction_kind_from_string(kind.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorKind::Input, e.what());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "failed reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

}  // namespace tucker
