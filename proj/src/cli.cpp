#include "tucker/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tucker/adversarial.hpp"
#include "tucker/algorithms.hpp"
#include "tucker/error.hpp"
#include "tucker/io.hpp"
#include "tucker/verification.hpp"

namespace tucker::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

long parse_integer(const std::string& s, const std::string& what) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Parameter, "invalid " + what + " '" + s + "'");
  }
  return value;
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parameter, "invalid " + what + " '" + s + "'");
  }
}

std::string rounded(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

HooiInit parse_init(const std::string& s) {
  if (s == "hosvd") return HooiInit::hosvd;
  if (s == "sthosvd" || s == "st_hosvd") return HooiInit::st_hosvd;
  throw Error(ErrorKind::Parameter, "unknown init '" + s + "'");
}

struct GenArgs {
  std::string kind, out;
  int order = 0;
  double eps = 0;
};

struct DecomposeArgs {
  std::string alg, rank, tensor, out, mode_order, init = "hosvd";
  int max_iter = 100;
  double tol = 1e-12;
};

struct VerifyArgs {
  std::string instance, alg, out, init = "hosvd";
};

struct SweepArgs {
  std::string kind, alg, orders, eps, csv;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto inst = make_construction(construction_kind_from_string(a.kind), a.order, a.eps);
  write_file(a.out, instance_to_json(inst));
  out << "wrote " << to_string(inst.kind) << " construction N=" << inst.order << " eps=" << rounded(inst.epsilon)
      << " to " << a.out << "\n";
  return kExitOk;
}

int cmd_decompose(const DecomposeArgs& a, std::ostream& out) {
  const Algorithm alg = algorithm_from_string(a.alg);
  const MultilinearRank rank = parse_rank(a.rank);
  HooiConfig cfg;
  cfg.init = parse_init(a.init);
  cfg.max_iterations = a.max_iter;
  cfg.tolerance = a.tol;
  if (cfg.max_iterations < 1) throw Error(ErrorKind::Parameter, "--max-iter must be at least 1");
  if (!(cfg.tolerance >= 0)) throw Error(ErrorKind::Parameter, "--tol must be nonnegative");

  const Tensor t = parse_tensor(read_file(a.tensor));
  rank.validate(t.shape());

  std::optional<int> iterations;
  std::optional<TuckerDecomposition<double>> d;
  switch (alg) {
    case Algorithm::hosvd: d = hosvd(t, rank); break;
    case Algorithm::st_hosvd:
      d = st_hosvd(t, rank, a.mode_order.empty() ? natural_order(t.order()) : parse_mode_order(a.mode_order));
      break;
    case Algorithm::hooi: {
      auto trace = hooi(t, rank, cfg);
      iterations = trace.iterations_run;
      d = std::move(trace.decomposition);
      break;
    }
  }
  const DecompositionSummary summary{reconstruction_error_sq(t, *d), tail_energy_bound(t, rank), iterations};
  write_file(a.out, decomposition_with_summary_to_json(*d, summary));
  out << to_string(alg) << ": error_sq=" << rounded(summary.error_sq) << " tail_bound=" << rounded(summary.tail_bound);
  if (iterations) out << " iterations=" << *iterations;
  out << "\n";
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Algorithm alg = algorithm_from_string(a.alg);
  HooiConfig cfg;
  cfg.init = parse_init(a.init);
  const std::string text = read_file(a.instance);
  const InstanceMetadata meta = parse_instance_metadata(text);
  const Tensor stored = parse_tensor(text);
  const auto inst = make_construction(meta.kind, meta.order, meta.epsilon);
  if (!(inst.tensor == stored) || !(inst.target_rank == meta.target_rank)) {
    throw Error(ErrorKind::Input, "instance tensor does not match its metadata");
  }
  const RatioReport report = ratio_report(inst, alg, cfg);
  write_file(a.out, report_to_json(report));
  out << to_string(alg) << " on " << to_string(inst.kind) << " N=" << inst.order << " eps=" << rounded(inst.epsilon)
      << ": error_sq=" << rounded(report.error_sq) << " competitor=" << rounded(report.competitor_error_sq)
      << " ratio>=" << rounded(report.ratio_lower_bound) << "\n";
  return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const ConstructionKind kind = construction_kind_from_string(a.kind);
  const Algorithm alg = algorithm_from_string(a.alg);
  const auto [lo, hi] = parse_order_range(a.orders);
  const std::vector<double> eps = parse_epsilon_list(a.eps);

  // Validate every cell before computing any.
  for (int n = lo; n <= hi; ++n)
    for (double e : eps) (void)make_construction(kind, n, e);

  std::string csv = csv_header() + "\n";
  for (int n = lo; n <= hi; ++n) {
    for (double e : eps) {
      const RatioReport r = ratio_report(make_construction(kind, n, e), alg);
      csv += to_csv_row(r) + "\n";
      out << "N=" << n << " eps=" << rounded(e) << " ratio>=" << rounded(r.ratio_lower_bound) << "\n";
    }
  }
  write_file(a.csv, csv);
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::Convergence: return kExitFailure;
    default: return kExitUsage;
  }
}

}  // namespace

MultilinearRank parse_rank(const std::string& text) {
  MultilinearRank r;
  for (const auto& part : split(text, ',')) {
    const long v = parse_integer(part, "rank entry");
    if (v < 1) throw Error(ErrorKind::Parameter, "rank entries must be positive");
    r.ranks.push_back(v);
  }
  if (r.ranks.empty()) throw Error(ErrorKind::Parameter, "empty rank");
  return r;
}

std::vector<Index> parse_mode_order(const std::string& text) {
  std::vector<Index> order;
  for (const auto& part : split(text, ',')) order.push_back(parse_integer(part, "mode") - 1);
  return order;
}

std::pair<int, int> parse_order_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const long n = parse_integer(text, "order range");
    return {static_cast<int>(n), static_cast<int>(n)};
  }
  const long lo = parse_integer(text.substr(0, dots), "order range");
  const long hi = parse_integer(text.substr(dots + 2), "order range");
  if (lo > hi) throw Error(ErrorKind::Parameter, "empty order range '" + text + "'");
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

std::vector<double> parse_epsilon_list(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::Parameter, "empty epsilon list");
  std::vector<double> eps;
  for (const auto& part : split(text, ',')) eps.push_back(parse_real(part, "epsilon"));
  std::sort(eps.begin(), eps.end());
  return eps;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tucker decompositions and worst-case approximation ratios", "tucker"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a simple or advanced construction");
  gen_cmd->add_option("--kind", gen.kind, "simple|advanced")->required();
  gen_cmd->add_option("--order", gen.order, "Tensor order N")->required();
  gen_cmd->add_option("--eps", gen.eps, "Epsilon > 0")->required();
  gen_cmd->add_option("--out", gen.out, "Output instance JSON")->required();

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "Run HOSVD, ST-HOSVD or HOOI on a tensor file");
  dec_cmd->add_option("--alg", dec.alg, "hosvd|sthosvd|hooi")->required();
  dec_cmd->add_option("--rank", dec.rank, "R1,...,RN")->required();
  dec_cmd->add_option("--tensor", dec.tensor, "Input tensor JSON")->required();
  dec_cmd->add_option("--out", dec.out, "Output decomposition JSON")->required();
  dec_cmd->add_option("--order", dec.mode_order, "ST-HOSVD mode order p1,...,pN (1-based)");
  dec_cmd->add_option("--init", dec.init, "HOOI initialization: hosvd|sthosvd");
  dec_cmd->add_option("--max-iter", dec.max_iter, "HOOI iteration cap");
  dec_cmd->add_option("--tol", dec.tol, "HOOI relative tolerance");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Ratio report for a generated instance");
  ver_cmd->add_option("--instance", ver.instance, "Instance JSON from gen")->required();
  ver_cmd->add_option("--alg", ver.alg, "hosvd|sthosvd|hooi")->required();
  ver_cmd->add_option("--out", ver.out, "Output report JSON")->required();
  ver_cmd->add_option("--init", ver.init, "HOOI initialization: hosvd|sthosvd");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Tabulate ratio reports over N and epsilon");
  sw_cmd->add_option("--kind", sw.kind, "simple|advanced")->required();
  sw_cmd->add_option("--alg", sw.alg, "hosvd|sthosvd|hooi")->required();
  sw_cmd->add_option("--orders", sw.orders, "lo..hi")->required();
  sw_cmd->add_option("--eps", sw.eps, "e1,e2,...")->required();
  sw_cmd->add_option("--csv", sw.csv, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "tucker: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*dec_cmd) return cmd_decompose(dec, out);
    if (*ver_cmd) return cmd_verify(ver, out);
    return cmd_sweep(sw, out);
  } catch (const Error& e) {
    err << "tucker: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "tucker: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace tucker::cli
