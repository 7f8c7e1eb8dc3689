// pisier-lab: batch runner for the cube Fourier, linear proxy, Pisier audit
// and lower-bound verifications.
//
// Exit codes: 0 all asserted bounds hold, 1 a bound is violated,
// 2 usage or precondition error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pisier_lab/pisier_lab.hpp"

namespace {

using nlohmann::json;
using namespace pisier_lab;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot open output file " + path);
  os << text;
}

/// Appends rows, writing the header first when the file is new or empty.
void append_csv(const std::string& path, const std::string& header,
                const std::vector<std::string>& rows) {
  if (path.empty() || path == "-") {
    std::cout << header << '\n';
    for (const auto& r : rows) std::cout << r << '\n';
    return;
  }
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream os(path, std::ios::app);
  if (!os) throw UsageError("cannot open csv file " + path);
  if (fresh) os << header << '\n';
  for (const auto& r : rows) os << r << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_odd_ell(int ell) {
  if (ell < 1 || ell > kMaxProxyEll || ell % 2 == 0)
    throw UsageError("--ell must be odd in 1.." + std::to_string(kMaxProxyEll));
}

Norm parse_norm(const std::string& name, double p) {
  if (name == "l1") return Norm::l1();
  if (name == "l2") return Norm::l2();
  if (name == "linf") return Norm::linf();
  if (name == "lp") return Norm::lp(p);
  throw UsageError("unknown norm " + name);
}

WitnessVariant parse_variant(const std::string& name) {
  if (name == "truncated") return WitnessVariant::kTruncated;
  if (name == "chebyshev") return WitnessVariant::kChebyshev;
  throw UsageError("unknown variant " + name);
}

// ---------------------------------------------------------------- proxy-check

struct ProxyOptions {
  int ell = 1;
  int n = 1;
  std::string out = "-";
};

json run_proxy(int ell, int n) {
  require_odd_ell(ell);
  if (n < 1 || n > kMaxDimension) throw UsageError("--n must be in 1..24");
  return proxy_check(ProxyKernel(ell), n);
}

int cmd_proxy_check(const ProxyOptions& o) {
  const json report = run_proxy(o.ell, o.n);
  write_text(o.out, dump(report));
  for (const auto& v : report["violations"]) std::cerr << "violation: " << v.get<std::string>() << '\n';
  return report["violations"].empty() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------- audit

struct AuditOptions {
  int n = 8;
  std::size_t m = 4;
  std::optional<int> ell;
  std::string norm = "linf";
  double p = 2.0;
  std::uint64_t seed = 0;
  int samples = kDefaultValidationSamples;
  std::string out = "-";
  std::string csv;
};

PisierAudit run_audit(const AuditOptions& o) {
  if (o.n < 1 || o.n > kMaxAuditDimension) throw UsageError("--n must be in 1..16");
  if (o.m < 1) throw UsageError("--m must be at least 1");
  if (o.ell) require_odd_ell(*o.ell);
  const Norm norm = parse_norm(o.norm, o.p);
  const auto f = random_vector_function(o.n, o.m, o.seed);
  return decomposition_audit(f, norm, SandwichTransform::for_norm(norm, o.m), o.ell, o.samples);
}

int cmd_audit(const AuditOptions& o) {
  const auto audit = run_audit(o);
  json j = to_json(audit);
  j["seed"] = o.seed;
  write_text(o.out, dump(j));
  if (!o.csv.empty()) append_csv(o.csv, audit_csv_header(), {audit_csv_row(audit)});
  for (const auto& c : audit.checks)
    if (!c.holds) std::cerr << "violation: " << c.name << '\n';
  return audit.all_hold() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- lower-bound

struct LowerBoundOptions {
  int n = 4;
  std::string variant = "truncated";
  std::string emit = "json";
  bool scalar = false;
  std::string out = "-";
};

const std::string kLowerBoundCsvHeader =
    "n,variant,mode,F_sup,H_sup,tail_exact,H_minus_F_sup,level_one_target,sparsity,"
    "sparsity_structural,pisier_ratio,ratio_floor,log_F_over_loglog_F,violations";

json run_lower_bound(int n, WitnessVariant variant, bool scalar) {
  if (n < 1 || n > 16) throw UsageError("--n must be in 1..16");
  const bool instance = !scalar && n <= kMaxInstanceDimension;
  json report = lower_bound_report(n, variant, instance);
  report["mode"] = instance ? "instance" : "scalar";
  return report;
}

std::string lower_bound_csv_row(const json& r) {
  auto num = [&](const json& node, const char* key) {
    return node.contains(key) ? format_double(node[key].get<double>()) : std::string();
  };
  const json none = json::object();
  const json& inst = r.contains("instance") ? r["instance"] : none;
  std::ostringstream os;
  os << r["n"].get<int>() << ',' << r["variant"].get<std::string>() << ','
     << r["mode"].get<std::string>() << ',' << num(r, "F_sup") << ',' << num(r, "H_sup") << ','
     << num(r, "tail_exact") << ',' << num(r, "H_minus_F_sup") << ',' << num(r, "level_one_target")
     << ',' << r["sparsity"].get<std::size_t>() << ',' << num(r, "sparsity_structural") << ','
     << num(inst, "pisier_ratio") << ',' << num(inst, "ratio_floor") << ','
     << num(r, "log_F_over_loglog_F") << ',' << r["violations"].size();
  return os.str();
}

int cmd_lower_bound(const LowerBoundOptions& o) {
  const json report = run_lower_bound(o.n, parse_variant(o.variant), o.scalar);
  if (o.emit == "csv") {
    append_csv(o.out, kLowerBoundCsvHeader, {lower_bound_csv_row(report)});
  } else {
    write_text(o.out, dump(report));
  }
  for (const auto& v : report["violations"]) std::cerr << "violation: " << v.get<std::string>() << '\n';
  return report["violations"].empty() ? kExitOk : kExitViolation;
}

// ------------------------------------------------------------------- sparsity

struct SparsityOptions {
  std::string input;
  int n = 0;
  std::string variant = "truncated";
  bool rescale = false;
  double threshold = kDefaultSparsityThreshold;
  std::string out = "-";
};

CubeFunction load_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UsageError("cannot open input file " + path);
  return read_binary(is);
}

int cmd_sparsity(const SparsityOptions& o) {
  if (o.input.empty() == (o.n == 0)) throw UsageError("give exactly one of --input or --n");
  const CubeFunction f = o.input.empty() ? build_witness(o.n, parse_variant(o.variant))
                                         : load_binary(o.input);
  const auto report = sparsity_inequality_check(f, o.rescale, o.threshold);
  write_text(o.out, dump(to_json(report)));
  return kExitOk;
}

// ---------------------------------------------------------------------- sweep

struct SweepOptions {
  std::string kind;
  std::vector<int> ells;
  std::vector<int> ns;
  std::vector<std::size_t> ms;
  std::string variant = "truncated";
  std::string norm = "linf";
  double p = 2.0;
  std::uint64_t seed = 0;
  std::string out = "-";
};

const char* kSweepColumns = R"(Sweep CSV columns (stable order):
  proxy:        ell,n,phi_l1,phi_l1_bound,proxy_l1,proxy_l1_bound,max_deviation,deviation_bound,status
  audit:        n,m,ell,lhs,rhs_raw,ratio,derived_constant,slack,status
  lower-bound:  n,variant,mode,F_sup,H_sup,tail_exact,H_minus_F_sup,level_one_target,sparsity,
                sparsity_structural,pisier_ratio,ratio_floor,log_F_over_loglog_F,violations,status
  tail:         n,truncation_level,tail_exact,tail_coarse,status
status is "ok", "violation" or "error: <message>"; a failing row never stops the sweep.)";

struct RowOutcome {
  std::string row;
  int code = kExitOk;
};

RowOutcome guarded(const std::function<RowOutcome()>& body, std::size_t blank_columns) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::string row(blank_columns, ',');
    std::string msg = e.what();
    for (char& c : msg)
      if (c == ',' || c == '\n') c = ';';
    return {row + "error: " + msg, kExitUsage};
  }
}

int cmd_sweep(const SweepOptions& o) {
  std::string header;
  std::vector<RowOutcome> rows;
  auto status = [](bool ok) { return std::string(ok ? "ok" : "violation"); };

  if (o.kind == "proxy") {
    header = "ell,n,phi_l1,phi_l1_bound,proxy_l1,proxy_l1_bound,max_deviation,deviation_bound,status";
    for (int ell : o.ells)
      for (int n : o.ns)
        rows.push_back(guarded(
            [&] {
              const json r = run_proxy(ell, n);
              const bool ok = r["violations"].empty();
              std::ostringstream os;
              os << ell << ',' << n << ',' << format_double(r["phi_l1"].get<double>()) << ','
                 << format_double(r["phi_l1_bound"].get<double>()) << ','
                 << format_double(r["proxy_l1"].get<double>()) << ','
                 << format_double(r["proxy_l1_bound"].get<double>()) << ','
                 << format_double(r["max_deviation"].get<double>()) << ','
                 << format_double(r["deviation_bound"].get<double>()) << ',' << status(ok);
              return RowOutcome{os.str(), ok ? kExitOk : kExitViolation};
            },
            8));
  } else if (o.kind == "audit") {
    header = audit_csv_header() + ",status";
    for (int n : o.ns)
      for (std::size_t m : o.ms)
        rows.push_back(guarded(
            [&] {
              AuditOptions a;
              a.n = n;
              a.m = m;
              a.norm = o.norm;
              a.p = o.p;
              a.seed = o.seed;
              if (!o.ells.empty()) a.ell = o.ells.front();
              const auto audit = run_audit(a);
              return RowOutcome{audit_csv_row(audit) + ',' + status(audit.all_hold()),
                                audit.all_hold() ? kExitOk : kExitViolation};
            },
            8));
  } else if (o.kind == "lower-bound") {
    header = kLowerBoundCsvHeader + ",status";
    const auto variant = parse_variant(o.variant);
    for (int n : o.ns)
      rows.push_back(guarded(
          [&] {
            const json r = run_lower_bound(n, variant, false);
            const bool ok = r["violations"].empty();
            return RowOutcome{lower_bound_csv_row(r) + ',' + status(ok),
                              ok ? kExitOk : kExitViolation};
          },
          14));
  } else if (o.kind == "tail") {
    header = "n,truncation_level,tail_exact,tail_coarse,status";
    for (int n : o.ns)
      rows.push_back(guarded(
          [&] {
            const auto t = truncation_tail_bound(n);
            const bool ok = t.exact <= t.coarse + kBoundTolerance;
            std::ostringstream os;
            os << n << ',' << truncation_level(n) << ',' << format_double(t.exact) << ','
               << format_double(t.coarse) << ',' << status(ok);
            return RowOutcome{os.str(), ok ? kExitOk : kExitViolation};
          },
          4));
  } else {
    throw UsageError("unknown sweep kind " + o.kind);
  }

  std::vector<std::string> lines;
  int code = kExitOk;
  for (const auto& r : rows) {
    lines.push_back(r.row);
    if (r.code == kExitViolation) code = kExitViolation;
    if (r.code == kExitUsage && code == kExitOk) code = kExitUsage;
  }
  if (!o.out.empty() && o.out != "-") std::filesystem::remove(o.out);
  append_csv(o.out, header, lines);
  return code;
}

// -------------------------------------------------------------------- fourier

struct FourierOptions {
  std::string input;
  std::string from = "values";
  double threshold = 0.0;
  std::string out = "-";
};

int cmd_fourier(const FourierOptions& o) {
  if (o.from == "values") {
    const CubeFunction f = load_binary(o.input);
    write_text(o.out, dump(spectrum_to_json(f, o.threshold)));
    return kExitOk;
  }
  if (o.from == "spectrum") {
    if (o.out.empty() || o.out == "-") throw UsageError("--out is required for binary output");
    std::ifstream is(o.input);
    if (!is) throw UsageError("cannot open input file " + o.input);
    const CubeFunction f = spectrum_from_json(json::parse(is));
    std::ofstream os(o.out, std::ios::binary | std::ios::trunc);
    if (!os) throw UsageError("cannot open output file " + o.out);
    write_binary(os, f);
    return kExitOk;
  }
  throw UsageError("--from must be values or spectrum");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pisier-lab: Boolean Fourier analysis, linear proxy and Pisier inequality checks"};
  app.require_subcommand(1);

  ProxyOptions proxy;
  auto* proxy_cmd = app.add_subcommand("proxy-check", "Verify the linear proxy bounds for (ell, n)");
  proxy_cmd->add_option("--ell", proxy.ell, "Odd parameter ell in 1..15")->required();
  proxy_cmd->add_option("--n", proxy.n, "Cube dimension in 1..24")->required();
  proxy_cmd->add_option("--out", proxy.out, "JSON output path (default stdout)");

  AuditOptions audit;
  auto* audit_cmd = app.add_subcommand("audit", "Audit the Pisier decomposition for a seeded random f");
  audit_cmd->add_option("--n", audit.n, "Cube dimension in 1..16")->required();
  audit_cmd->add_option("--m", audit.m, "Target dimension")->required();
  audit_cmd->add_option("--ell", audit.ell, "Override the odd proxy parameter");
  audit_cmd->add_option("--norm", audit.norm, "l1 | l2 | linf | lp")
      ->check(CLI::IsMember({"l1", "l2", "linf", "lp"}));
  audit_cmd->add_option("--p", audit.p, "Exponent for --norm lp");
  audit_cmd->add_option("--seed", audit.seed, "Generator seed");
  audit_cmd->add_option("--samples", audit.samples, "Random directions for sandwich validation");
  audit_cmd->add_option("--out", audit.out, "JSON output path (default stdout)");
  audit_cmd->add_option("--csv", audit.csv, "Append a CSV row to this file");

  LowerBoundOptions lower;
  auto* lower_cmd = app.add_subcommand("lower-bound", "Build and verify the lower-bound example");
  lower_cmd->add_option("--n", lower.n, "Cube dimension (instance mode up to 12, scalar up to 16)")
      ->required();
  lower_cmd->add_option("--variant", lower.variant, "truncated | chebyshev")
      ->check(CLI::IsMember({"truncated", "chebyshev"}));
  lower_cmd->add_option("--emit", lower.emit, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  lower_cmd->add_flag("--scalar", lower.scalar, "Skip the vector-valued instance");
  lower_cmd->add_option("--out", lower.out, "Output path (json overwrites, csv appends)");

  SparsityOptions sparsity;
  auto* sparsity_cmd = app.add_subcommand("sparsity", "Record the spectral-sparsity inequality for a function");
  sparsity_cmd->add_option("--input", sparsity.input, "Binary cube function file");
  sparsity_cmd->add_option("--n", sparsity.n, "Use the lower-bound witness of this dimension");
  sparsity_cmd->add_option("--variant", sparsity.variant, "truncated | chebyshev")
      ->check(CLI::IsMember({"truncated", "chebyshev"}));
  sparsity_cmd->add_flag("--rescale", sparsity.rescale, "Divide by max(1, ||f||_inf) first");
  sparsity_cmd->add_option("--threshold", sparsity.threshold, "Coefficient threshold");
  sparsity_cmd->add_option("--out", sparsity.out, "JSON output path (default stdout)");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Emit a CSV table over a parameter grid");
  sweep_cmd->add_option("kind", sweep.kind, "proxy | audit | lower-bound | tail")
      ->required()
      ->check(CLI::IsMember({"proxy", "audit", "lower-bound", "tail"}));
  sweep_cmd->add_option("--ell", sweep.ells, "Comma-separated ell values")->delimiter(',');
  sweep_cmd->add_option("--n", sweep.ns, "Comma-separated n values")->delimiter(',');
  sweep_cmd->add_option("--m", sweep.ms, "Comma-separated m values")->delimiter(',');
  sweep_cmd->add_option("--variant", sweep.variant, "truncated | chebyshev");
  sweep_cmd->add_option("--norm", sweep.norm, "l1 | l2 | linf | lp");
  sweep_cmd->add_option("--p", sweep.p, "Exponent for --norm lp");
  sweep_cmd->add_option("--seed", sweep.seed, "Generator seed for audit rows");
  sweep_cmd->add_option("--out", sweep.out, "CSV output path (default stdout)");
  sweep_cmd->footer(kSweepColumns);

  FourierOptions fourier;
  auto* fourier_cmd = app.add_subcommand("fourier", "Walsh-Hadamard transform of a cube function file");
  fourier_cmd->add_option("--input", fourier.input, "Input file")->required();
  fourier_cmd->add_option("--from", fourier.from, "values (binary in, JSON out) | spectrum (JSON in, binary out)")
      ->check(CLI::IsMember({"values", "spectrum"}));
  fourier_cmd->add_option("--threshold", fourier.threshold, "Drop coefficients with |c| <= threshold");
  fourier_cmd->add_option("--out", fourier.out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*proxy_cmd) return cmd_proxy_check(proxy);
    if (*audit_cmd) return cmd_audit(audit);
    if (*lower_cmd) return cmd_lower_bound(lower);
    if (*sparsity_cmd) return cmd_sparsity(sparsity);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*fourier_cmd) return cmd_fourier(fourier);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
