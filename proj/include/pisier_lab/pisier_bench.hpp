#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pisier_lab/bound_report.hpp"
#include "pisier_lab/linear_proxy.hpp"
#include "pisier_lab/sandwich.hpp"
#include "pisier_lab/vector_function.hpp"

namespace pisier_lab {

inline constexpr int kMaxAuditDimension = 16;
inline constexpr int kMaxSupFunctionalAuditDimension = 12;
inline constexpr int kDefaultValidationSamples = 256;

/// Smallest odd ell with ell > (1/2) log2(m), i.e. with 4^ell > m.
inline int choose_ell(std::size_t m) {
  if (m == 0) throw InvalidInput("m must be at least 1");
  int ell = 1;
  while (std::ldexp(1.0, 2 * ell) <= static_cast<double>(m)) ell += 2;
  return ell;
}

/// 8 ell (1 + d / 2^ell).
inline double derived_constant(int ell, double distortion) {
  return 8.0 * ell * (1.0 + distortion / std::ldexp(1.0, ell));
}

namespace detail {

inline void require_audit_size(const VectorFunction& f, const Norm& norm) {
  const int cap = norm.kind() == NormKind::kSupFunctional ? kMaxSupFunctionalAuditDimension
                                                          : kMaxAuditDimension;
  if (f.dimension() > cap)
    throw ResourceError("exhaustive evaluation with " + norm.description() + " is capped at n=" +
                        std::to_string(cap));
}

}  // namespace detail

/// lhs = (E||lin f||^2)^{1/2}, rhs = (E||f||^2)^{1/2}; the ratio is recorded,
/// nothing is asserted.
inline BoundReport pisier_ratio(const VectorFunction& f, const Norm& norm) {
  detail::require_audit_size(f, norm);
  const double lhs = mean_square_norm(rademacher_projection(f), norm);
  const double rhs = mean_square_norm(f, norm);
  if (rhs == 0.0 && lhs > 0.0)
    throw ConsistencyError("nonzero linear part of a function with zero mean-square norm");
  BoundReport r;
  r.claim = "pisier_ratio";
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.params = {{"n", f.dimension()},
              {"m", f.target_dimension()},
              {"norm", norm.description()},
              {"ratio", rhs == 0.0 ? 0.0 : lhs / rhs}};
  return r;
}

struct AuditCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

struct PisierAudit {
  int n = 0;
  std::size_t m = 0;
  int ell = 0;
  std::string norm;
  double distortion = 1.0;
  double lhs = 0.0;
  double rhs_raw = 0.0;
  double term_proxy = 0.0;
  double term_remainder = 0.0;
  double proxy_l1 = 0.0;
  double derived_constant = 0.0;
  double john_constant = 0.0;
  std::vector<AuditCheck> checks;

  double ratio() const { return rhs_raw == 0.0 ? 0.0 : lhs / rhs_raw; }
  /// derived_constant * rhs_raw - lhs.
  double slack() const { return derived_constant * rhs_raw - lhs; }

  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

/// Splits lin f = f*P + f*(L-P) and bounds each term: the proxy term by
/// E|P| <= 8 ell, the remainder through T and Parseval by 8 ell d / 2^ell.
inline PisierAudit decomposition_audit(const VectorFunction& f, const Norm& norm,
                                       const SandwichTransform& transform,
                                       std::optional<int> ell_override = std::nullopt,
                                       int validation_samples = kDefaultValidationSamples) {
  detail::require_audit_size(f, norm);
  const std::size_t m = f.target_dimension();
  require_norm_dimension(f, norm);
  if (transform.dimension() != m)
    throw InvalidInput("sandwich transform dimension does not match m");
  const auto sandwich = sandwich_validate(transform, norm, validation_samples);
  if (!sandwich.holds)
    throw InvalidInput("sandwich transform rejected: worst slack " + std::to_string(sandwich.slack));

  PisierAudit audit;
  audit.n = f.dimension();
  audit.m = m;
  audit.ell = ell_override.value_or(choose_ell(m));
  audit.norm = norm.description();
  audit.distortion = transform.distortion();

  const ProxyKernel kernel(audit.ell);
  const CubeFunction proxy = proxy_as_cube_function(kernel, audit.n);
  std::vector<double> remainder_spec(proxy.size());
  for (std::size_t s = 0; s < remainder_spec.size(); ++s)
    remainder_spec[s] = linear_level(std::popcount(static_cast<Mask>(s))) - proxy.spectrum()[s];
  const auto remainder = CubeFunction::from_spectrum(audit.n, remainder_spec);

  audit.lhs = mean_square_norm(rademacher_projection(f), norm);
  audit.rhs_raw = mean_square_norm(f, norm);
  audit.term_proxy = mean_square_norm(vector_convolve(f, proxy), norm);
  audit.term_remainder = mean_square_norm(vector_convolve(f, remainder), norm);
  audit.proxy_l1 = proxy.l1_norm();

  const double ell8 = 8.0 * audit.ell;
  const double decay = ell8 / std::ldexp(1.0, audit.ell);
  audit.derived_constant = derived_constant(audit.ell, audit.distortion);
  audit.john_constant = derived_constant(audit.ell, std::sqrt(static_cast<double>(m)));

  auto check = [&](std::string name, double lhs, double rhs) {
    audit.checks.push_back({std::move(name), lhs, rhs, lhs <= rhs + kBoundTolerance});
  };
  check("triangle_split", audit.lhs, audit.term_proxy + audit.term_remainder);
  check("proxy_term_young", audit.term_proxy, audit.proxy_l1 * audit.rhs_raw);
  check("proxy_l1_bound", audit.proxy_l1, ell8);
  check("proxy_term", audit.term_proxy, ell8 * audit.rhs_raw);
  check("remainder_term", audit.term_remainder, decay * audit.distortion * audit.rhs_raw);
  check("pisier_bound", audit.lhs, audit.derived_constant * audit.rhs_raw);

  // E||T(f)*(L-P)||_2^2 = sum_S ||T(f)^(S)||_2^2 (L-P)^(S)^2
  const auto tf = apply_linear(transform.matrix(), f);
  const double direct = std::pow(mean_square_norm(vector_convolve(tf, remainder), Norm::l2()), 2);
  CompensatedSum<double> spectral;
  for (std::size_t s = 0; s < remainder_spec.size(); ++s) {
    const double w = remainder_spec[s] * remainder_spec[s];
    if (w == 0.0) continue;
    for (const auto& c : tf.coordinates()) spectral += c.spectrum()[s] * c.spectrum()[s] * w;
  }
  const double parseval_gap = std::abs(direct - spectral.value());
  audit.checks.push_back({"parseval_step", parseval_gap,
                          1e-10 * std::max(1.0, spectral.value()),
                          parseval_gap <= 1e-10 * std::max(1.0, spectral.value())});
  return audit;
}

inline nlohmann::json to_json(const PisierAudit& a) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : a.checks)
    checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  return {{"claim", "pisier_decomposition"},
          {"n", a.n},
          {"m", a.m},
          {"ell", a.ell},
          {"norm", a.norm},
          {"distortion", a.distortion},
          {"lhs", a.lhs},
          {"rhs_raw", a.rhs_raw},
          {"ratio", a.ratio()},
          {"term_proxy", a.term_proxy},
          {"term_remainder", a.term_remainder},
          {"proxy_l1", a.proxy_l1},
          {"derived_constant", a.derived_constant},
          {"john_constant", a.john_constant},
          {"slack", a.slack()},
          {"all_hold", a.all_hold()},
          {"checks", checks}};
}

/// Decimal point, no grouping, 17 significant digits.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string audit_csv_header() { return "n,m,ell,lhs,rhs_raw,ratio,derived_constant,slack"; }

inline std::string audit_csv_row(const PisierAudit& a) {
  return std::to_string(a.n) + ',' + std::to_string(a.m) + ',' + std::to_string(a.ell) + ',' +
         format_double(a.lhs) + ',' + format_double(a.rhs_raw) + ',' + format_double(a.ratio()) +
         ',' + format_double(a.derived_constant) + ',' + format_double(a.slack());
}

}  // namespace pisier_lab
