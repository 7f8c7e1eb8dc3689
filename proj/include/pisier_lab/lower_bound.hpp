#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "pisier_lab/bound_report.hpp"
#include "pisier_lab/cube_function.hpp"
#include "pisier_lab/norm.hpp"
#include "pisier_lab/pisier_bench.hpp"
#include "pisier_lab/vector_function.hpp"

namespace pisier_lab {

inline constexpr int kMaxWitnessDimension = 20;
inline constexpr int kMaxInstanceDimension = 12;

enum class WitnessVariant { kTruncated, kChebyshev };

inline std::string to_string(WitnessVariant v) {
  return v == WitnessVariant::kTruncated ? "truncated" : "chebyshev";
}

namespace detail {

inline int isqrt(int v) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

inline void require_witness_dimension(int n) {
  if (n < 1 || n > kMaxWitnessDimension)
    throw InvalidInput("witness dimension must be in [1, " + std::to_string(kMaxWitnessDimension) +
                       "], got " + std::to_string(n));
}

}  // namespace detail

/// floor(3 sqrt(n)): highest level kept by the truncation.
inline int truncation_level(int n) { return detail::isqrt(9 * n); }

/// floor(sqrt(n)): Chebyshev degree.
inline int chebyshev_degree(int n) { return detail::isqrt(n); }

/// Im(i^k) n^{-k/2}: 0 on even levels, alternating sign on odd ones.
inline double h_level_coefficient(int n, int k) {
  if (k % 2 == 0) return 0.0;
  const double sign = (k % 4 == 1) ? 1.0 : -1.0;
  return sign * std::pow(static_cast<double>(n), -0.5 * k);
}

/// (1 + 1/n)^{n/2} = |1 + i/sqrt(n)|^n.
inline double h_sup_bound(int n) { return std::pow(1.0 + 1.0 / n, 0.5 * n); }

/// H(x) = Im prod_j (1 + i x_j / sqrt(n)), evaluated per Hamming weight.
inline CubeFunction build_h(int n) {
  detail::require_witness_dimension(n);
  const double step = 1.0 / std::sqrt(static_cast<double>(n));
  const std::complex<double> up(1.0, step), down(1.0, -step);
  std::vector<double> by_weight(static_cast<std::size_t>(n) + 1);
  for (int a = 0; a <= n; ++a) {
    std::complex<double> prod(1.0, 0.0);
    for (int j = 0; j < n - a; ++j) prod *= up;
    for (int j = 0; j < a; ++j) prod *= down;
    by_weight[a] = prod.imag();
  }
  return CubeFunction::from_weight_values(n, by_weight);
}

/// H restricted to levels <= floor(3 sqrt(n)), formed as F = H - H_high so
/// that F and H share their value table when nothing is truncated.
inline CubeFunction build_f_truncated(int n) {
  detail::require_witness_dimension(n);
  const int cut = truncation_level(n);
  const CubeFunction h = build_h(n);
  if (cut >= n) return h;
  std::vector<double> high(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = cut + 1; k <= n; ++k) high[k] = h_level_coefficient(n, k);
  const auto tail = CubeFunction::from_level_coefficients(n, high);
  std::vector<double> values(h.size());
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = h.values()[x] - tail.values()[x];
  return CubeFunction::from_values(n, std::move(values));
}

/// T_k(t) by the three-term recurrence T_{j+1} = 2t T_j - T_{j-1}.
inline double chebyshev_t(int k, double t) {
  if (k < 0) throw InvalidInput("Chebyshev degree must be nonnegative");
  if (k == 0) return 1.0;
  double prev = 1.0, cur = t;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// F(x) = T_k((x_1 + ... + x_n)/n), k = floor(sqrt(n)). Values come from the
/// n+1 weight classes; the spectrum from the symmetric level transform.
inline CubeFunction build_f_chebyshev(int n) {
  detail::require_witness_dimension(n);
  const int k = chebyshev_degree(n);
  std::vector<double> by_weight(static_cast<std::size_t>(n) + 1);
  for (int a = 0; a <= n; ++a)
    by_weight[a] = chebyshev_t(k, static_cast<double>(n - 2 * a) / n);
  return CubeFunction::from_level_coefficients(n, symmetric_level_coefficients(n, by_weight));
}

inline CubeFunction build_witness(int n, WitnessVariant variant) {
  return variant == WitnessVariant::kTruncated ? build_f_truncated(n) : build_f_chebyshev(n);
}

/// Number of subsets on the levels that survive by construction.
inline double structural_sparsity(int n, WitnessVariant variant) {
  double count = 0.0;
  if (variant == WitnessVariant::kTruncated) {
    for (int k = 1; k <= std::min(n, truncation_level(n)); k += 2) count += detail::binomial(n, k);
  } else {
    const int deg = chebyshev_degree(n);
    for (int k = deg % 2; k <= std::min(n, deg); k += 2) count += detail::binomial(n, k);
  }
  return count;
}

struct TailBound {
  double exact = 0.0;   ///< sum_{k > 3 sqrt n} C(n,k) n^{-k/2}
  double coarse = 0.0;  ///< sum_{k > 3 sqrt n} (e sqrt(n) / k)^k
};

inline TailBound truncation_tail_bound(int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  TailBound t;
  CompensatedSum<double> exact, coarse;
  const double root = std::sqrt(static_cast<double>(n));
  for (int k = truncation_level(n) + 1; k <= n; ++k) {
    exact += detail::binomial(n, k) * std::pow(static_cast<double>(n), -0.5 * k);
    coarse += std::pow(std::numbers::e * root / k, k);
  }
  t.exact = exact.value();
  t.coarse = coarse.value();
  return t;
}

/// The vector-valued example: (f(x))_S = F^(S) chi_S(x) into R^family, under
/// the sup-functional norm of the family.
struct LowerBoundInstance {
  int n;
  WitnessVariant variant;
  CubeFunction witness;
  std::vector<Mask> family;
  VectorFunction f;
  Norm norm;

  double witness_sup = 0.0;
  double point_norm_min = 0.0, point_norm_max = 0.0;
  double linear_norm_min = 0.0, linear_norm_max = 0.0;
  double expected_linear_norm = 0.0;
  std::vector<std::string> violations;
};

inline LowerBoundInstance lower_bound_instance(int n, WitnessVariant variant) {
  if (n < 1 || n > kMaxInstanceDimension)
    throw InvalidInput("instance dimension must be in [1, " +
                       std::to_string(kMaxInstanceDimension) + "]");
  CubeFunction witness = build_witness(n, variant);
  const auto spec = witness.spectrum();
  std::vector<Mask> family;
  for (std::size_t s = 0; s < spec.size(); ++s)
    if (std::abs(spec[s]) > kDefaultSparsityThreshold) family.push_back(static_cast<Mask>(s));
  if (family.empty()) throw ConsistencyError("witness has an empty spectrum");

  std::vector<CubeFunction> coords;
  coords.reserve(family.size());
  for (Mask s : family) coords.push_back(CubeFunction::character(n, SubsetMask{s}, spec[s]));

  LowerBoundInstance inst{n,
                          variant,
                          witness,
                          family,
                          VectorFunction(std::move(coords)),
                          Norm::sup_functional(SupFunctional(n, family))};
  inst.witness_sup = witness.sup_norm();

  const auto point_norms = pointwise_norms(inst.f, inst.norm);
  const auto [pmin, pmax] = std::minmax_element(point_norms.begin(), point_norms.end());
  inst.point_norm_min = *pmin;
  inst.point_norm_max = *pmax;

  const auto lin_norms = pointwise_norms(rademacher_projection(inst.f), inst.norm);
  const auto [lmin, lmax] = std::minmax_element(lin_norms.begin(), lin_norms.end());
  inst.linear_norm_min = *lmin;
  inst.linear_norm_max = *lmax;

  const double first = spec[1];
  bool uniform = true;
  for (int j = 0; j < n; ++j) uniform = uniform && std::abs(spec[Mask{1} << j] - first) <= 1e-12;
  inst.expected_linear_norm = n * std::abs(first);

  constexpr double kTol = 1e-10;
  if (inst.point_norm_max - inst.point_norm_min > kTol ||
      std::abs(inst.point_norm_max - inst.witness_sup) > kTol)
    inst.violations.push_back("||f(x)|| is not constant and equal to ||F||_inf");
  if (!uniform) inst.violations.push_back("level-one coefficients of F are not all equal");
  if (inst.linear_norm_max - inst.linear_norm_min > kTol ||
      std::abs(inst.linear_norm_max - inst.expected_linear_norm) > kTol)
    inst.violations.push_back("||lin f(x)|| is not constant and equal to the level-one mass");
  return inst;
}

/// log2 of the sparsity against sum_j |f^({j})| for a function bounded by 1.
/// With rescale set, f is divided by max(1, ||f||_inf) first; otherwise an
/// unbounded f is rejected. Nothing is asserted about the constant.
inline BoundReport sparsity_inequality_check(const CubeFunction& f, bool rescale = false,
                                             double threshold = kDefaultSparsityThreshold) {
  const double sup = f.sup_norm();
  if (!rescale && sup > 1.0 + kBoundTolerance)
    throw InvalidInput("sparsity inequality needs ||f||_inf <= 1, got " + std::to_string(sup));
  const double scale = rescale ? std::max(1.0, sup) : 1.0;
  const auto sparsity = spectrum_sparsity(f, threshold);
  const double raw_mass = level_one_mass(f);
  const double mass = raw_mass / scale;
  BoundReport r;
  r.claim = "sparsity_inequality";
  r.lhs = sparsity > 0 ? std::log2(static_cast<double>(sparsity)) : 0.0;
  r.rhs = mass;
  r.slack = r.lhs - r.rhs;
  r.holds = true;
  r.params = {{"n", f.dimension()},
              {"sparsity", sparsity},
              {"log2_sparsity", r.lhs},
              {"level1_sum_raw", raw_mass},
              {"level1_sum", mass},
              {"scale", scale},
              {"sup_norm", sup},
              {"threshold", threshold},
              {"ratio", mass == 0.0 ? 0.0 : r.lhs / mass}};
  return r;
}

/// All lower-bound properties for (n, variant). Instance mode builds the
/// vector-valued example and its Pisier ratio (n <= 12); scalar mode reports
/// the witness properties only.
inline nlohmann::json lower_bound_report(int n, WitnessVariant variant, bool instance_mode) {
  nlohmann::json out = {{"n", n}, {"variant", to_string(variant)}};
  nlohmann::json violations = nlohmann::json::array();

  const CubeFunction witness = build_witness(n, variant);
  const double witness_sup = witness.sup_norm();
  out["F_sup"] = witness_sup;

  if (variant == WitnessVariant::kTruncated) {
    const CubeFunction h = build_h(n);
    const double h_sup = h.sup_norm();
    const auto tail = truncation_tail_bound(n);
    double h_minus_f = 0.0;
    for (std::size_t x = 0; x < h.size(); ++x)
      h_minus_f = std::max(h_minus_f, std::abs(h.values()[x] - witness.values()[x]));
    out["truncation_level"] = truncation_level(n);
    out["H_sup"] = h_sup;
    out["H_sup_bound"] = h_sup_bound(n);
    out["tail_exact"] = tail.exact;
    out["tail_coarse"] = tail.coarse;
    out["H_minus_F_sup"] = h_minus_f;
    if (h_sup > 3.0) violations.push_back("(A) ||H||_inf exceeds 3");
    if (h_sup > h_sup_bound(n) + kBoundTolerance)
      violations.push_back("(A) ||H||_inf exceeds (1+1/n)^{n/2}");
    if (h_minus_f > tail.exact + kBoundTolerance)
      violations.push_back("(A) ||H-F||_inf exceeds the tail bound");
    if (tail.exact > tail.coarse + kBoundTolerance)
      violations.push_back("exact tail exceeds the coarse tail");
    if (witness_sup > h_sup + tail.exact + kBoundTolerance)
      violations.push_back("(A) ||F||_inf exceeds ||H||_inf + tail");
  } else {
    out["chebyshev_degree"] = chebyshev_degree(n);
    if (witness_sup > 1.0 + kBoundTolerance) violations.push_back("(A) ||F||_inf exceeds 1");
  }

  nlohmann::json level_one = nlohmann::json::array();
  double max_dev = 0.0;
  const double target = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    const double c = witness.spectrum()[Mask{1} << j];
    level_one.push_back(c);
    max_dev = std::max(max_dev, std::abs(c - (variant == WitnessVariant::kTruncated
                                                  ? target
                                                  : witness.spectrum()[1])));
  }
  out["level_one"] = level_one;
  out["level_one_target"] = variant == WitnessVariant::kTruncated ? target : witness.spectrum()[1];
  out["level_one_max_deviation"] = max_dev;
  if (max_dev > 1e-12) violations.push_back("(B) level-one coefficients deviate");

  const auto counted = spectrum_sparsity(witness);
  const double structural = structural_sparsity(n, variant);
  out["sparsity"] = counted;
  out["sparsity_structural"] = structural;
  if (static_cast<double>(counted) != structural)
    violations.push_back("(C) counted sparsity differs from the structural count");
  const double log_family = counted > 1 ? std::log2(static_cast<double>(counted)) : 0.0;
  out["log_F"] = log_family;
  out["log_F_over_loglog_F"] = log_family > 1.0 ? log_family / std::log2(log_family) : 0.0;

  if (instance_mode) {
    const auto inst = lower_bound_instance(n, variant);
    const auto ratio = pisier_ratio(inst.f, inst.norm);
    const double tail = variant == WitnessVariant::kTruncated ? truncation_tail_bound(n).exact : 0.0;
    const double ratio_floor = inst.expected_linear_norm / (3.0 + tail);
    out["instance"] = {{"m", inst.family.size()},
                       {"point_norm_min", inst.point_norm_min},
                       {"point_norm_max", inst.point_norm_max},
                       {"linear_norm_min", inst.linear_norm_min},
                       {"linear_norm_max", inst.linear_norm_max},
                       {"expected_linear_norm", inst.expected_linear_norm},
                       {"pisier_ratio", ratio.params["ratio"]},
                       {"ratio_floor", ratio_floor}};
    for (const auto& v : inst.violations) violations.push_back(v);
    if (variant == WitnessVariant::kTruncated &&
        ratio.params["ratio"].get<double>() < ratio_floor - kBoundTolerance)
      violations.push_back("pisier ratio below sqrt(n)/(3 + tail)");
  }
  out["violations"] = violations;
  return out;
}

}  // namespace pisier_lab
