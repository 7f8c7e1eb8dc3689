#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pisier_lab/compensated_sum.hpp"
#include "pisier_lab/cube_function.hpp"
#include "pisier_lab/errors.hpp"

namespace pisier_lab {

inline constexpr int kMaxProxyEll = 15;
inline constexpr int kMaxProxyTableDimension = 20;
inline constexpr double kIdentityTolerance = 1e-10;

/// The 4*ell equally spaced angles 2*pi*k/(4*ell). Angles are addressed by
/// their integer index k; trig values are folded into the first quadrant so
/// sin(2*pi - t) = -sin(t) and sin(pi - t) = sin(t) hold bit-exactly.
class AngleGrid {
 public:
  explicit AngleGrid(int ell) : ell_(ell) {
    if (ell < 1 || ell % 2 == 0)
      throw InvalidInput("ell must be an odd positive integer, got " + std::to_string(ell));
    for (int k = 1; k < size(); ++k)
      if (k != 2 * ell_) support_.push_back(k);
    for (int a = -size(); a <= size(); ++a) {
      const auto sum = exponential_sum(a);
      const double expected = (a % size() == 0) ? static_cast<double>(size()) : 0.0;
      if (std::abs(sum - std::complex<double>(expected, 0.0)) > kIdentityTolerance)
        throw ConsistencyError("geometric sum identity fails at a=" + std::to_string(a));
    }
  }

  int ell() const { return ell_; }
  int size() const { return 4 * ell_; }
  /// Grid indices excluding the angles 0 and pi.
  std::span<const int> support() const { return support_; }

  double angle(int k) const { return 2.0 * std::numbers::pi * wrap(k) / size(); }

  double sin_at(long long k) const {
    const int n = size();
    int r = wrap(k);
    if (r == 0 || 2 * r == n) return 0.0;
    if (2 * r > n) return -sin_at(n - r);
    const int folded = std::min(r, n / 2 - r);
    return std::sin(2.0 * std::numbers::pi * folded / n);
  }

  double cos_at(long long k) const { return sin_at(static_cast<long long>(wrap(k)) + ell_); }

  /// sum over the full grid of e^{i a theta}.
  std::complex<double> exponential_sum(int a) const {
    CompensatedSum<double> re, im;
    for (int k = 0; k < size(); ++k) {
      const long long phase = static_cast<long long>(a) * k;
      re += cos_at(phase);
      im += sin_at(phase);
    }
    return {re.value(), im.value()};
  }

 private:
  int wrap(long long k) const {
    const long long n = size();
    return static_cast<int>(((k % n) + n) % n);
  }

  int ell_;
  std::vector<int> support_;
};

inline AngleGrid make_grid(int ell) { return AngleGrid(ell); }

/// phi(theta) = ((2l-1)/l) sin(l theta)/sin^2(theta) on the support of the
/// angle grid, under the uniform distribution on that support.
class ProxyKernel {
 public:
  explicit ProxyKernel(int ell) : grid_(ell) {
    if (ell > kMaxProxyEll)
      throw InvalidInput("ell above supported maximum " + std::to_string(kMaxProxyEll));
    const auto support = grid_.support();
    phi_.reserve(support.size());
    sines_.reserve(support.size());
    const double lead = (2.0 * ell - 1.0) / ell;
    for (int k : support) {
      const double s = grid_.sin_at(k);
      sines_.push_back(s);
      phi_.push_back(lead * grid_.sin_at(static_cast<long long>(ell) * k) / (s * s));
    }
  }

  int ell() const { return grid_.ell(); }
  const AngleGrid& grid() const { return grid_; }
  /// Values aligned with grid().support().
  std::span<const double> phi_values() const { return phi_; }
  std::span<const double> support_sines() const { return sines_; }

  /// 8 ell / 2^ell.
  double deviation_bound() const { return 8.0 * ell() / std::ldexp(1.0, ell()); }

 private:
  AngleGrid grid_;
  std::vector<double> phi_;
  std::vector<double> sines_;
};

/// phi at grid index k; the poles at k = 0 and k = 2*ell are rejected.
inline double phi_eval(const ProxyKernel& kernel, int grid_index) {
  const int n = kernel.grid().size();
  const int k = ((grid_index % n) + n) % n;
  if (k == 0 || k == 2 * kernel.ell())
    throw DomainError("phi has a pole at theta in {0, pi}");
  const auto pos = static_cast<std::size_t>(k < 2 * kernel.ell() ? k - 1 : k - 2);
  return kernel.phi_values()[pos];
}

/// E_theta[phi(theta) sin^k(theta)].
inline double phi_moment(const ProxyKernel& kernel, int k) {
  if (k < 0) throw InvalidInput("moment order must be nonnegative");
  const auto phi = kernel.phi_values();
  const auto sines = kernel.support_sines();
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double power = 1.0;
    for (int e = 0; e < k; ++e) power *= sines[i];
    acc += phi[i] * power;
  }
  return acc.value() / static_cast<double>(phi.size());
}

/// E_theta|phi(theta)|.
inline double phi_l1(const ProxyKernel& kernel) {
  CompensatedSum<double> acc;
  for (double v : kernel.phi_values()) acc += std::abs(v);
  return acc.value() / static_cast<double>(kernel.phi_values().size());
}

/// c_k = 2 E[phi sin^k] / 2^k for k = 0..n; P^(S) = c_|S|.
inline std::vector<double> proxy_level_coeffs(const ProxyKernel& kernel, int n) {
  if (n < 0) throw InvalidInput("dimension must be nonnegative");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[k] = 2.0 * phi_moment(kernel, k) / std::ldexp(1.0, k);
  return c;
}

/// P(x) for any x with exactly a coordinates equal to -1:
/// 2 E[phi (1 + s/2)^{n-a} (1 - s/2)^a], s = sin(theta).
inline double proxy_eval_by_weight(const ProxyKernel& kernel, int n, int a) {
  if (n < 1) throw InvalidInput("dimension must be at least 1");
  if (a < 0 || a > n) throw InvalidInput("weight a out of range [0, n]");
  const auto phi = kernel.phi_values();
  const auto sines = kernel.support_sines();
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double up = 1.0 + sines[i] / 2.0;
    const double down = 1.0 - sines[i] / 2.0;
    if (!(up >= 0.5 && down >= 0.5))
      throw ConsistencyError("product weight 1 + sin(theta) x_j / 2 dropped below 1/2");
    double prod = 1.0;
    for (int j = 0; j < n - a; ++j) prod *= up;
    for (int j = 0; j < a; ++j) prod *= down;
    acc += phi[i] * prod;
  }
  return 2.0 * acc.value() / static_cast<double>(phi.size());
}

inline std::vector<double> proxy_values_by_weight(const ProxyKernel& kernel, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (int a = 0; a <= n; ++a) out[a] = proxy_eval_by_weight(kernel, n, a);
  return out;
}

/// E|P(X)| = sum_a C(n,a) 2^-n |P_a|.
inline double proxy_l1(const ProxyKernel& kernel, int n) {
  if (n < 1) throw InvalidInput("dimension must be at least 1");
  CompensatedSum<double> acc;
  for (int a = 0; a <= n; ++a)
    acc += detail::binomial(n, a) * std::abs(proxy_eval_by_weight(kernel, n, a));
  return std::ldexp(acc.value(), -n);
}

inline CubeFunction proxy_as_cube_function(const ProxyKernel& kernel, int n) {
  require_dimension(n, kMaxProxyTableDimension);
  return CubeFunction::from_level_coefficients(n, proxy_level_coeffs(kernel, n));
}

/// Level profile of L = sum_j x_j: 1 at level 1, 0 elsewhere.
inline double linear_level(int k) { return k == 1 ? 1.0 : 0.0; }

/// All proxy verifications for (ell, n). An empty "violations" array means
/// every bound holds.
inline nlohmann::json proxy_check(const ProxyKernel& kernel, int n) {
  const int ell = kernel.ell();
  nlohmann::json violations = nlohmann::json::array();

  nlohmann::json moments = nlohmann::json::array();
  for (int k = 0; k <= ell; ++k) {
    const double mk = phi_moment(kernel, k);
    moments.push_back(mk);
    const double target = k == 1 ? 1.0 : 0.0;
    if (std::abs(mk - target) > kIdentityTolerance)
      violations.push_back("phi_moment(" + std::to_string(k) + ") = " + std::to_string(mk));
  }

  const double l1_phi = phi_l1(kernel);
  if (l1_phi > 4.0 * ell) violations.push_back("phi_l1 exceeds 4*ell");

  const double l1_proxy = proxy_l1(kernel, n);
  if (l1_proxy > 8.0 * ell) violations.push_back("proxy_l1 exceeds 8*ell");

  const auto coeffs = proxy_level_coeffs(kernel, n);
  double max_dev = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double dev = std::abs(coeffs[k] - linear_level(k));
    max_dev = std::max(max_dev, dev);
    if (dev > kernel.deviation_bound())
      violations.push_back("level " + std::to_string(k) + " deviation exceeds 8*ell/2^ell");
    if (k <= ell && dev > kIdentityTolerance)
      violations.push_back("level " + std::to_string(k) + " does not match L");
  }

  return {{"ell", ell},
          {"n", n},
          {"grid_size", kernel.grid().size()},
          {"phi_moments", moments},
          {"phi_l1", l1_phi},
          {"phi_l1_bound", 4.0 * ell},
          {"proxy_l1", l1_proxy},
          {"proxy_l1_bound", 8.0 * ell},
          {"level_coeffs", coeffs},
          {"deviation_bound", kernel.deviation_bound()},
          {"max_deviation", max_dev},
          {"violations", violations}};
}

}  // namespace pisier_lab
