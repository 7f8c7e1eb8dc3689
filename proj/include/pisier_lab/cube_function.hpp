#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "pisier_lab/compensated_sum.hpp"
#include "pisier_lab/cube_point.hpp"
#include "pisier_lab/walsh_hadamard.hpp"

namespace pisier_lab {

inline constexpr double kDefaultSparsityThreshold = 1e-8;

/// A real function on {+1,-1}^n, held as its value table, its Walsh spectrum
/// (f^(S) = E[f chi_S]), or both. Whichever side is missing is computed on
/// first access, exactly once, and shared by all copies.
class CubeFunction {
 public:
  static CubeFunction from_values(int n, std::vector<double> values) {
    require_dimension(n);
    if (values.size() != cube_size(n))
      throw InvalidInput("value table length does not match 2^n");
    return CubeFunction(std::make_shared<State>(n, std::move(values), Side::kValues));
  }

  static CubeFunction from_spectrum(int n, std::vector<double> spectrum) {
    require_dimension(n);
    if (spectrum.size() != cube_size(n))
      throw InvalidInput("spectrum length does not match 2^n");
    return CubeFunction(std::make_shared<State>(n, std::move(spectrum), Side::kSpectrum));
  }

  static CubeFunction constant(int n, double c) {
    require_dimension(n);
    std::vector<double> spec(cube_size(n), 0.0);
    spec[0] = c;
    return from_spectrum(n, std::move(spec));
  }

  static CubeFunction character(int n, SubsetMask s, double scale = 1.0) {
    require_dimension(n);
    if (s.bits >= cube_size(n)) throw InvalidInput("subset outside [n]");
    std::vector<double> spec(cube_size(n), 0.0);
    spec[s.bits] = scale;
    return from_spectrum(n, std::move(spec));
  }

  /// L(x) = x_1 + ... + x_n.
  static CubeFunction linear_sum(int n) {
    require_dimension(n);
    std::vector<double> spec(cube_size(n), 0.0);
    for (int j = 0; j < n; ++j) spec[Mask{1} << j] = 1.0;
    return from_spectrum(n, std::move(spec));
  }

  /// Symmetric function given by its value on each Hamming weight class 0..n.
  static CubeFunction from_weight_values(int n, std::span<const double> by_weight) {
    require_dimension(n);
    if (by_weight.size() != static_cast<std::size_t>(n) + 1)
      throw InvalidInput("need one value per Hamming weight 0..n");
    std::vector<double> values(cube_size(n));
    for (std::size_t x = 0; x < values.size(); ++x)
      values[x] = by_weight[std::popcount(static_cast<Mask>(x))];
    return from_values(n, std::move(values));
  }

  /// Function whose coefficient at S depends only on |S|.
  static CubeFunction from_level_coefficients(int n, std::span<const double> by_level) {
    require_dimension(n);
    if (by_level.size() < static_cast<std::size_t>(n) + 1)
      throw InvalidInput("need one coefficient per level 0..n");
    std::vector<double> spec(cube_size(n));
    for (std::size_t s = 0; s < spec.size(); ++s)
      spec[s] = by_level[std::popcount(static_cast<Mask>(s))];
    return from_spectrum(n, std::move(spec));
  }

  int dimension() const { return state_->n; }
  std::size_t size() const { return cube_size(state_->n); }

  std::span<const double> values() const {
    state_->ensure(Side::kValues);
    return state_->values;
  }

  std::span<const double> spectrum() const {
    state_->ensure(Side::kSpectrum);
    return state_->spectrum;
  }

  double operator()(CubePoint x) const { return values()[x.bits]; }
  double coefficient(SubsetMask s) const { return spectrum()[s.bits]; }

  double sup_norm() const {
    double best = 0.0;
    for (double v : values()) best = std::max(best, std::abs(v));
    return best;
  }

  /// E|f(X)|.
  double l1_norm() const {
    CompensatedSum<double> acc;
    for (double v : values()) acc += std::abs(v);
    return acc.value() / static_cast<double>(size());
  }

  /// E[f(X)^2].
  double mean_square() const {
    CompensatedSum<double> acc;
    for (double v : values()) acc += v * v;
    return acc.value() / static_cast<double>(size());
  }

  /// sum_S f^(S)^2.
  double spectral_energy() const {
    CompensatedSum<double> acc;
    for (double c : spectrum()) acc += c * c;
    return acc.value();
  }

 private:
  enum class Side { kValues, kSpectrum };

  struct State {
    State(int dim, std::vector<double> data, Side given) : n(dim), present(given) {
      (given == Side::kValues ? values : spectrum) = std::move(data);
    }

    void ensure(Side side) {
      if (side == present) return;
      std::call_once(once, [this] {
        if (present == Side::kValues) {
          spectrum = fwht(values);
        } else {
          values = inverse_fwht(spectrum);
        }
      });
    }

    int n;
    Side present;
    std::once_flag once;
    std::vector<double> values;
    std::vector<double> spectrum;
  };

  explicit CubeFunction(std::shared_ptr<State> state) : state_(std::move(state)) {}

  std::shared_ptr<State> state_;
};

inline void require_same_dimension(const CubeFunction& f, const CubeFunction& g) {
  if (f.dimension() != g.dimension())
    throw InvalidInput("cube dimension mismatch: " + std::to_string(f.dimension()) +
                       " vs " + std::to_string(g.dimension()));
}

/// (f*g)(x) = E_Z[g(Z) f(x ⊙ Z)], computed through the spectra: (f*g)^ = f^ g^.
inline CubeFunction convolve(const CubeFunction& f, const CubeFunction& g) {
  require_same_dimension(f, g);
  const auto fs = f.spectrum();
  const auto gs = g.spectrum();
  std::vector<double> out(fs.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = fs[s] * gs[s];
  return CubeFunction::from_spectrum(f.dimension(), std::move(out));
}

/// Keeps only the level-k coefficients.
inline CubeFunction project_level(const CubeFunction& f, int level) {
  const auto fs = f.spectrum();
  std::vector<double> out(fs.size(), 0.0);
  for (std::size_t s = 0; s < out.size(); ++s)
    if (std::popcount(static_cast<Mask>(s)) == level) out[s] = fs[s];
  return CubeFunction::from_spectrum(f.dimension(), std::move(out));
}

/// Rademacher projection of a scalar function: x -> sum_j f^({j}) x_j.
inline CubeFunction project_degree_one(const CubeFunction& f) { return project_level(f, 1); }

/// Number of S with |f^(S)| > threshold.
inline std::size_t spectrum_sparsity(const CubeFunction& f,
                                     double threshold = kDefaultSparsityThreshold) {
  if (!(threshold >= 0.0)) throw InvalidInput("sparsity threshold must be nonnegative");
  const auto fs = f.spectrum();
  return static_cast<std::size_t>(
      std::count_if(fs.begin(), fs.end(), [&](double c) { return std::abs(c) > threshold; }));
}

/// Sum_j |f^({j})|.
inline double level_one_mass(const CubeFunction& f) {
  CompensatedSum<double> acc;
  for (int j = 0; j < f.dimension(); ++j) acc += std::abs(f.spectrum()[Mask{1} << j]);
  return acc.value();
}

namespace detail {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace detail

/// Level coefficients of a symmetric function from its per-weight values:
/// f^_j = 2^-n sum_a F_a sum_i (-1)^i C(j,i) C(n-j,a-i).
inline std::vector<double> symmetric_level_coefficients(int n, std::span<const double> by_weight) {
  if (by_weight.size() != static_cast<std::size_t>(n) + 1)
    throw InvalidInput("need one value per Hamming weight 0..n");
  std::vector<double> levels(n + 1);
  const double scale = std::ldexp(1.0, -n);
  for (int j = 0; j <= n; ++j) {
    CompensatedSum<double> acc;
    for (int a = 0; a <= n; ++a) {
      double kraw = 0.0;
      for (int i = 0; i <= std::min(j, a); ++i) {
        const double term = detail::binomial(j, i) * detail::binomial(n - j, a - i);
        kraw += (i & 1) ? -term : term;
      }
      acc += by_weight[a] * kraw;
    }
    levels[j] = acc.value() * scale;
  }
  return levels;
}

}  // namespace pisier_lab
