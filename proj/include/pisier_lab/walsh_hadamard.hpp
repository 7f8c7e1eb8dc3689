#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

#include "pisier_lab/errors.hpp"
#include "pisier_lab/parallel.hpp"

namespace pisier_lab {

namespace detail {

inline constexpr std::size_t kParallelButterflyLength = std::size_t{1} << 16;

inline void require_power_of_two(std::size_t length) {
  if (length == 0 || !std::has_single_bit(length))
    throw InvalidInput("transform length " + std::to_string(length) +
                       " is not a power of two");
}

}  // namespace detail

/// In-place unnormalized Walsh-Hadamard butterfly: data[S] <- sum_x data[x] (-1)^{|S&x|}.
inline void walsh_hadamard_inplace(std::span<double> data) {
  const std::size_t len = data.size();
  detail::require_power_of_two(len);
  for (std::size_t h = 1; h < len; h <<= 1) {
    auto pair = [&, h](std::size_t i) {
      const std::size_t lo = (i / h) * (2 * h) + (i % h);
      const double a = data[lo];
      const double b = data[lo + h];
      data[lo] = a + b;
      data[lo + h] = a - b;
    };
    if (len >= detail::kParallelButterflyLength) {
      parallel_for(0, len / 2, pair, std::size_t{1} << 14);
    } else {
      for (std::size_t i = 0; i < len / 2; ++i) pair(i);
    }
  }
}

/// Forward transform: spectrum[S] = E_x[f(x) chi_S(x)].
inline std::vector<double> fwht(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  walsh_hadamard_inplace(out);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (double& v : out) v *= scale;
  return out;
}

/// Inverse transform: values[x] = sum_S spectrum[S] chi_S(x).
inline std::vector<double> inverse_fwht(std::span<const double> spectrum) {
  std::vector<double> out(spectrum.begin(), spectrum.end());
  walsh_hadamard_inplace(out);
  return out;
}

}  // namespace pisier_lab
