#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pisier_lab/vector_function.hpp"

namespace pisier_lab {

/// f : {+1,-1}^n -> R^m with i.i.d. standard normal Fourier coefficients,
/// drawn coordinate by coordinate, subsets in ascending bitmask order.
inline VectorFunction random_vector_function(int n, std::size_t m, std::uint64_t seed) {
  require_dimension(n);
  if (m == 0) throw InvalidInput("target dimension must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CubeFunction> coords;
  coords.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> spec(cube_size(n));
    for (double& c : spec) c = gauss(rng);
    coords.push_back(CubeFunction::from_spectrum(n, std::move(spec)));
  }
  return VectorFunction(std::move(coords));
}

inline CubeFunction random_cube_function(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> values(cube_size(n));
  for (double& v : values) v = gauss(rng);
  return CubeFunction::from_values(n, std::move(values));
}

}  // namespace pisier_lab
