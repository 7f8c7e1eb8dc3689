#pragma once

#include <bit>
#include <cmath>
#include <limits>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pisier_lab/cube_function.hpp"

// Flat binary layout: n as little-endian uint32, then 2^n little-endian
// IEEE-754 doubles in value order (point bitmask ascending).

namespace pisier_lab {

namespace detail {

static_assert(sizeof(double) == 8 && std::numeric_limits<double>::is_iec559);

template <typename T>
T byteswap_if_big(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&v, bytes, sizeof(T));
  }
  return v;
}

template <typename T>
void write_le(std::ostream& os, T v) {
  v = byteswap_if_big(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
    throw InvalidInput("truncated cube function stream");
  return byteswap_if_big(v);
}

}  // namespace detail

inline void write_binary(std::ostream& os, const CubeFunction& f) {
  detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.dimension()));
  for (double v : f.values()) detail::write_le<double>(os, v);
}

inline CubeFunction read_binary(std::istream& is) {
  const auto n = detail::read_le<std::uint32_t>(is);
  if (n < 1 || n > static_cast<std::uint32_t>(kMaxDimension))
    throw InvalidInput("binary header dimension " + std::to_string(n) + " out of range");
  std::vector<double> values(cube_size(static_cast<int>(n)));
  for (double& v : values) v = detail::read_le<double>(is);
  return CubeFunction::from_values(static_cast<int>(n), std::move(values));
}

/// {"n": n, "spectrum": {"<mask>": coeff, ...}} with entries |coeff| > threshold.
inline nlohmann::json spectrum_to_json(const CubeFunction& f, double threshold = 0.0) {
  nlohmann::json sparse = nlohmann::json::object();
  const auto spec = f.spectrum();
  for (std::size_t s = 0; s < spec.size(); ++s)
    if (std::abs(spec[s]) > threshold) sparse[std::to_string(s)] = spec[s];
  return {{"n", f.dimension()}, {"spectrum", std::move(sparse)}};
}

inline CubeFunction spectrum_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  require_dimension(n);
  std::vector<double> spec(cube_size(n), 0.0);
  for (const auto& [key, value] : j.at("spectrum").items()) {
    std::size_t pos = 0;
    const unsigned long long mask = std::stoull(key, &pos);
    if (pos != key.size() || mask >= spec.size())
      throw InvalidInput("spectrum key '" + key + "' is not a subset of [n]");
    spec[mask] = value.get<double>();
  }
  return CubeFunction::from_spectrum(n, std::move(spec));
}

}  // namespace pisier_lab
