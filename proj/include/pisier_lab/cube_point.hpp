#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "pisier_lab/errors.hpp"

namespace pisier_lab {

/// Largest cube dimension for which a full 2^n value table is materialized.
inline constexpr int kMaxDimension = 24;

using Mask = std::uint32_t;

inline constexpr std::size_t cube_size(int n) { return std::size_t{1} << n; }

inline void require_dimension(int n, int cap = kMaxDimension) {
  if (n < 1) throw InvalidInput("cube dimension must be at least 1");
  if (n > cap)
    throw ResourceError("cube dimension " + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
}

/// A subset S of {0, ..., n-1}; bit j set iff j is in S.
struct SubsetMask {
  Mask bits = 0;

  static constexpr SubsetMask from_indices(std::initializer_list<int> indices) {
    Mask b = 0;
    for (int j : indices) b |= Mask{1} << j;
    return SubsetMask{b};
  }

  constexpr int size() const { return std::popcount(bits); }
  constexpr bool contains(int j) const { return (bits >> j) & 1u; }
  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;
};

/// A point of {+1,-1}^n; bit j set iff x_j = -1.
struct CubePoint {
  Mask bits = 0;

  /// signs[j] must be +1 or -1.
  static constexpr CubePoint from_signs(std::initializer_list<int> signs) {
    Mask b = 0;
    int j = 0;
    for (int s : signs) {
      if (s < 0) b |= Mask{1} << j;
      ++j;
    }
    return CubePoint{b};
  }

  constexpr int coordinate(int j) const { return ((bits >> j) & 1u) ? -1 : 1; }
  /// Hamming weight: number of -1 coordinates.
  constexpr int weight() const { return std::popcount(bits); }
  friend constexpr bool operator==(CubePoint, CubePoint) = default;
};

inline constexpr CubePoint kAllOnes{0};

/// chi_S(x) = prod_{j in S} x_j = (-1)^{|S & x|}.
constexpr int character_eval(SubsetMask s, CubePoint x) {
  return (std::popcount(s.bits & x.bits) & 1) ? -1 : 1;
}

/// Coordinate-wise product x ⊙ z.
constexpr CubePoint group_mul(CubePoint x, CubePoint z) { return CubePoint{x.bits ^ z.bits}; }

}  // namespace pisier_lab
