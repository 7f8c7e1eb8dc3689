#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pisier_lab/bound_report.hpp"
#include "pisier_lab/compensated_sum.hpp"
#include "pisier_lab/cube_function.hpp"
#include "pisier_lab/norm.hpp"
#include "pisier_lab/parallel.hpp"

namespace pisier_lab {

/// f : {+1,-1}^n -> R^m, stored as m coordinate functions.
class VectorFunction {
 public:
  explicit VectorFunction(std::vector<CubeFunction> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InvalidInput("vector function needs at least one coordinate");
    for (const auto& c : coords_) require_same_dimension(coords_.front(), c);
  }

  static VectorFunction constant(int n, std::span<const double> v) {
    std::vector<CubeFunction> coords;
    coords.reserve(v.size());
    for (double c : v) coords.push_back(CubeFunction::constant(n, c));
    return VectorFunction(std::move(coords));
  }

  int dimension() const { return coords_.front().dimension(); }
  std::size_t target_dimension() const { return coords_.size(); }
  std::size_t points() const { return cube_size(dimension()); }
  const CubeFunction& coordinate(std::size_t i) const { return coords_.at(i); }
  std::span<const CubeFunction> coordinates() const { return coords_; }

  void evaluate_into(CubePoint x, std::span<double> out) const {
    for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i].values()[x.bits];
  }

  std::vector<double> operator()(CubePoint x) const {
    std::vector<double> out(coords_.size());
    evaluate_into(x, out);
    return out;
  }

  /// The vector Fourier coefficient f^(S) in R^m.
  std::vector<double> coefficient(SubsetMask s) const {
    std::vector<double> out(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i].spectrum()[s.bits];
    return out;
  }

 private:
  std::vector<CubeFunction> coords_;
};

inline void require_norm_dimension(const VectorFunction& f, const Norm& norm) {
  if (!norm.accepts(f.target_dimension()))
    throw InvalidInput("norm " + norm.description() + " is not defined on R^" +
                       std::to_string(f.target_dimension()));
}

/// ||f(x)|| for every point x, in bitmask order.
inline std::vector<double> pointwise_norms(const VectorFunction& f, const Norm& norm) {
  require_norm_dimension(f, norm);
  for (const auto& c : f.coordinates()) (void)c.values();
  std::vector<double> out(f.points());
  const std::size_t m = f.target_dimension();
  parallel_for(
      0, out.size(),
      [&](std::size_t x) {
        thread_local std::vector<double> buf;
        buf.resize(m);
        f.evaluate_into(CubePoint{static_cast<Mask>(x)}, buf);
        out[x] = norm(buf);
      },
      64);
  return out;
}

/// (E_X ||f(X)||^2)^{1/2}, exact average over all 2^n points.
inline double mean_square_norm(const VectorFunction& f, const Norm& norm) {
  const auto norms = pointwise_norms(f, norm);
  CompensatedSum<double> acc;
  for (double v : norms) acc += v * v;
  return std::sqrt(acc.value() / static_cast<double>(norms.size()));
}

inline VectorFunction vector_convolve(const VectorFunction& f, const CubeFunction& g) {
  if (f.dimension() != g.dimension()) throw InvalidInput("cube dimension mismatch in convolution");
  std::vector<CubeFunction> coords;
  coords.reserve(f.target_dimension());
  for (const auto& c : f.coordinates()) coords.push_back(convolve(c, g));
  return VectorFunction(std::move(coords));
}

inline VectorFunction rademacher_projection(const VectorFunction& f) {
  const int n = f.dimension();
  std::optional<CubeFunction> zero;
  std::vector<CubeFunction> coords;
  coords.reserve(f.target_dimension());
  for (const auto& c : f.coordinates()) {
    bool has_linear = false;
    for (int j = 0; j < n && !has_linear; ++j) has_linear = c.spectrum()[Mask{1} << j] != 0.0;
    if (has_linear) {
      coords.push_back(project_degree_one(c));
    } else {
      // coordinates without a linear part share one zero table
      if (!zero) zero = CubeFunction::constant(n, 0.0);
      coords.push_back(*zero);
    }
  }
  return VectorFunction(std::move(coords));
}

/// (T f)(x) = T (f(x)) for a linear map T : R^m -> R^k.
inline VectorFunction apply_linear(const Eigen::MatrixXd& t, const VectorFunction& f) {
  if (static_cast<std::size_t>(t.cols()) != f.target_dimension())
    throw InvalidInput("linear map column count does not match target dimension");
  const int n = f.dimension();
  std::vector<CubeFunction> coords;
  coords.reserve(static_cast<std::size_t>(t.rows()));
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    std::vector<double> spec(cube_size(n), 0.0);
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
      const double w = t(r, c);
      if (w == 0.0) continue;
      const auto src = f.coordinate(static_cast<std::size_t>(c)).spectrum();
      for (std::size_t s = 0; s < spec.size(); ++s) spec[s] += w * src[s];
    }
    coords.push_back(CubeFunction::from_spectrum(n, std::move(spec)));
  }
  return VectorFunction(std::move(coords));
}

/// (E||f*g||^2)^{1/2} <= E|g| (E||f||^2)^{1/2}.
inline BoundReport young_bound_check(const VectorFunction& f, const CubeFunction& g,
                                     const Norm& norm) {
  const double lhs = mean_square_norm(vector_convolve(f, g), norm);
  const double g_l1 = g.l1_norm();
  const double f_ms = mean_square_norm(f, norm);
  auto report = BoundReport::upper_bound("young_l1", lhs, g_l1 * f_ms);
  report.params = {{"n", f.dimension()},
                   {"m", f.target_dimension()},
                   {"norm", norm.description()},
                   {"g_l1", g_l1},
                   {"f_mean_square_norm", f_ms}};
  return report;
}

}  // namespace pisier_lab
