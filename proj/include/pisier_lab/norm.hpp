#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pisier_lab/cube_point.hpp"
#include "pisier_lab/errors.hpp"
#include "pisier_lab/walsh_hadamard.hpp"

namespace pisier_lab {

/// ||v|| = max_z |sum_S v_S chi_S(z)| over z in {+1,-1}^n_dual, i.e. the sup
/// norm of the function whose spectrum is v. Coordinates of v follow the
/// family in ascending bitmask order.
class SupFunctional {
 public:
  SupFunctional(int n_dual, std::vector<Mask> family) : n_dual_(n_dual), family_(std::move(family)) {
    if (n_dual_ < 1) throw InvalidInput("sup-functional dimension must be at least 1");
    if (n_dual_ > kMaxDimension)
      throw ResourceError("sup-functional dimension " + std::to_string(n_dual_) +
                          " exceeds cap " + std::to_string(kMaxDimension));
    std::sort(family_.begin(), family_.end());
    family_.erase(std::unique(family_.begin(), family_.end()), family_.end());
    if (family_.empty()) throw InvalidInput("sup-functional family is empty");
    if (family_.back() >= cube_size(n_dual_)) throw InvalidInput("family subset outside [n]");
  }

  int cube_dimension() const { return n_dual_; }
  std::size_t dimension() const { return family_.size(); }
  std::span<const Mask> family() const { return family_; }

  /// Position of subset s in the coordinate order, if present.
  std::optional<std::size_t> index_of(Mask s) const {
    auto it = std::lower_bound(family_.begin(), family_.end(), s);
    if (it == family_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - family_.begin());
  }

  double operator()(std::span<const double> v) const {
    if (v.size() != family_.size()) throw InvalidInput("vector length does not match family size");
    std::vector<double> table(cube_size(n_dual_), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) table[family_[i]] = v[i];
    walsh_hadamard_inplace(table);
    double best = 0.0;
    for (double g : table) best = std::max(best, std::abs(g));
    return best;
  }

 private:
  int n_dual_;
  std::vector<Mask> family_;
};

inline double sup_functional_norm(const SupFunctional& norm, std::span<const double> v) {
  return norm(v);
}

inline double lp_norm(std::span<const double> v, double p) {
  if (std::isinf(p)) {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

enum class NormKind { kLp, kSupFunctional, kSupplied };

/// A norm on R^m. Lp norms accept any m; the other kinds have a fixed dimension.
class Norm {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  static Norm lp(double p) {
    if (!(p >= 1.0)) throw InvalidInput("lp norm needs p >= 1");
    Norm n;
    n.kind_ = NormKind::kLp;
    n.p_ = p;
    n.eval_ = [p](std::span<const double> v) { return lp_norm(v, p); };
    return n;
  }
  static Norm l1() { return lp(1.0); }
  static Norm l2() { return lp(2.0); }
  static Norm linf() { return lp(std::numeric_limits<double>::infinity()); }

  static Norm sup_functional(SupFunctional functional) {
    Norm n;
    n.kind_ = NormKind::kSupFunctional;
    n.dimension_ = functional.dimension();
    n.sup_ = std::make_shared<const SupFunctional>(std::move(functional));
    n.eval_ = [sup = n.sup_](std::span<const double> v) { return (*sup)(v); };
    return n;
  }

  /// Caller-supplied evaluator, spot-checked for nonnegativity, absolute
  /// homogeneity and the triangle inequality on random Gaussian triples.
  static Norm supplied(std::string name, std::size_t dimension, Evaluator evaluator,
                       std::uint64_t seed = 0x5eed, int samples = 64) {
    if (dimension == 0) throw InvalidInput("supplied norm needs dimension >= 1");
    if (!evaluator) throw InvalidInput("supplied norm needs an evaluator");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto draw = [&] {
      std::vector<double> v(dimension);
      for (double& x : v) x = gauss(rng);
      return v;
    };
    constexpr double kTol = 1e-9;
    for (int t = 0; t < samples; ++t) {
      const auto u = draw();
      const auto w = draw();
      const double lambda = gauss(rng) * 3.0;
      std::vector<double> sum(dimension), scaled(dimension);
      for (std::size_t i = 0; i < dimension; ++i) {
        sum[i] = u[i] + w[i];
        scaled[i] = lambda * u[i];
      }
      const double nu = evaluator(u), nw = evaluator(w);
      if (!(nu >= 0.0) || !(nw >= 0.0))
        throw InvalidInput("supplied norm '" + name + "' returned a negative value");
      const double homog = std::abs(evaluator(scaled) - std::abs(lambda) * nu);
      if (homog > kTol * std::max(1.0, std::abs(lambda) * nu))
        throw InvalidInput("supplied norm '" + name + "' is not absolutely homogeneous");
      if (evaluator(sum) > nu + nw + kTol * std::max(1.0, nu + nw))
        throw InvalidInput("supplied norm '" + name + "' violates the triangle inequality");
    }
    Norm n;
    n.kind_ = NormKind::kSupplied;
    n.dimension_ = dimension;
    n.name_ = std::move(name);
    n.eval_ = std::move(evaluator);
    return n;
  }

  double operator()(std::span<const double> v) const { return eval_(v); }

  NormKind kind() const { return kind_; }
  /// Only meaningful for kLp.
  double p() const { return p_; }
  std::optional<std::size_t> dimension() const { return dimension_; }
  const SupFunctional* sup_functional() const { return sup_.get(); }

  bool accepts(std::size_t m) const { return !dimension_ || *dimension_ == m; }

  std::string description() const {
    switch (kind_) {
      case NormKind::kLp: {
        if (std::isinf(p_)) return "linf";
        std::ostringstream os;
        os << 'l' << p_;
        return os.str();
      }
      case NormKind::kSupFunctional:
        return "sup_functional(n=" + std::to_string(sup_->cube_dimension()) +
               ", |F|=" + std::to_string(sup_->dimension()) + ")";
      case NormKind::kSupplied:
        return "supplied(" + name_ + ")";
    }
    return "unknown";
  }

 private:
  Norm() = default;

  NormKind kind_ = NormKind::kLp;
  double p_ = 2.0;
  std::optional<std::size_t> dimension_;
  std::string name_;
  std::shared_ptr<const SupFunctional> sup_;
  Evaluator eval_;
};

}  // namespace pisier_lab
