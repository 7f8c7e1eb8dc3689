#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pisier_lab/bound_report.hpp"
#include "pisier_lab/norm.hpp"

namespace pisier_lab {

/// Invertible T with ||Tx||_2 <= ||x|| <= d ||Tx||_2 for all x.
class SandwichTransform {
 public:
  SandwichTransform(Eigen::MatrixXd matrix, double distortion)
      : matrix_(std::move(matrix)), distortion_(distortion) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
      throw InvalidInput("sandwich transform must be a nonempty square matrix");
    if (!(distortion_ >= 1.0)) throw InvalidInput("sandwich distortion must be >= 1");
    if (!Eigen::FullPivLU<Eigen::MatrixXd>(matrix_).isInvertible())
      throw InvalidInput("sandwich transform is singular");
  }

  /// Analytic transform for the lp norm on R^m:
  ///   p >= 2: m^{1/p-1/2} ||x||_2 <= ||x||_p <= ||x||_2
  ///   p <= 2: ||x||_2 <= ||x||_p <= m^{1/p-1/2} ||x||_2
  static SandwichTransform for_lp(double p, std::size_t m) {
    if (!(p >= 1.0)) throw InvalidInput("lp norm needs p >= 1");
    if (m == 0) throw InvalidInput("dimension must be at least 1");
    const double md = static_cast<double>(m);
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double exponent = std::abs(inv_p - 0.5);
    const double d = std::pow(md, exponent);
    const auto id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    if (p >= 2.0) return SandwichTransform(id / d, d);
    return SandwichTransform(id, d);
  }

  static SandwichTransform for_norm(const Norm& norm, std::size_t m) {
    if (norm.kind() != NormKind::kLp)
      throw InvalidInput("no analytic sandwich transform for " + norm.description());
    return for_lp(norm.p(), m);
  }

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  double distortion() const { return distortion_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  Eigen::MatrixXd matrix_;
  double distortion_;
};

/// Checks both sandwich sides on random unit directions plus the 2m signed
/// basis vectors. lhs = max ||Tx||_2/||x|| and rhs = max ||x||/(d||Tx||_2);
/// both must be <= 1. slack is the worst absolute gap on unit vectors.
inline BoundReport sandwich_validate(const SandwichTransform& t, const Norm& norm,
                                     int sample_count, std::uint64_t seed = 0x5a4d) {
  const std::size_t m = t.dimension();
  if (!norm.accepts(m)) throw InvalidInput("norm dimension does not match transform");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  double lower_ratio = 0.0;
  double upper_ratio = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x(static_cast<Eigen::Index>(m));
  auto probe = [&] {
    x.normalize();
    const double tx = (t.matrix() * x).norm();
    const double nx = norm(std::span<const double>(x.data(), m));
    lower_ratio = std::max(lower_ratio, tx / nx);
    upper_ratio = std::max(upper_ratio, nx / (t.distortion() * tx));
    worst = std::min({worst, nx - tx, t.distortion() * tx - nx});
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (double sign : {1.0, -1.0}) {
      x.setZero();
      x[static_cast<Eigen::Index>(i)] = sign;
      probe();
    }
  }
  for (int s = 0; s < sample_count; ++s) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    if (x.norm() == 0.0) continue;
    probe();
  }

  BoundReport r;
  r.claim = "sandwich";
  r.lhs = lower_ratio;
  r.rhs = upper_ratio;
  r.slack = worst;
  r.holds = worst >= -kBoundTolerance;
  r.params = {{"m", m},
              {"distortion", t.distortion()},
              {"norm", norm.description()},
              {"samples", sample_count},
              {"probes", 2 * m + static_cast<std::size_t>(std::max(0, sample_count))}};
  return r;
}

}  // namespace pisier_lab
