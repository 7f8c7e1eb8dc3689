#pragma once

#include <string>

#include "json.hpp"

namespace pisier_lab {

inline constexpr double kBoundTolerance = 1e-9;

/// A checked inequality lhs <= rhs (or a recorded comparison when nothing is asserted).
struct BoundReport {
  std::string claim;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = true;
  nlohmann::json params = nlohmann::json::object();

  static BoundReport upper_bound(std::string claim, double lhs, double rhs,
                                 double tolerance = kBoundTolerance) {
    BoundReport r;
    r.claim = std::move(claim);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.holds = lhs <= rhs + tolerance;
    return r;
  }
};

inline nlohmann::json to_json(const BoundReport& r) {
  return {{"claim", r.claim}, {"lhs", r.lhs},   {"rhs", r.rhs},
          {"slack", r.slack}, {"holds", r.holds}, {"params", r.params}};
}

}  // namespace pisier_lab
