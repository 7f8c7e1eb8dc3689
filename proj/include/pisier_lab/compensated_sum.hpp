#pragma once

#include <cmath>

namespace pisier_lab {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
/// accurate when an addend is larger in magnitude than the running sum.
template <typename Value = double>
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(Value initial) : sum_(initial) {}

  constexpr CompensatedSum& operator+=(Value value) {
    const Value t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  constexpr Value value() const { return sum_ + compensation_; }
  constexpr operator Value() const { return value(); }

 private:
  Value sum_{0};
  Value compensation_{0};
};

template <typename Range>
double compensated_total(const Range& range) {
  CompensatedSum<double> acc;
  for (const auto& v : range) acc += v;
  return acc.value();
}

}  // namespace pisier_lab
