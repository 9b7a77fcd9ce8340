#pragma once

#include <cmath>

namespace vfp {

// Neumaier's variant of Kahan summation. Keeps the rounding error of long
// reductions (near-constant sensor columns, >10^4 rows) at O(eps).
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace vfp
