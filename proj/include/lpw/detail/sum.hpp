#pragma once

#include <cmath>

namespace lpw::detail {

// Neumaier compensated summation. Reductions over 2^22 samples otherwise
// drift by ~1e-10 relative depending on traversal order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace lpw::detail
