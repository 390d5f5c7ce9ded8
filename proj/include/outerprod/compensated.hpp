#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace outerprod {

// Neumaier's variant of Kahan summation: the carry also catches the case
// where the incoming term is larger than the running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Dot product with fma-recovered product errors feeding a compensated
// accumulator (Ogita-Rump dot2). The single nonzero eigenvalue of ab^T is
// this number, so it gets the full treatment.
inline double compensated_dot(std::span<const double> a, std::span<const double> b) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] * b[i];
    acc.add(p);
    acc.add(std::fma(a[i], b[i], -p));
  }
  return acc.value();
}

}  // namespace outerprod
