#pragma once

#include <cassert>
#include <cmath>
#include <limits>

namespace outerprod {

// A value in R extended with -inf and +inf, never NaN. The min of
// log|t - lambda| over an interval containing lambda is -inf; the margin
// against such a side is +inf. Backed by an IEEE double, whose ordering and
// absorbing addition are exactly the wanted semantics once NaN is excluded.
class ExtendedReal {
 public:
  ExtendedReal() : v_(0.0) {}
  ExtendedReal(double v) : v_(v) { assert(!std::isnan(v_)); }

  static ExtendedReal neg_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity());
  }
  static ExtendedReal pos_infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_neg_infinity() const { return v_ == -std::numeric_limits<double>::infinity(); }
  bool is_pos_infinity() const { return v_ == std::numeric_limits<double>::infinity(); }

  // Finite value; callers check is_finite() first.
  double value() const {
    assert(is_finite());
    return v_;
  }

  // The underlying IEEE view, infinities included.
  double raw() const { return v_; }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    const double r = a.v_ + b.v_;
    assert(!std::isnan(r));  // opposite infinities never meet here
    return ExtendedReal(r);
  }
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
    const double r = a.v_ - b.v_;
    assert(!std::isnan(r));
    return ExtendedReal(r);
  }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }

 private:
  double v_;
};

}  // namespace outerprod
