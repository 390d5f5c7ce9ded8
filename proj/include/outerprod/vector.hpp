#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "outerprod/compensated.hpp"
#include "outerprod/errors.hpp"

namespace outerprod {

// Finite-dimensional real coordinate vector. dim >= 1 and every coordinate
// finite; enforced at the API boundaries via validate().
struct Vector {
  std::vector<double> coords;

  Vector() = default;
  Vector(std::initializer_list<double> init) : coords(init) {}
  explicit Vector(std::vector<double> c) : coords(std::move(c)) {}

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const Vector&, const Vector&) = default;
};

inline void validate(const Vector& v, const char* name = "vector") {
  if (v.dim() == 0) {
    throw input_error(std::string(name) + ": dimension must be >= 1");
  }
  for (double x : v.coords) {
    if (!std::isfinite(x)) {
      throw input_error(std::string(name) + ": coordinates must be finite");
    }
  }
}

inline void require_same_dim(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) {
    throw input_error("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
}

enum class NormTag { euclidean, one, sup, p };

// Which norm the space carries. The spectrum of ab^T does not depend on it,
// but every bound does, so the choice is an explicit test axis.
// Wire format: "l2" | "l1" | "linf" | "lp:<p>".
class NormKind {
 public:
  NormKind() : NormKind(NormTag::euclidean, 2.0) {}

  static NormKind euclidean() { return {NormTag::euclidean, 2.0}; }
  static NormKind one() { return {NormTag::one, 1.0}; }
  static NormKind sup() { return {NormTag::sup, 0.0}; }
  static NormKind p_norm(double p) {
    if (!std::isfinite(p) || p <= 1.0) {
      throw config_error("p-norm requires finite p > 1, got " + std::to_string(p));
    }
    return {NormTag::p, p};
  }

  NormTag tag() const { return tag_; }
  double p() const { return p_; }

  static NormKind parse(const std::string& text) {
    if (text == "l2") return euclidean();
    if (text == "l1") return one();
    if (text == "linf") return sup();
    if (text.rfind("lp:", 0) == 0) {
      const std::string num = text.substr(3);
      double p = 0.0;
      const char* first = num.data();
      const char* last = num.data() + num.size();
      auto [ptr, ec] = std::from_chars(first, last, p);
      if (ec != std::errc{} || ptr != last) {
        throw input_error("unparseable norm order in '" + text + "'");
      }
      return p_norm(p);
    }
    throw input_error("unknown norm kind '" + text + "' (expected l2 | l1 | linf | lp:<p>)");
  }

  std::string to_string() const {
    switch (tag_) {
      case NormTag::euclidean: return "l2";
      case NormTag::one: return "l1";
      case NormTag::sup: return "linf";
      case NormTag::p: {
        char buf[40];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p_);
        return "lp:" + std::string(buf, ptr);
      }
    }
    return "l2";
  }

  friend bool operator==(const NormKind&, const NormKind&) = default;

 private:
  NormKind(NormTag t, double p) : tag_(t), p_(p) {}

  NormTag tag_;
  double p_;
};

// p-norms are scaled by the largest coordinate before exponentiation so
// homogeneity survives coordinates far from 1.
inline double norm(const Vector& v, const NormKind& kind) {
  validate(v);
  switch (kind.tag()) {
    case NormTag::one: {
      CompensatedSum acc;
      for (double x : v.coords) acc.add(std::abs(x));
      return acc.value();
    }
    case NormTag::sup: {
      double m = 0.0;
      for (double x : v.coords) m = std::max(m, std::abs(x));
      return m;
    }
    case NormTag::euclidean: {
      double m = 0.0;
      for (double x : v.coords) m = std::max(m, std::abs(x));
      if (m == 0.0) return 0.0;
      CompensatedSum acc;
      for (double x : v.coords) {
        const double r = x / m;
        acc.add(r * r);
      }
      return m * std::sqrt(acc.value());
    }
    case NormTag::p: {
      double m = 0.0;
      for (double x : v.coords) m = std::max(m, std::abs(x));
      if (m == 0.0) return 0.0;
      CompensatedSum acc;
      for (double x : v.coords) acc.add(std::pow(std::abs(x) / m, kind.p()));
      return m * std::pow(acc.value(), 1.0 / kind.p());
    }
  }
  return 0.0;
}

}  // namespace outerprod
