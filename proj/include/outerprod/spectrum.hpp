#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "outerprod/compensated.hpp"
#include "outerprod/errors.hpp"
#include "outerprod/vector.hpp"

namespace outerprod {

// Whether eigenvalues are counted with algebraic multiplicity (n values for
// an n-dimensional ab^T) or as distinct values (at most 2). Both readings
// are first-class everywhere downstream.
enum class SpectrumMode { multiset, set };

inline const char* to_cstring(SpectrumMode m) {
  return m == SpectrumMode::multiset ? "multiset" : "set";
}

struct SpectrumEntry {
  double eigenvalue = 0.0;
  std::size_t multiplicity = 0;

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

// Spectrum of a rank-1 matrix ab^T: {<a,b>, 0^(n-1)} when <a,b> != 0, else
// {0^n}. In set mode duplicates collapse and every multiplicity is 1.
struct SpectrumMultiset {
  std::vector<SpectrumEntry> entries;  // nonzero eigenvalue first when present
  SpectrumMode mode = SpectrumMode::multiset;

  std::size_t count() const {
    if (mode == SpectrumMode::set) return entries.size();
    std::size_t n = 0;
    for (const auto& e : entries) n += e.multiplicity;
    return n;
  }

  double max_eigenvalue() const {
    double m = entries.front().eigenvalue;
    for (const auto& e : entries) m = std::max(m, e.eigenvalue);
    return m;
  }

  friend bool operator==(const SpectrumMultiset&, const SpectrumMultiset&) = default;
};

inline double inner_product(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  return compensated_dot(a.coords, b.coords);
}

// <a,b> is kept exactly as computed: it collapses into the zero eigenvalue
// only when it is exactly 0 in floating point, so #Spec in set mode never
// changes by snapping.
inline SpectrumMultiset rank_one_spectrum(const Vector& a, const Vector& b, SpectrumMode mode) {
  validate(a, "a");
  validate(b, "b");
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  const double ip = inner_product(a, b);

  SpectrumMultiset spec;
  spec.mode = mode;
  if (ip == 0.0) {
    spec.entries.push_back({0.0, mode == SpectrumMode::multiset ? n : 1});
  } else {
    spec.entries.push_back({ip, 1});
    if (n > 1) {
      spec.entries.push_back({0.0, mode == SpectrumMode::multiset ? n - 1 : 1});
    }
  }
  return spec;
}

// det(ab^T - tI) by the matrix determinant lemma: (-t)^(n-1) (<a,b> - t).
inline double det_rank_one_shift(const Vector& a, const Vector& b, double t) {
  validate(a, "a");
  validate(b, "b");
  require_same_dim(a, b);
  double pw = 1.0;
  for (std::size_t i = 1; i < a.dim(); ++i) pw *= -t;
  return pw * (inner_product(a, b) - t);
}

}  // namespace outerprod
