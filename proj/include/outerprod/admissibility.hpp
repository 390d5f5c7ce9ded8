#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "outerprod/spectrum.hpp"
#include "outerprod/vector.hpp"

namespace outerprod {

enum class HypothesisFailure { norm_order, norm_floor, spectrum_bound };

inline const char* to_cstring(HypothesisFailure f) {
  switch (f) {
    case HypothesisFailure::norm_order: return "NormOrder";
    case HypothesisFailure::norm_floor: return "NormFloor";
    case HypothesisFailure::spectrum_bound: return "SpectrumBound";
  }
  return "?";
}

// Standing hypotheses of the bound statements:
//   NormOrder:     ||b|| > ||a||
//   NormFloor:     ||a|| > 1
//   SpectrumBound: (||a|| + ||b||)/2 > |max Spec(ab^T)|
// failures is empty exactly when all three hold.
struct AdmissibilityReport {
  double norm_a = 0.0;
  double norm_b = 0.0;
  double midpoint = 0.0;
  double max_spec = 0.0;
  std::vector<HypothesisFailure> failures;

  bool admissible() const { return failures.empty(); }

  friend bool operator==(const AdmissibilityReport&, const AdmissibilityReport&) = default;
};

// Inequalities are strict and comparisons exact: inputs are user data, not
// computed estimates, and the proofs divide by ||b|| - ||a||.
inline AdmissibilityReport check_admissible(const Vector& a, const Vector& b,
                                            const NormKind& kind) {
  validate(a, "a");
  validate(b, "b");
  require_same_dim(a, b);

  AdmissibilityReport rep;
  rep.norm_a = norm(a, kind);
  rep.norm_b = norm(b, kind);
  rep.midpoint = (rep.norm_a + rep.norm_b) / 2.0;
  rep.max_spec = rank_one_spectrum(a, b, SpectrumMode::multiset).max_eigenvalue();

  if (!(rep.norm_b > rep.norm_a)) rep.failures.push_back(HypothesisFailure::norm_order);
  if (!(rep.norm_a > 1.0)) rep.failures.push_back(HypothesisFailure::norm_floor);
  if (!(rep.midpoint > std::abs(rep.max_spec))) {
    rep.failures.push_back(HypothesisFailure::spectrum_bound);
  }
  return rep;
}

}  // namespace outerprod
