#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "outerprod/admissibility.hpp"
#include "outerprod/extended_real.hpp"
#include "outerprod/integrals.hpp"
#include "outerprod/spectrum.hpp"

namespace outerprod {

enum class BoundStatus { holds, fails, degenerate_lhs_neg_inf, rhs_undefined };

inline const char* to_cstring(BoundStatus s) {
  switch (s) {
    case BoundStatus::holds: return "holds";
    case BoundStatus::fails: return "fails";
    case BoundStatus::degenerate_lhs_neg_inf: return "degenerate_lhs_neg_inf";
    case BoundStatus::rhs_undefined: return "rhs_undefined";
  }
  return "?";
}

enum class Statement { prop_key, theorem1, theorem2 };

inline const char* to_cstring(Statement s) {
  switch (s) {
    case Statement::prop_key: return "prop_key";
    case Statement::theorem1: return "theorem1";
    case Statement::theorem2: return "theorem2";
  }
  return "?";
}

// Both sides of one inequality statement. margin = rhs - lhs, so a -inf
// left side gives a +inf margin; degenerate_lhs_neg_inf is the vacuously
// true sub-case of holds, kept separate so campaigns can tally it. rhs and
// margin are meaningless when status == rhs_undefined (which admissibility
// rules out; it is reachable only by feeding rhs_correction_sum directly).
struct InequalitySides {
  ExtendedReal lhs;
  double rhs = 0.0;
  ExtendedReal margin;
  BoundStatus status = BoundStatus::holds;
  SpectrumMode mode = SpectrumMode::multiset;
  std::size_t count_multiset = 0;
  std::size_t count_set = 0;

  friend bool operator==(const InequalitySides&, const InequalitySides&) = default;
};

// min over [alpha, beta] of log|t - lam|: -inf for an interior (or
// endpoint) lam, else the log of the distance from lam to the interval.
inline ExtendedReal min_log_distance(double lam, double alpha, double beta) {
  if (!(alpha < beta)) {
    throw input_error("min_log_distance: alpha < beta required");
  }
  if (alpha <= lam && lam <= beta) return ExtendedReal::neg_infinity();
  const double dist = lam < alpha ? alpha - lam : lam - beta;
  return ExtendedReal(std::log(dist));
}

// Sum over the spectrum of log(1 - 2 lam / s) with s = ||a|| + ||b||,
// multiplicities respected per mode. nullopt when some argument is <= 0;
// under admissibility that cannot happen.
inline std::optional<double> rhs_correction_sum(const SpectrumMultiset& spec, double s) {
  CompensatedSum acc;
  for (const auto& e : spec.entries) {
    const double arg = 1.0 - 2.0 * e.eigenvalue / s;
    if (!(arg > 0.0)) return std::nullopt;
    acc.add(static_cast<double>(e.multiplicity) * std::log(arg));
  }
  return acc.value();
}

namespace detail {

struct BoundContext {
  double norm_a = 0.0;
  double norm_b = 0.0;
  double midpoint = 0.0;
  double delta = 0.0;  // ||b|| - ||a||
  SpectrumMultiset spec;
  std::size_t count_multiset = 0;
  std::size_t count_set = 0;
};

inline BoundContext make_bound_context(const Vector& a, const Vector& b, const NormKind& kind,
                                       SpectrumMode mode, bool relax_norm_floor) {
  const AdmissibilityReport rep = check_admissible(a, b, kind);
  std::vector<std::string> blocking;
  for (HypothesisFailure f : rep.failures) {
    if (relax_norm_floor && f == HypothesisFailure::norm_floor) continue;
    blocking.emplace_back(to_cstring(f));
  }
  if (!blocking.empty()) {
    std::string msg = "hypotheses violated:";
    for (const auto& name : blocking) msg += " " + name;
    throw hypothesis_error(msg, std::move(blocking));
  }

  BoundContext ctx;
  ctx.norm_a = rep.norm_a;
  ctx.norm_b = rep.norm_b;
  ctx.midpoint = rep.midpoint;
  ctx.delta = rep.norm_b - rep.norm_a;
  ctx.spec = rank_one_spectrum(a, b, mode);
  ctx.count_multiset = rank_one_spectrum(a, b, SpectrumMode::multiset).count();
  ctx.count_set = rank_one_spectrum(a, b, SpectrumMode::set).count();
  return ctx;
}

inline InequalitySides classify(ExtendedReal lhs, std::optional<double> rhs, SpectrumMode mode,
                                const BoundContext& ctx) {
  InequalitySides out;
  out.lhs = lhs;
  out.mode = mode;
  out.count_multiset = ctx.count_multiset;
  out.count_set = ctx.count_set;
  if (!rhs) {
    out.rhs = std::numeric_limits<double>::quiet_NaN();
    out.status = BoundStatus::rhs_undefined;
    return out;
  }
  out.rhs = *rhs;
  out.margin = ExtendedReal(*rhs) - lhs;
  if (lhs.is_neg_infinity()) {
    out.status = BoundStatus::degenerate_lhs_neg_inf;
  } else {
    out.status = lhs.value() <= *rhs ? BoundStatus::holds : BoundStatus::fails;
  }
  return out;
}

// count * (||b|| - ||a||) * log((||a||+||b||)/2) + correction. Shared by
// prop_key and theorem2, whose right-hand sides are the same formula.
inline std::optional<double> rhs_integral_form(std::size_t count, const BoundContext& ctx) {
  const std::optional<double> corr = rhs_correction_sum(ctx.spec, ctx.norm_a + ctx.norm_b);
  if (!corr) return std::nullopt;
  return static_cast<double>(count) * ctx.delta * std::log(ctx.midpoint) + *corr;
}

}  // namespace detail

// Sum of interval-minima of log|t - lambda| against
// count * log(midpoint) + correction / (||b|| - ||a||).
inline InequalitySides theorem1_sides(const Vector& a, const Vector& b, const NormKind& kind,
                                      SpectrumMode mode, bool relax_norm_floor = false) {
  const auto ctx = detail::make_bound_context(a, b, kind, mode, relax_norm_floor);

  double lhs = 0.0;  // -inf absorbs
  for (const auto& e : ctx.spec.entries) {
    lhs += static_cast<double>(e.multiplicity) *
           min_log_distance(e.eigenvalue, ctx.norm_a, ctx.norm_b).raw();
  }

  std::optional<double> rhs;
  if (const auto corr = rhs_correction_sum(ctx.spec, ctx.norm_a + ctx.norm_b)) {
    rhs = static_cast<double>(ctx.spec.count()) * std::log(ctx.midpoint) + *corr / ctx.delta;
  }
  return detail::classify(ExtendedReal(lhs), rhs, mode, ctx);
}

// The outer product against the integral-form right-hand side. The
// determinant identity forces the multiset spectrum on the left no matter
// which mode the right-hand side counts with. With verify_with_quadrature
// set, the closed form is cross-checked against adaptive_logdet_integral
// and a disagreement beyond the documented tolerance is a numerical error.
inline InequalitySides theorem2_sides(const Vector& a, const Vector& b, const NormKind& kind,
                                      SpectrumMode mode, const QuadratureConfig& quad = {},
                                      bool verify_with_quadrature = true,
                                      bool relax_norm_floor = false) {
  const auto ctx = detail::make_bound_context(a, b, kind, mode, relax_norm_floor);

  const double lhs = outer_product(a, b, kind, SpectrumMode::multiset);

  if (verify_with_quadrature) {
    const double q = adaptive_logdet_integral(a, b, kind, quad);
    const double ip = inner_product(a, b);
    const bool singular = ctx.norm_a <= ip && ip <= ctx.norm_b;
    const double tol = singular ? 1e-4 : 1e-8 * (1.0 + std::abs(lhs));
    if (!(std::abs(q - lhs) <= tol)) {
      throw quadrature_error("theorem2_sides: determinant quadrature " + std::to_string(q) +
                                 " disagrees with closed form " + std::to_string(lhs),
                             q, std::abs(q - lhs));
    }
  }

  return detail::classify(ExtendedReal(lhs), detail::rhs_integral_form(ctx.spec.count(), ctx),
                          mode, ctx);
}

// The outer product in the requested mode against the same right-hand side
// as theorem2. The two statements differ only in their left sides, so the
// shared formula lives in one helper.
inline InequalitySides prop_key_sides(const Vector& a, const Vector& b, const NormKind& kind,
                                      SpectrumMode mode, bool relax_norm_floor = false) {
  const auto ctx = detail::make_bound_context(a, b, kind, mode, relax_norm_floor);
  const double lhs = outer_product(a, b, kind, mode);
  return detail::classify(ExtendedReal(lhs), detail::rhs_integral_form(ctx.spec.count(), ctx),
                          mode, ctx);
}

}  // namespace outerprod
