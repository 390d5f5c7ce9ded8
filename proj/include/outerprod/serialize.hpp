#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "outerprod/admissibility.hpp"
#include "outerprod/bounds.hpp"
#include "outerprod/harness.hpp"
#include "outerprod/integrals.hpp"
#include "outerprod/spectrum.hpp"
#include "outerprod/vector.hpp"

namespace outerprod {

using nlohmann::json;

inline SpectrumMode parse_spectrum_mode(const std::string& s) {
  if (s == "multiset") return SpectrumMode::multiset;
  if (s == "set") return SpectrumMode::set;
  throw input_error("unknown spectrum mode '" + s + "' (expected multiset | set)");
}

inline BoundStatus parse_bound_status(const std::string& s) {
  if (s == "holds") return BoundStatus::holds;
  if (s == "fails") return BoundStatus::fails;
  if (s == "degenerate_lhs_neg_inf") return BoundStatus::degenerate_lhs_neg_inf;
  if (s == "rhs_undefined") return BoundStatus::rhs_undefined;
  throw input_error("unknown bound status '" + s + "'");
}

inline Statement parse_statement(const std::string& s) {
  if (s == "prop_key") return Statement::prop_key;
  if (s == "theorem1") return Statement::theorem1;
  if (s == "theorem2") return Statement::theorem2;
  throw input_error("unknown statement '" + s + "' (expected prop_key | theorem1 | theorem2)");
}

inline HypothesisFailure parse_hypothesis_failure(const std::string& s) {
  if (s == "NormOrder") return HypothesisFailure::norm_order;
  if (s == "NormFloor") return HypothesisFailure::norm_floor;
  if (s == "SpectrumBound") return HypothesisFailure::spectrum_bound;
  throw input_error("unknown hypothesis failure '" + s + "'");
}

// --- Vector / NormKind ---

inline void to_json(json& j, const Vector& v) { j = v.coords; }

inline void from_json(const json& j, Vector& v) {
  if (!j.is_array()) throw input_error("vector must be a JSON array of numbers");
  v.coords.clear();
  for (const auto& x : j) {
    if (!x.is_number()) throw input_error("vector must be a JSON array of numbers");
    v.coords.push_back(x.get<double>());
  }
  validate(v);
}

inline void to_json(json& j, const NormKind& k) { j = k.to_string(); }
inline void from_json(const json& j, NormKind& k) { k = NormKind::parse(j.get<std::string>()); }

// --- ExtendedReal: finite values as numbers, infinities as strings ---

inline void to_json(json& j, const ExtendedReal& x) {
  if (x.is_neg_infinity()) {
    j = "-inf";
  } else if (x.is_pos_infinity()) {
    j = "inf";
  } else {
    j = x.value();
  }
}

inline void from_json(const json& j, ExtendedReal& x) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") {
      x = ExtendedReal::neg_infinity();
      return;
    }
    if (s == "inf") {
      x = ExtendedReal::pos_infinity();
      return;
    }
    throw input_error("bad extended real '" + s + "'");
  }
  x = ExtendedReal(j.get<double>());
}

// --- Spectrum ---

inline void to_json(json& j, const SpectrumEntry& e) {
  j = json{{"eigenvalue", e.eigenvalue}, {"multiplicity", e.multiplicity}};
}

inline void from_json(const json& j, SpectrumEntry& e) {
  j.at("eigenvalue").get_to(e.eigenvalue);
  j.at("multiplicity").get_to(e.multiplicity);
}

inline void to_json(json& j, const SpectrumMultiset& s) {
  j = json{{"entries", s.entries}, {"mode", to_cstring(s.mode)}, {"count", s.count()}};
}

inline void from_json(const json& j, SpectrumMultiset& s) {
  j.at("entries").get_to(s.entries);
  s.mode = parse_spectrum_mode(j.at("mode").get<std::string>());
}

// --- Admissibility ---

inline void to_json(json& j, const AdmissibilityReport& r) {
  json failures = json::array();
  for (HypothesisFailure f : r.failures) failures.push_back(to_cstring(f));
  j = json{{"norm_a", r.norm_a},       {"norm_b", r.norm_b},   {"midpoint", r.midpoint},
           {"max_spec", r.max_spec},   {"failures", failures}, {"admissible", r.admissible()}};
}

inline void from_json(const json& j, AdmissibilityReport& r) {
  j.at("norm_a").get_to(r.norm_a);
  j.at("norm_b").get_to(r.norm_b);
  j.at("midpoint").get_to(r.midpoint);
  j.at("max_spec").get_to(r.max_spec);
  r.failures.clear();
  for (const auto& f : j.at("failures")) {
    r.failures.push_back(parse_hypothesis_failure(f.get<std::string>()));
  }
}

// --- Bounds ---

inline void to_json(json& j, const InequalitySides& s) {
  j = json{{"lhs", s.lhs},
           {"rhs", s.rhs},
           {"margin", s.margin},
           {"status", to_cstring(s.status)},
           {"mode", to_cstring(s.mode)},
           {"count_multiset", s.count_multiset},
           {"count_set", s.count_set}};
  if (std::isnan(s.rhs)) j["rhs"] = "nan";
}

inline void from_json(const json& j, InequalitySides& s) {
  j.at("lhs").get_to(s.lhs);
  if (j.at("rhs").is_string()) {
    s.rhs = std::numeric_limits<double>::quiet_NaN();
  } else {
    j.at("rhs").get_to(s.rhs);
  }
  j.at("margin").get_to(s.margin);
  s.status = parse_bound_status(j.at("status").get<std::string>());
  s.mode = parse_spectrum_mode(j.at("mode").get<std::string>());
  j.at("count_multiset").get_to(s.count_multiset);
  j.at("count_set").get_to(s.count_set);
}

// --- Quadrature config ---

inline void to_json(json& j, const QuadratureConfig& c) {
  j = json{{"abs_tol", c.abs_tol},
           {"rel_tol", c.rel_tol},
           {"max_depth", c.max_depth},
           {"singularity_margin", c.singularity_margin}};
}

inline void from_json(const json& j, QuadratureConfig& c) {
  j.at("abs_tol").get_to(c.abs_tol);
  j.at("rel_tol").get_to(c.rel_tol);
  j.at("max_depth").get_to(c.max_depth);
  j.at("singularity_margin").get_to(c.singularity_margin);
}

// --- Campaign config ---

inline void to_json(json& j, const CampaignConfig& c) {
  json modes = json::array();
  for (SpectrumMode m : c.modes) modes.push_back(to_cstring(m));
  j = json{{"trials", c.trials},
           {"seed", c.seed},
           {"dim_min", c.dim_min},
           {"dim_max", c.dim_max},
           {"norm_kind", c.norm_kind},
           {"coord_scale", c.coord_scale},
           {"modes", modes},
           {"quadrature", c.quadrature},
           {"check_quadrature_every", c.check_quadrature_every}};
}

inline void from_json(const json& j, CampaignConfig& c) {
  j.at("trials").get_to(c.trials);
  j.at("seed").get_to(c.seed);
  j.at("dim_min").get_to(c.dim_min);
  j.at("dim_max").get_to(c.dim_max);
  j.at("norm_kind").get_to(c.norm_kind);
  j.at("coord_scale").get_to(c.coord_scale);
  c.modes.clear();
  for (const auto& m : j.at("modes")) c.modes.push_back(parse_spectrum_mode(m.get<std::string>()));
  j.at("quadrature").get_to(c.quadrature);
  j.at("check_quadrature_every").get_to(c.check_quadrature_every);
}

// --- Maps keyed by Statement / SpectrumMode ---

template <class T>
json sides_map_to_json(const std::map<Statement, std::map<SpectrumMode, T>>& table) {
  json j = json::object();
  for (const auto& [stmt, per_mode] : table) {
    json inner = json::object();
    for (const auto& [mode, value] : per_mode) inner[to_cstring(mode)] = value;
    j[to_cstring(stmt)] = inner;
  }
  return j;
}

template <class T>
void sides_map_from_json(const json& j, std::map<Statement, std::map<SpectrumMode, T>>& table) {
  table.clear();
  for (const auto& [stmt_key, inner] : j.items()) {
    const Statement stmt = parse_statement(stmt_key);
    for (const auto& [mode_key, value] : inner.items()) {
      table[stmt][parse_spectrum_mode(mode_key)] = value.template get<T>();
    }
  }
}

// --- Harness records ---

inline void to_json(json& j, const QuadratureCheck& q) {
  j = json{{"checked", q.checked},
           {"singular", q.singular},
           {"failed", q.failed},
           {"discrepancy", q.discrepancy},
           {"best_estimate", q.best_estimate},
           {"error_bound", q.error_bound}};
}

inline void from_json(const json& j, QuadratureCheck& q) {
  j.at("checked").get_to(q.checked);
  j.at("singular").get_to(q.singular);
  j.at("failed").get_to(q.failed);
  j.at("discrepancy").get_to(q.discrepancy);
  j.at("best_estimate").get_to(q.best_estimate);
  j.at("error_bound").get_to(q.error_bound);
}

inline void to_json(json& j, const TrialRecord& r) {
  j = json{{"trial_index", r.trial_index},
           {"sub_seed", r.sub_seed},
           {"a", r.a},
           {"b", r.b},
           {"admissibility", r.admissibility},
           {"rejected_draws", r.rejected_draws},
           {"sides", sides_map_to_json(r.sides)},
           {"quadrature", r.quadrature}};
}

inline void from_json(const json& j, TrialRecord& r) {
  j.at("trial_index").get_to(r.trial_index);
  j.at("sub_seed").get_to(r.sub_seed);
  j.at("a").get_to(r.a);
  j.at("b").get_to(r.b);
  j.at("admissibility").get_to(r.admissibility);
  j.at("rejected_draws").get_to(r.rejected_draws);
  sides_map_from_json(j.at("sides"), r.sides);
  j.at("quadrature").get_to(r.quadrature);
}

inline void to_json(json& j, const StatusTally& t) {
  j = json{{"holds", t.holds},
           {"fails", t.fails},
           {"degenerate_lhs_neg_inf", t.degenerate_lhs_neg_inf},
           {"rhs_undefined", t.rhs_undefined}};
}

inline void from_json(const json& j, StatusTally& t) {
  j.at("holds").get_to(t.holds);
  j.at("fails").get_to(t.fails);
  j.at("degenerate_lhs_neg_inf").get_to(t.degenerate_lhs_neg_inf);
  j.at("rhs_undefined").get_to(t.rhs_undefined);
}

inline void to_json(json& j, const MarginStats& m) {
  j = json{{"count", m.count}, {"min", m.min}, {"max", m.max},   {"mean", m.mean}, {"p1", m.p1},
           {"p25", m.p25},     {"p50", m.p50}, {"p75", m.p75},   {"p99", m.p99}};
}

inline void from_json(const json& j, MarginStats& m) {
  j.at("count").get_to(m.count);
  j.at("min").get_to(m.min);
  j.at("max").get_to(m.max);
  j.at("mean").get_to(m.mean);
  j.at("p1").get_to(m.p1);
  j.at("p25").get_to(m.p25);
  j.at("p50").get_to(m.p50);
  j.at("p75").get_to(m.p75);
  j.at("p99").get_to(m.p99);
}

inline void to_json(json& j, const TrialOutcome& o) {
  j = json{{"margin", o.margin}, {"status", to_cstring(o.status)}};
}

inline void from_json(const json& j, TrialOutcome& o) {
  j.at("margin").get_to(o.margin);
  o.status = parse_bound_status(j.at("status").get<std::string>());
}

inline void to_json(json& j, const TrialRow& r) {
  j = json{{"trial_index", r.trial_index},
           {"dim", r.dim},
           {"norm_a", r.norm_a},
           {"norm_b", r.norm_b},
           {"inner_product", r.inner_product},
           {"outcomes", sides_map_to_json(r.outcomes)}};
}

inline void from_json(const json& j, TrialRow& r) {
  j.at("trial_index").get_to(r.trial_index);
  j.at("dim").get_to(r.dim);
  j.at("norm_a").get_to(r.norm_a);
  j.at("norm_b").get_to(r.norm_b);
  j.at("inner_product").get_to(r.inner_product);
  sides_map_from_json(j.at("outcomes"), r.outcomes);
}

inline void to_json(json& j, const QuadratureSummary& q) {
  j = json{{"checked", q.checked},
           {"singular", q.singular},
           {"failures_nonsingular", q.failures_nonsingular},
           {"failures_singular", q.failures_singular},
           {"max_discrepancy_nonsingular", q.max_discrepancy_nonsingular},
           {"max_discrepancy_singular", q.max_discrepancy_singular}};
}

inline void from_json(const json& j, QuadratureSummary& q) {
  j.at("checked").get_to(q.checked);
  j.at("singular").get_to(q.singular);
  j.at("failures_nonsingular").get_to(q.failures_nonsingular);
  j.at("failures_singular").get_to(q.failures_singular);
  j.at("max_discrepancy_nonsingular").get_to(q.max_discrepancy_nonsingular);
  j.at("max_discrepancy_singular").get_to(q.max_discrepancy_singular);
}

inline void to_json(json& j, const CampaignReport& r) {
  j = json{{"config", r.config},
           {"rejection_count", r.rejection_count},
           {"totals", sides_map_to_json(r.totals)},
           {"margin_stats", sides_map_to_json(r.margin_stats)},
           {"trial_rows", r.trial_rows},
           {"counterexamples", r.counterexamples},
           {"quadrature", r.quadrature}};
}

inline void from_json(const json& j, CampaignReport& r) {
  j.at("config").get_to(r.config);
  j.at("rejection_count").get_to(r.rejection_count);
  sides_map_from_json(j.at("totals"), r.totals);
  sides_map_from_json(j.at("margin_stats"), r.margin_stats);
  j.at("trial_rows").get_to(r.trial_rows);
  j.at("counterexamples").get_to(r.counterexamples);
  j.at("quadrature").get_to(r.quadrature);
}

// --- CSV ---

// 17 significant digits: enough for binary64 values to round-trip.
inline std::string format_double_17(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_extended_17(const ExtendedReal& x) { return format_double_17(x.raw()); }

// One row per trial; margin/status column pair per statement and mode.
inline void write_campaign_csv(const CampaignReport& report, std::ostream& os) {
  std::vector<SpectrumMode> modes = report.config.modes;
  std::sort(modes.begin(), modes.end());
  const Statement statements[] = {Statement::prop_key, Statement::theorem1, Statement::theorem2};

  os << "trial_index,dim,norm_a,norm_b,inner_product";
  for (Statement stmt : statements) {
    for (SpectrumMode mode : modes) {
      os << ',' << to_cstring(stmt) << '_' << to_cstring(mode) << "_margin";
      os << ',' << to_cstring(stmt) << '_' << to_cstring(mode) << "_status";
    }
  }
  os << '\n';

  for (const TrialRow& row : report.trial_rows) {
    os << row.trial_index << ',' << row.dim << ',' << format_double_17(row.norm_a) << ','
       << format_double_17(row.norm_b) << ',' << format_double_17(row.inner_product);
    for (Statement stmt : statements) {
      for (SpectrumMode mode : modes) {
        const TrialOutcome& o = row.outcomes.at(stmt).at(mode);
        os << ',' << format_extended_17(o.margin) << ',' << to_cstring(o.status);
      }
    }
    os << '\n';
  }
}

}  // namespace outerprod
