#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "outerprod/admissibility.hpp"
#include "outerprod/bounds.hpp"
#include "outerprod/errors.hpp"
#include "outerprod/integrals.hpp"
#include "outerprod/rng.hpp"
#include "outerprod/spectrum.hpp"
#include "outerprod/vector.hpp"

namespace outerprod {

struct CampaignConfig {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  int dim_min = 2;
  int dim_max = 6;
  NormKind norm_kind = NormKind::euclidean();
  double coord_scale = 5.0;
  std::vector<SpectrumMode> modes{SpectrumMode::multiset, SpectrumMode::set};
  QuadratureConfig quadrature{};
  std::uint64_t check_quadrature_every = 100;

  friend bool operator==(const CampaignConfig&, const CampaignConfig&) = default;
};

inline void validate(const CampaignConfig& cfg) {
  if (cfg.trials < 1) throw config_error("trials must be >= 1");
  if (cfg.dim_min < 2 || cfg.dim_max > 8 || cfg.dim_min > cfg.dim_max) {
    throw config_error("dimension range must satisfy 2 <= dim_min <= dim_max <= 8");
  }
  if (!(cfg.coord_scale > 0.0) || !std::isfinite(cfg.coord_scale)) {
    throw config_error("coord_scale must be positive and finite");
  }
  if (cfg.modes.empty()) throw config_error("at least one spectrum mode is required");
  for (std::size_t i = 0; i < cfg.modes.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.modes.size(); ++j) {
      if (cfg.modes[i] == cfg.modes[j]) throw config_error("duplicate spectrum mode");
    }
  }
  if (cfg.check_quadrature_every < 1) throw config_error("check_quadrature_every must be >= 1");
  validate(cfg.quadrature);
}

struct SampledPair {
  Vector a;
  Vector b;
  std::uint32_t rejected_draws = 0;
};

// Rejection sampling of an admissible pair. Coordinates are uniform in
// [-coord_scale, coord_scale]; the pair is swapped so ||b|| > ||a||, both
// are rescaled by a common factor when ||a|| <= 1 (the smallest nudge that
// clears the floor), and the draw is rejected when the spectrum bound
// still fails. Deterministic in sub_seed.
inline SampledPair sample_admissible_pair(std::uint64_t sub_seed, int dim_min, int dim_max,
                                          double coord_scale, const NormKind& kind) {
  constexpr std::uint32_t kMaxRejections = 10000;
  SplitMix64 rng(sub_seed);
  SampledPair out;

  for (;;) {
    const int dim =
        dim_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(dim_max - dim_min + 1)));
    Vector a, b;
    a.coords.resize(dim);
    b.coords.resize(dim);
    for (double& x : a.coords) x = rng.uniform(-coord_scale, coord_scale);
    for (double& x : b.coords) x = rng.uniform(-coord_scale, coord_scale);

    double na = norm(a, kind);
    double nb = norm(b, kind);
    if (nb < na) {
      std::swap(a, b);
      std::swap(na, nb);
    }
    if (na == nb || na == 0.0 || !std::isfinite(nb)) {
      if (++out.rejected_draws >= kMaxRejections) break;
      continue;
    }
    if (na <= 1.0) {
      const double factor = (1.0 + 1e-9) / na;
      for (double& x : a.coords) x *= factor;
      for (double& x : b.coords) x *= factor;
    }
    // A scale large enough to overflow the inner product is a rejection,
    // not a mysteriously inadmissible downstream value.
    bool finite = true;
    for (double x : a.coords) finite = finite && std::isfinite(x);
    for (double x : b.coords) finite = finite && std::isfinite(x);
    if (finite) finite = std::isfinite(inner_product(a, b));
    if (!finite) {
      if (++out.rejected_draws >= kMaxRejections) break;
      continue;
    }
    if (check_admissible(a, b, kind).admissible()) {
      out.a = std::move(a);
      out.b = std::move(b);
      return out;
    }
    if (++out.rejected_draws >= kMaxRejections) break;
  }
  throw sampler_exhausted_error("sampler: " + std::to_string(kMaxRejections) +
                                " consecutive rejections; coord_scale " +
                                std::to_string(coord_scale) + " looks mis-configured");
}

struct QuadratureCheck {
  bool checked = false;
  bool singular = false;
  bool failed = false;
  double discrepancy = 0.0;     // |closed form - quadrature| when it ran
  double best_estimate = 0.0;   // carried out of a quadrature failure
  double error_bound = 0.0;

  friend bool operator==(const QuadratureCheck&, const QuadratureCheck&) = default;
};

using SidesTable = std::map<Statement, std::map<SpectrumMode, InequalitySides>>;

// One fuzz trial, reproducible bit-exactly from (seed, trial_index).
struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::uint64_t sub_seed = 0;
  Vector a;
  Vector b;
  AdmissibilityReport admissibility;
  std::uint32_t rejected_draws = 0;
  SidesTable sides;
  QuadratureCheck quadrature;
  double wall_seconds = 0.0;  // never serialized

  bool any_fails() const {
    for (const auto& [stmt, per_mode] : sides) {
      for (const auto& [mode, s] : per_mode) {
        if (s.status == BoundStatus::fails) return true;
      }
    }
    return false;
  }
};

inline bool operator==(const TrialRecord& x, const TrialRecord& y) {
  return x.trial_index == y.trial_index && x.sub_seed == y.sub_seed && x.a == y.a && x.b == y.b &&
         x.admissibility == y.admissibility && x.rejected_draws == y.rejected_draws &&
         x.sides == y.sides && x.quadrature == y.quadrature;
}

// All three statements for every requested mode. The campaign never asserts
// the inequalities; it classifies them.
inline SidesTable evaluate_statements(const Vector& a, const Vector& b,
                                      const CampaignConfig& cfg) {
  SidesTable table;
  for (SpectrumMode mode : cfg.modes) {
    table[Statement::prop_key][mode] = prop_key_sides(a, b, cfg.norm_kind, mode);
    table[Statement::theorem1][mode] = theorem1_sides(a, b, cfg.norm_kind, mode);
    table[Statement::theorem2][mode] =
        theorem2_sides(a, b, cfg.norm_kind, mode, cfg.quadrature,
                       /*verify_with_quadrature=*/false);
  }
  return table;
}

inline TrialRecord run_trial(const CampaignConfig& cfg, std::uint64_t trial_index) {
  const auto t0 = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.sub_seed = derive_stream_seed(cfg.seed, trial_index);

  SampledPair sp = sample_admissible_pair(rec.sub_seed, cfg.dim_min, cfg.dim_max,
                                          cfg.coord_scale, cfg.norm_kind);
  rec.a = std::move(sp.a);
  rec.b = std::move(sp.b);
  rec.rejected_draws = sp.rejected_draws;
  rec.admissibility = check_admissible(rec.a, rec.b, cfg.norm_kind);
  rec.sides = evaluate_statements(rec.a, rec.b, cfg);

  if (trial_index % cfg.check_quadrature_every == 0) {
    rec.quadrature.checked = true;
    const double ip = inner_product(rec.a, rec.b);
    rec.quadrature.singular =
        rec.admissibility.norm_a <= ip && ip <= rec.admissibility.norm_b;
    const double closed = outer_product(rec.a, rec.b, cfg.norm_kind, SpectrumMode::multiset);
    try {
      const double q = adaptive_logdet_integral(rec.a, rec.b, cfg.norm_kind, cfg.quadrature);
      rec.quadrature.discrepancy = std::abs(closed - q);
    } catch (const quadrature_error& e) {
      rec.quadrature.failed = true;
      rec.quadrature.best_estimate = e.best_estimate();
      rec.quadrature.error_bound = e.error_bound();
      rec.quadrature.discrepancy = std::abs(closed - e.best_estimate());
    }
  }

  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// Recompute a recorded pair from scratch; counterexamples must reproduce
// outside the campaign.
inline SidesTable replay_trial(const TrialRecord& rec, const CampaignConfig& cfg) {
  return evaluate_statements(rec.a, rec.b, cfg);
}

struct StatusTally {
  std::uint64_t holds = 0;
  std::uint64_t fails = 0;
  std::uint64_t degenerate_lhs_neg_inf = 0;
  std::uint64_t rhs_undefined = 0;

  std::uint64_t total() const { return holds + fails + degenerate_lhs_neg_inf + rhs_undefined; }

  void bump(BoundStatus s) {
    switch (s) {
      case BoundStatus::holds: ++holds; break;
      case BoundStatus::fails: ++fails; break;
      case BoundStatus::degenerate_lhs_neg_inf: ++degenerate_lhs_neg_inf; break;
      case BoundStatus::rhs_undefined: ++rhs_undefined; break;
    }
  }

  friend bool operator==(const StatusTally&, const StatusTally&) = default;
};

// Order statistics over the finite margins (degenerate +inf margins are
// excluded and show up in the tally instead). Quantiles are nearest-rank.
struct MarginStats {
  std::uint64_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double p1 = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double p99 = 0.0;

  friend bool operator==(const MarginStats&, const MarginStats&) = default;
};

namespace detail {

inline MarginStats margin_stats_from(std::vector<double> margins) {
  MarginStats st;
  st.count = margins.size();
  if (margins.empty()) return st;

  CompensatedSum mean_acc;
  for (double m : margins) mean_acc.add(m);
  st.mean = mean_acc.value() / static_cast<double>(margins.size());

  std::sort(margins.begin(), margins.end());
  st.min = margins.front();
  st.max = margins.back();
  const auto nearest_rank = [&](double pct) {
    const auto n = static_cast<double>(margins.size());
    auto idx = static_cast<std::ptrdiff_t>(std::ceil(pct / 100.0 * n)) - 1;
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(margins.size()) - 1);
    return margins[static_cast<std::size_t>(idx)];
  };
  st.p1 = nearest_rank(1.0);
  st.p25 = nearest_rank(25.0);
  st.p50 = nearest_rank(50.0);
  st.p75 = nearest_rank(75.0);
  st.p99 = nearest_rank(99.0);
  return st;
}

}  // namespace detail

struct TrialOutcome {
  ExtendedReal margin;
  BoundStatus status = BoundStatus::holds;

  friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

// One CSV row worth of data, retained for every trial.
struct TrialRow {
  std::uint64_t trial_index = 0;
  std::size_t dim = 0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  double inner_product = 0.0;
  std::map<Statement, std::map<SpectrumMode, TrialOutcome>> outcomes;

  friend bool operator==(const TrialRow&, const TrialRow&) = default;
};

struct QuadratureSummary {
  std::uint64_t checked = 0;
  std::uint64_t singular = 0;
  std::uint64_t failures_nonsingular = 0;
  std::uint64_t failures_singular = 0;
  double max_discrepancy_nonsingular = 0.0;
  double max_discrepancy_singular = 0.0;

  friend bool operator==(const QuadratureSummary&, const QuadratureSummary&) = default;
};

struct CampaignReport {
  CampaignConfig config;
  std::uint64_t rejection_count = 0;
  std::map<Statement, std::map<SpectrumMode, StatusTally>> totals;
  std::map<Statement, std::map<SpectrumMode, MarginStats>> margin_stats;
  std::vector<TrialRow> trial_rows;
  std::vector<TrialRecord> counterexamples;
  QuadratureSummary quadrature;
  double wall_seconds = 0.0;  // never serialized

  friend bool operator==(const CampaignReport& x, const CampaignReport& y) {
    return x.config == y.config && x.rejection_count == y.rejection_count &&
           x.totals == y.totals && x.margin_stats == y.margin_stats &&
           x.trial_rows == y.trial_rows && x.counterexamples == y.counterexamples &&
           x.quadrature == y.quadrature;
  }
};

// Runs every trial (concurrently when workers allow), then aggregates in
// trial order. The report is a pure function of the config: identical
// across runs and across worker counts.
inline CampaignReport fuzz_campaign(const CampaignConfig& cfg, unsigned workers = 0) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned nworkers = workers == 0 ? std::min(hw, 8u) : workers;
  nworkers = static_cast<unsigned>(
      std::min<std::uint64_t>(nworkers, cfg.trials));

  std::vector<TrialRecord> records(cfg.trials);
  std::atomic<std::uint64_t> cursor{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t i = cursor.fetch_add(1);
      if (i >= cfg.trials || failed.load()) return;
      try {
        records[i] = run_trial(cfg, i);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        return;
      }
    }
  };

  if (nworkers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failed.load()) std::rethrow_exception(first_error);

  CampaignReport report;
  report.config = cfg;

  std::map<Statement, std::map<SpectrumMode, std::vector<double>>> margins;
  for (const TrialRecord& rec : records) {
    report.rejection_count += rec.rejected_draws;

    TrialRow row;
    row.trial_index = rec.trial_index;
    row.dim = rec.a.dim();
    row.norm_a = rec.admissibility.norm_a;
    row.norm_b = rec.admissibility.norm_b;
    row.inner_product = inner_product(rec.a, rec.b);
    for (const auto& [stmt, per_mode] : rec.sides) {
      for (const auto& [mode, sides] : per_mode) {
        report.totals[stmt][mode].bump(sides.status);
        if (sides.margin.is_finite()) {
          margins[stmt][mode].push_back(sides.margin.value());
        }
        row.outcomes[stmt][mode] = TrialOutcome{sides.margin, sides.status};
      }
    }
    report.trial_rows.push_back(std::move(row));

    if (rec.any_fails()) report.counterexamples.push_back(rec);

    if (rec.quadrature.checked) {
      ++report.quadrature.checked;
      auto& q = report.quadrature;
      if (rec.quadrature.singular) {
        ++q.singular;
        if (rec.quadrature.failed) ++q.failures_singular;
        q.max_discrepancy_singular = std::max(q.max_discrepancy_singular,
                                              rec.quadrature.discrepancy);
      } else {
        if (rec.quadrature.failed) ++q.failures_nonsingular;
        q.max_discrepancy_nonsingular = std::max(q.max_discrepancy_nonsingular,
                                                 rec.quadrature.discrepancy);
      }
    }
  }

  for (auto& [stmt, per_mode] : margins) {
    for (auto& [mode, values] : per_mode) {
      report.margin_stats[stmt][mode] = detail::margin_stats_from(std::move(values));
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace outerprod
