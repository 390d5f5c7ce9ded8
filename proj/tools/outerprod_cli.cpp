// Command-line front end: evaluate the outer-product functional, inspect
// rank-1 spectra, check admissibility, compute inequality sides, and run
// fuzz campaigns.
//
// Exit codes: 0 success (for fuzz: zero fails), 1 fuzz found at least one
// fails, 2 input/config error, 3 numerical failure (quadrature exhausted).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "outerprod/outerprod.hpp"

namespace {

using namespace outerprod;

Vector parse_vector_arg(const std::string& text, const char* flag) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string(flag) + ": not valid JSON (" + e.what() + ")");
  }
  try {
    return parsed.get<Vector>();
  } catch (const input_error& e) {
    throw input_error(std::string(flag) + ": " + e.what());
  }
}

std::vector<SpectrumMode> parse_modes_arg(const std::string& text) {
  if (text == "both") return {SpectrumMode::multiset, SpectrumMode::set};
  return {parse_spectrum_mode(text)};
}

std::vector<Statement> parse_statements_arg(const std::string& text) {
  if (text == "all") return {Statement::prop_key, Statement::theorem1, Statement::theorem2};
  return {parse_statement(text)};
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

struct CommonArgs {
  std::string a_text;
  std::string b_text;
  std::string norm_text = "l2";
  std::string mode_text = "multiset";
};

int run_eval(const CommonArgs& args) {
  const Vector a = parse_vector_arg(args.a_text, "--a");
  const Vector b = parse_vector_arg(args.b_text, "--b");
  const NormKind kind = NormKind::parse(args.norm_text);
  const double value = outer_product(a, b, kind, parse_spectrum_mode(args.mode_text));
  std::printf("%.17g\n", value);
  return 0;
}

int run_spectrum(const CommonArgs& args) {
  const Vector a = parse_vector_arg(args.a_text, "--a");
  const Vector b = parse_vector_arg(args.b_text, "--b");
  print_json(json(rank_one_spectrum(a, b, parse_spectrum_mode(args.mode_text))));
  return 0;
}

// Reports; inadmissible input is information, not an error.
int run_check(const CommonArgs& args) {
  const Vector a = parse_vector_arg(args.a_text, "--a");
  const Vector b = parse_vector_arg(args.b_text, "--b");
  print_json(json(check_admissible(a, b, NormKind::parse(args.norm_text))));
  return 0;
}

int run_bounds(const CommonArgs& args, const std::string& statement_text,
               const QuadratureConfig& quad, bool relax_norm_floor) {
  const Vector a = parse_vector_arg(args.a_text, "--a");
  const Vector b = parse_vector_arg(args.b_text, "--b");
  const NormKind kind = NormKind::parse(args.norm_text);

  std::map<Statement, std::map<SpectrumMode, InequalitySides>> table;
  for (Statement stmt : parse_statements_arg(statement_text)) {
    for (SpectrumMode mode : parse_modes_arg(args.mode_text)) {
      switch (stmt) {
        case Statement::prop_key:
          table[stmt][mode] = prop_key_sides(a, b, kind, mode, relax_norm_floor);
          break;
        case Statement::theorem1:
          table[stmt][mode] = theorem1_sides(a, b, kind, mode, relax_norm_floor);
          break;
        case Statement::theorem2:
          table[stmt][mode] = theorem2_sides(a, b, kind, mode, quad,
                                             /*verify_with_quadrature=*/true, relax_norm_floor);
          break;
      }
    }
  }

  json out = sides_map_to_json(table);
  if (relax_norm_floor) {
    bool floor_violated = false;
    for (HypothesisFailure f : check_admissible(a, b, kind).failures) {
      floor_violated = floor_violated || f == HypothesisFailure::norm_floor;
    }
    out["outside_hypotheses"] = floor_violated;
  }
  print_json(out);
  return 0;
}

int run_fuzz(const CampaignConfig& cfg, unsigned workers, const std::string& out_path,
             const std::string& csv_path) {
  const CampaignReport report = fuzz_campaign(cfg, workers);

  std::uint64_t total_fails = 0;
  for (const auto& [stmt, per_mode] : report.totals) {
    for (const auto& [mode, tally] : per_mode) {
      std::printf("%s/%s: holds=%llu fails=%llu degenerate=%llu\n", to_cstring(stmt),
                  to_cstring(mode), static_cast<unsigned long long>(tally.holds),
                  static_cast<unsigned long long>(tally.fails),
                  static_cast<unsigned long long>(tally.degenerate_lhs_neg_inf));
      total_fails += tally.fails;
    }
  }
  std::printf("trials=%llu rejected_draws=%llu counterexamples=%zu\n",
              static_cast<unsigned long long>(cfg.trials),
              static_cast<unsigned long long>(report.rejection_count),
              report.counterexamples.size());
  std::printf("quadrature: checked=%llu nonsingular_failures=%llu max_nonsingular_disc=%.3g\n",
              static_cast<unsigned long long>(report.quadrature.checked),
              static_cast<unsigned long long>(report.quadrature.failures_nonsingular),
              report.quadrature.max_discrepancy_nonsingular);

  if (!out_path.empty()) {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw input_error("cannot open --out path '" + out_path + "'");
    os << json(report).dump(2) << '\n';
    std::printf("report: %s\n", out_path.c_str());

    // Standalone replayable fixture per counterexample.
    const std::filesystem::path base(out_path);
    const std::filesystem::path dir = base.parent_path();
    const std::string stem = base.stem().string();
    for (const TrialRecord& rec : report.counterexamples) {
      char name[64];
      std::snprintf(name, sizeof name, "%s.counterexample_%06llu.json", stem.c_str(),
                    static_cast<unsigned long long>(rec.trial_index));
      std::ofstream cx(dir / name, std::ios::binary);
      cx << json(rec).dump(2) << '\n';
    }
    if (!report.counterexamples.empty()) {
      std::printf("counterexample fixtures: %zu file(s) next to the report\n",
                  report.counterexamples.size());
    }
  }

  if (!csv_path.empty()) {
    std::ofstream os(csv_path, std::ios::binary);
    if (!os) throw input_error("cannot open --csv path '" + csv_path + "'");
    write_campaign_csv(report, os);
    std::printf("csv: %s\n", csv_path.c_str());
  }

  return total_fails > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"outer-product functional on normed vector spaces: evaluation, rank-1 spectra, "
               "inequality bounds, and randomized verification campaigns"};
  app.require_subcommand(1);

  CommonArgs args;
  QuadratureConfig quad;
  bool relax_norm_floor = false;
  std::string statement_text = "all";

  auto* eval_cmd = app.add_subcommand("eval", "evaluate the outer product (a;b)");
  eval_cmd->add_option("--a", args.a_text, "vector a as a JSON array")->required();
  eval_cmd->add_option("--b", args.b_text, "vector b as a JSON array")->required();
  eval_cmd->add_option("--norm", args.norm_text, "l2 | l1 | linf | lp:<p>");
  eval_cmd->add_option("--mode", args.mode_text, "multiset | set");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "print the spectrum of ab^T");
  spectrum_cmd->add_option("--a", args.a_text)->required();
  spectrum_cmd->add_option("--b", args.b_text)->required();
  spectrum_cmd->add_option("--mode", args.mode_text, "multiset | set");

  auto* check_cmd = app.add_subcommand("check", "report which hypotheses the pair satisfies");
  check_cmd->add_option("--a", args.a_text)->required();
  check_cmd->add_option("--b", args.b_text)->required();
  check_cmd->add_option("--norm", args.norm_text, "l2 | l1 | linf | lp:<p>");

  auto* bounds_cmd = app.add_subcommand("bounds", "compute inequality sides and margins");
  bounds_cmd->add_option("--a", args.a_text)->required();
  bounds_cmd->add_option("--b", args.b_text)->required();
  bounds_cmd->add_option("--norm", args.norm_text, "l2 | l1 | linf | lp:<p>");
  bounds_cmd->add_option("--mode", args.mode_text, "multiset | set | both");
  bounds_cmd->add_option("--statement", statement_text, "prop_key | theorem1 | theorem2 | all");
  bounds_cmd->add_option("--abs-tol", quad.abs_tol, "quadrature absolute tolerance");
  bounds_cmd->add_option("--rel-tol", quad.rel_tol, "quadrature relative tolerance");
  bounds_cmd->add_option("--max-depth", quad.max_depth, "quadrature recursion depth cap");
  bounds_cmd->add_flag("--relax-norm-floor", relax_norm_floor,
                       "drop the ||a|| > 1 hypothesis; output labeled outside-hypotheses");

  CampaignConfig cfg;
  unsigned workers = 0;
  std::string out_path;
  std::string csv_path;
  std::string fuzz_norm_text = "l2";
  std::string fuzz_mode_text = "both";

  auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized campaign over admissible pairs");
  fuzz_cmd->add_option("--trials", cfg.trials, "number of trials");
  fuzz_cmd->add_option("--seed", cfg.seed, "campaign seed");
  fuzz_cmd->add_option("--dim-min", cfg.dim_min, "minimum dimension (>= 2)");
  fuzz_cmd->add_option("--dim-max", cfg.dim_max, "maximum dimension (<= 8)");
  fuzz_cmd->add_option("--coord-scale", cfg.coord_scale, "coordinate box half-width");
  fuzz_cmd->add_option("--norm", fuzz_norm_text, "l2 | l1 | linf | lp:<p>");
  fuzz_cmd->add_option("--mode", fuzz_mode_text, "multiset | set | both");
  fuzz_cmd->add_option("--abs-tol", cfg.quadrature.abs_tol, "quadrature absolute tolerance");
  fuzz_cmd->add_option("--rel-tol", cfg.quadrature.rel_tol, "quadrature relative tolerance");
  fuzz_cmd->add_option("--max-depth", cfg.quadrature.max_depth, "quadrature depth cap");
  fuzz_cmd->add_option("--check-quadrature-every", cfg.check_quadrature_every,
                       "spot-check cadence");
  fuzz_cmd->add_option("--workers", workers, "worker threads (0 = auto)");
  fuzz_cmd->add_option("--out", out_path, "write the campaign report JSON here");
  fuzz_cmd->add_option("--csv", csv_path, "write one CSV row per trial here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(eval_cmd)) return run_eval(args);
    if (app.got_subcommand(spectrum_cmd)) return run_spectrum(args);
    if (app.got_subcommand(check_cmd)) return run_check(args);
    if (app.got_subcommand(bounds_cmd)) {
      return run_bounds(args, statement_text, quad, relax_norm_floor);
    }
    if (app.got_subcommand(fuzz_cmd)) {
      cfg.norm_kind = NormKind::parse(fuzz_norm_text);
      cfg.modes = parse_modes_arg(fuzz_mode_text);
      return run_fuzz(cfg, workers, out_path, csv_path);
    }
  } catch (const quadrature_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n  best estimate "
              << format_double_17(e.best_estimate()) << ", error bound "
              << format_double_17(e.error_bound()) << '\n';
    return 3;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
