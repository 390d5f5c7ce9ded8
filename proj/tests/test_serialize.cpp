#include <cmath>
#include <cstdlib>
#include <sstream>

#include "helpers.hpp"
#include "outerprod/serialize.hpp"

using namespace outerprod;

TEST_CASE("vector and norm kind json round-trips", "[serialize]") {
  const Vector v{1.5, -2.25, 0.0};
  CHECK(json(v).get<Vector>() == v);
  CHECK(json(v).dump() == "[1.5,-2.25,0.0]");

  for (const NormKind& kind : testutil::all_norm_kinds()) {
    CHECK(json(kind).get<NormKind>() == kind);
  }

  CHECK_THROWS_AS(json::parse("[1,\"x\"]").get<Vector>(), input_error);
  CHECK_THROWS_AS(json::parse("{}").get<Vector>(), input_error);
}

TEST_CASE("extended real json uses inf strings", "[serialize]") {
  CHECK(json(ExtendedReal(2.5)).dump() == "2.5");
  CHECK(json(ExtendedReal::neg_infinity()).dump() == "\"-inf\"");
  CHECK(json(ExtendedReal::pos_infinity()).dump() == "\"inf\"");
  CHECK(json(ExtendedReal::neg_infinity()).get<ExtendedReal>().is_neg_infinity());
  CHECK(json(ExtendedReal(0.1)).get<ExtendedReal>() == ExtendedReal(0.1));
}

TEST_CASE("inequality sides round-trip, degenerate case included", "[serialize]") {
  const auto finite = theorem2_sides(Vector{1.5, 0.0}, Vector{0.0, 2.5}, NormKind::euclidean(),
                                     SpectrumMode::multiset);
  CHECK(json(finite).get<InequalitySides>() == finite);

  const auto degen = theorem1_sides(testutil::interior_eigenvalue_pair(1.8).first,
                                    testutil::interior_eigenvalue_pair(1.8).second,
                                    NormKind::euclidean(), SpectrumMode::multiset);
  REQUIRE(degen.status == BoundStatus::degenerate_lhs_neg_inf);
  CHECK(json(degen).get<InequalitySides>() == degen);
}

TEST_CASE("admissibility and spectrum round-trips", "[serialize]") {
  const auto rep = check_admissible(Vector{2.0, 0.0}, Vector{3.0, 0.0}, NormKind::euclidean());
  CHECK(json(rep).get<AdmissibilityReport>() == rep);
  CHECK(json(rep)["admissible"] == false);

  const auto spec = rank_one_spectrum(Vector{1.0, 1.0}, Vector{1.0, 1.0}, SpectrumMode::multiset);
  CHECK(json(spec).get<SpectrumMultiset>() == spec);
  CHECK(json(spec)["count"] == 2);
}

TEST_CASE("campaign report round-trips and is byte-stable", "[serialize]") {
  CampaignConfig cfg;
  cfg.trials = 50;
  cfg.seed = 7;
  const CampaignReport report = fuzz_campaign(cfg);

  const json j = report;
  const auto back = j.get<CampaignReport>();
  CHECK(back == report);
  CHECK(json(back).dump() == j.dump());
}

TEST_CASE("csv has one row per trial", "[serialize]") {
  CampaignConfig cfg;
  cfg.trials = 25;
  cfg.seed = 3;
  const CampaignReport report = fuzz_campaign(cfg);

  std::ostringstream os;
  write_campaign_csv(report, os);
  const std::string text = os.str();

  std::size_t lines = 0;
  std::string header;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (lines == 0) header = line;
    ++lines;
  }
  CHECK(lines == cfg.trials + 1);
  CHECK(header.rfind("trial_index,dim,norm_a,norm_b,inner_product", 0) == 0);
  CHECK(header.find("prop_key_multiset_margin") != std::string::npos);
  CHECK(header.find("theorem2_set_status") != std::string::npos);
}

TEST_CASE("17 significant digits round-trip binary64", "[serialize]") {
  SplitMix64 rng(999);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-1e6, 1e6) * std::pow(10.0, static_cast<double>(
                                                                 rng.below(20)) - 10.0);
    const std::string s = format_double_17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(format_double_17(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double_17(-std::numeric_limits<double>::infinity()) == "-inf");
}
