#include <cmath>

#include "helpers.hpp"

using namespace outerprod;
using testutil::all_norm_kinds;
using testutil::random_vector;

TEST_CASE("norm golden values", "[core]") {
  const Vector v{3.0, 4.0};
  CHECK(norm(v, NormKind::euclidean()) == 5.0);
  CHECK(norm(v, NormKind::one()) == 7.0);
  CHECK(norm(v, NormKind::sup()) == 4.0);
  CHECK_THAT(norm(v, NormKind::p_norm(3.0)),
             Catch::Matchers::WithinRel(std::cbrt(27.0 + 64.0), 1e-14));
}

TEST_CASE("norm kind parsing", "[core]") {
  CHECK(NormKind::parse("l2") == NormKind::euclidean());
  CHECK(NormKind::parse("l1") == NormKind::one());
  CHECK(NormKind::parse("linf") == NormKind::sup());
  CHECK(NormKind::parse("lp:2.5").p() == 2.5);
  CHECK(NormKind::parse("lp:2.5").to_string() == "lp:2.5");
  CHECK(NormKind::parse(NormKind::p_norm(3.25).to_string()) == NormKind::p_norm(3.25));

  CHECK_THROWS_AS(NormKind::p_norm(1.0), config_error);
  CHECK_THROWS_AS(NormKind::p_norm(0.5), config_error);
  CHECK_THROWS_AS(NormKind::p_norm(std::numeric_limits<double>::infinity()), config_error);
  CHECK_THROWS_AS(NormKind::parse("lp:abc"), input_error);
  CHECK_THROWS_AS(NormKind::parse("l3"), input_error);
}

TEST_CASE("vector validation", "[core]") {
  CHECK_THROWS_AS(validate(Vector{}), input_error);
  CHECK_THROWS_AS(validate(Vector{1.0, std::nan("")}), input_error);
  CHECK_THROWS_AS(validate(Vector{std::numeric_limits<double>::infinity()}), input_error);
  CHECK_NOTHROW(validate(Vector{0.0}));
}

TEST_CASE("norm positivity and zero vector", "[core]") {
  for (const NormKind& kind : all_norm_kinds()) {
    CHECK(norm(Vector{0.0, 0.0, 0.0}, kind) == 0.0);
    CHECK(norm(Vector{0.0, -1e-3, 0.0}, kind) > 0.0);
  }
}

TEST_CASE("norm absolute homogeneity", "[core]") {
  SplitMix64 rng(101);
  for (int i = 0; i < 200; ++i) {
    const auto dim = 1 + rng.below(8);
    const Vector v = random_vector(rng, dim);
    const double c = rng.uniform(-20.0, 20.0);
    Vector cv = v;
    for (double& x : cv.coords) x *= c;
    for (const NormKind& kind : all_norm_kinds()) {
      const double lhs = norm(cv, kind);
      const double rhs = std::abs(c) * norm(v, kind);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
  }
}

TEST_CASE("norm triangle inequality", "[core]") {
  SplitMix64 rng(202);
  for (int i = 0; i < 200; ++i) {
    const auto dim = 1 + rng.below(8);
    const Vector a = random_vector(rng, dim);
    const Vector b = random_vector(rng, dim);
    Vector sum = a;
    for (std::size_t k = 0; k < dim; ++k) sum.coords[k] += b[k];
    for (const NormKind& kind : all_norm_kinds()) {
      const double bound = norm(a, kind) + norm(b, kind);
      CHECK(norm(sum, kind) <= bound + 1e-12 * std::max(1.0, bound));
    }
  }
}

TEST_CASE("check_admissible fixtures", "[core]") {
  SECTION("admissible pair") {
    const auto rep = check_admissible(Vector{1.5, 0.0}, Vector{0.0, 2.5}, NormKind::euclidean());
    CHECK(rep.admissible());
    CHECK(rep.norm_a == 1.5);
    CHECK(rep.norm_b == 2.5);
    CHECK(rep.midpoint == 2.0);
    CHECK(rep.max_spec == 0.0);
  }
  SECTION("spectrum bound violated") {
    const auto rep = check_admissible(Vector{2.0, 0.0}, Vector{3.0, 0.0}, NormKind::euclidean());
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0] == HypothesisFailure::spectrum_bound);
    CHECK(rep.max_spec == 6.0);
    CHECK(rep.midpoint == 2.5);
  }
  SECTION("norm floor violated") {
    const auto rep = check_admissible(Vector{0.5, 0.0}, Vector{0.0, 2.0}, NormKind::euclidean());
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0] == HypothesisFailure::norm_floor);
  }
  SECTION("equal norms violate the strict order") {
    const auto rep = check_admissible(Vector{1.5, 0.0}, Vector{0.0, 1.5}, NormKind::euclidean());
    CHECK_FALSE(rep.admissible());
    CHECK(rep.failures[0] == HypothesisFailure::norm_order);
  }
}

TEST_CASE("check_admissible rejects mismatched dimensions", "[core]") {
  CHECK_THROWS_AS(check_admissible(Vector{1.0}, Vector{1.0, 2.0}, NormKind::euclidean()),
                  input_error);
}

TEST_CASE("norm order and floor survive scaling b up", "[core]") {
  SplitMix64 rng(303);
  for (int i = 0; i < 50; ++i) {
    const auto pair =
        sample_admissible_pair(derive_stream_seed(909, i), 2, 6, 5.0, NormKind::euclidean());
    const double c = rng.uniform(1.0 + 1e-6, 3.0);
    Vector scaled = pair.b;
    for (double& x : scaled.coords) x *= c;
    const auto rep = check_admissible(pair.a, scaled, NormKind::euclidean());
    for (HypothesisFailure f : rep.failures) {
      CHECK(f != HypothesisFailure::norm_order);
      CHECK(f != HypothesisFailure::norm_floor);
    }
  }
}
