#include <cmath>

#include "helpers.hpp"

using namespace outerprod;
using testutil::interior_eigenvalue_pair;
using testutil::random_vector;

namespace {
const Vector kFixA{1.5, 0.0};
const Vector kFixB{0.0, 2.5};
constexpr double kLn15 = 0.40546510810816438;
constexpr double kLn2 = 0.69314718055994531;
constexpr double kThm2Lhs = 1.3650583350462815;  // 2 (2.5 ln 2.5 - 1.5 ln 1.5 - 1)
}  // namespace

TEST_CASE("extended real ordering and absorption", "[bounds]") {
  const ExtendedReal ninf = ExtendedReal::neg_infinity();
  CHECK(ninf < ExtendedReal(-1e308));
  CHECK(ninf <= ninf);
  CHECK((ninf + ExtendedReal(5.0)).is_neg_infinity());
  CHECK((ExtendedReal(2.0) - ninf).is_pos_infinity());
  CHECK(ExtendedReal(1.5).value() == 1.5);
}

TEST_CASE("min_log_distance", "[bounds]") {
  CHECK_THAT(min_log_distance(0.0, 1.5, 2.5).value(),
             Catch::Matchers::WithinAbs(kLn15, 1e-15));
  CHECK(min_log_distance(2.0, 1.0, 3.0).is_neg_infinity());
  CHECK(min_log_distance(1.0, 1.0, 3.0).is_neg_infinity());
  CHECK(min_log_distance(4.0, 1.0, 3.0).value() == 0.0);
  CHECK_THROWS_AS(min_log_distance(0.0, 2.0, 2.0), input_error);
}

TEST_CASE("rhs_correction_sum", "[bounds]") {
  SECTION("zero spectrum contributes nothing") {
    const SpectrumMultiset spec{{{0.0, 2}}, SpectrumMode::multiset};
    CHECK(rhs_correction_sum(spec, 4.0).value() == 0.0);
  }
  SECTION("positive eigenvalue") {
    const SpectrumMultiset spec{{{2.0, 1}, {0.0, 1}}, SpectrumMode::multiset};
    CHECK_THAT(rhs_correction_sum(spec, 8.0).value(),
               Catch::Matchers::WithinAbs(-kLn2, 1e-15));
  }
  SECTION("negative eigenvalue pushes the argument above 1") {
    const SpectrumMultiset spec{{{-2.0, 1}}, SpectrumMode::multiset};
    CHECK_THAT(rhs_correction_sum(spec, 4.0).value(), Catch::Matchers::WithinAbs(kLn2, 1e-15));
  }
  SECTION("argument at or below zero is undefined") {
    CHECK_FALSE(rhs_correction_sum({{{3.0, 1}}, SpectrumMode::multiset}, 6.0).has_value());
    CHECK_FALSE(rhs_correction_sum({{{4.0, 1}}, SpectrumMode::multiset}, 6.0).has_value());
  }
}

TEST_CASE("theorem1 fixture", "[bounds]") {
  SECTION("multiset mode") {
    const auto s = theorem1_sides(kFixA, kFixB, NormKind::euclidean(), SpectrumMode::multiset);
    CHECK_THAT(s.lhs.value(), Catch::Matchers::WithinAbs(2.0 * kLn15, 1e-12));
    CHECK_THAT(s.rhs, Catch::Matchers::WithinAbs(2.0 * kLn2, 1e-12));
    CHECK(s.status == BoundStatus::holds);
    CHECK(s.count_multiset == 2);
    CHECK(s.count_set == 1);
  }
  SECTION("set mode halves both sides") {
    const auto s = theorem1_sides(kFixA, kFixB, NormKind::euclidean(), SpectrumMode::set);
    CHECK_THAT(s.lhs.value(), Catch::Matchers::WithinAbs(kLn15, 1e-12));
    CHECK_THAT(s.rhs, Catch::Matchers::WithinAbs(kLn2, 1e-12));
    CHECK(s.status == BoundStatus::holds);
  }
}

TEST_CASE("theorem2 fixture", "[bounds]") {
  SECTION("multiset mode holds") {
    const auto s = theorem2_sides(kFixA, kFixB, NormKind::euclidean(), SpectrumMode::multiset);
    CHECK_THAT(s.lhs.value(), Catch::Matchers::WithinAbs(kThm2Lhs, 1e-9));
    CHECK_THAT(s.rhs, Catch::Matchers::WithinAbs(2.0 * kLn2, 1e-12));
    CHECK(s.status == BoundStatus::holds);
    CHECK_THAT(s.margin.value(),
               Catch::Matchers::WithinAbs(2.0 * kLn2 - kThm2Lhs, 1e-9));
  }
  SECTION("set mode fails on this pair: evidence for the multiset reading") {
    const auto s = theorem2_sides(kFixA, kFixB, NormKind::euclidean(), SpectrumMode::set);
    CHECK_THAT(s.lhs.value(), Catch::Matchers::WithinAbs(kThm2Lhs, 1e-9));
    CHECK_THAT(s.rhs, Catch::Matchers::WithinAbs(kLn2, 1e-12));
    CHECK(s.status == BoundStatus::fails);
  }
}

TEST_CASE("prop_key fixture margin", "[bounds]") {
  const auto s = prop_key_sides(kFixA, kFixB, NormKind::euclidean(), SpectrumMode::multiset);
  CHECK_THAT(s.margin.value(), Catch::Matchers::WithinAbs(0.021236026073608439, 1e-9));
  CHECK(s.status == BoundStatus::holds);
}

TEST_CASE("interior eigenvalue degenerates theorem1", "[bounds]") {
  const auto [a, b] = interior_eigenvalue_pair(1.8);
  REQUIRE(check_admissible(a, b, NormKind::euclidean()).admissible());
  const auto s = theorem1_sides(a, b, NormKind::euclidean(), SpectrumMode::multiset);
  CHECK(s.status == BoundStatus::degenerate_lhs_neg_inf);
  CHECK(s.lhs.is_neg_infinity());
  CHECK(s.margin.is_pos_infinity());
}

TEST_CASE("hypothesis violations raise errors that name the failure", "[bounds]") {
  SECTION("spectrum bound") {
    try {
      prop_key_sides(Vector{2.0, 0.0}, Vector{3.0, 0.0}, NormKind::euclidean(),
                     SpectrumMode::multiset);
      FAIL("expected hypothesis_error");
    } catch (const hypothesis_error& e) {
      REQUIRE(e.failures().size() == 1);
      CHECK(e.failures()[0] == "SpectrumBound");
    }
  }
  SECTION("degenerate norm interval") {
    CHECK_THROWS_AS(prop_key_sides(Vector{1.5, 0.0}, Vector{0.0, 1.5}, NormKind::euclidean(),
                                   SpectrumMode::multiset),
                    hypothesis_error);
  }
}

TEST_CASE("relaxing the norm floor admits sub-unit vectors", "[bounds]") {
  const Vector a{0.8, 0.0};
  const Vector b{0.0, 1.7};
  CHECK_THROWS_AS(theorem1_sides(a, b, NormKind::euclidean(), SpectrumMode::multiset),
                  hypothesis_error);
  const auto s = theorem1_sides(a, b, NormKind::euclidean(), SpectrumMode::multiset,
                                /*relax_norm_floor=*/true);
  CHECK(s.status == BoundStatus::holds);
  // Other hypotheses still gate.
  CHECK_THROWS_AS(theorem1_sides(Vector{2.0, 0.0}, Vector{3.0, 0.0}, NormKind::euclidean(),
                                 SpectrumMode::multiset, true),
                  hypothesis_error);
}

TEST_CASE("interval minimum never exceeds the interval mean", "[bounds]") {
  SplitMix64 rng(121);
  for (int i = 0; i < 300; ++i) {
    double alpha = rng.uniform(-8.0, 8.0);
    double beta = rng.uniform(-8.0, 8.0);
    if (beta < alpha) std::swap(alpha, beta);
    if (!(beta - alpha > 1e-6)) continue;
    const double lam = rng.uniform(-10.0, 10.0);
    const double mean = integral_log_abs(alpha, beta, lam).value / (beta - alpha);
    CHECK(min_log_distance(lam, alpha, beta).raw() <= mean + 1e-10);
  }
}

TEST_CASE("theorem2 and prop_key share the right-hand side exactly", "[bounds]") {
  for (int i = 0; i < 50; ++i) {
    const auto pair =
        sample_admissible_pair(derive_stream_seed(131, i), 2, 6, 5.0, NormKind::euclidean());
    for (SpectrumMode mode : {SpectrumMode::multiset, SpectrumMode::set}) {
      const auto t2 = theorem2_sides(pair.a, pair.b, NormKind::euclidean(), mode, {},
                                     /*verify_with_quadrature=*/false);
      const auto pk = prop_key_sides(pair.a, pair.b, NormKind::euclidean(), mode);
      CHECK(t2.rhs == pk.rhs);
    }
  }
}

TEST_CASE("sides are invariant under simultaneous coordinate permutation", "[bounds]") {
  SplitMix64 rng(141);
  for (int i = 0; i < 50; ++i) {
    const auto pair =
        sample_admissible_pair(derive_stream_seed(151, i), 2, 6, 5.0, NormKind::euclidean());
    Vector pa = pair.a;
    Vector pb = pair.b;
    // Fisher-Yates with the shared generator, same permutation on both.
    for (std::size_t k = pa.dim(); k > 1; --k) {
      const auto j = rng.below(k);
      std::swap(pa.coords[k - 1], pa.coords[j]);
      std::swap(pb.coords[k - 1], pb.coords[j]);
    }
    const auto base = theorem1_sides(pair.a, pair.b, NormKind::euclidean(),
                                     SpectrumMode::multiset);
    const auto perm = theorem1_sides(pa, pb, NormKind::euclidean(), SpectrumMode::multiset);
    CHECK(std::abs(base.rhs - perm.rhs) <= 1e-12 * std::max(1.0, std::abs(base.rhs)));
    if (base.lhs.is_finite()) {
      CHECK(std::abs(base.lhs.raw() - perm.lhs.raw()) <=
            1e-12 * std::max(1.0, std::abs(base.lhs.raw())));
    } else {
      CHECK(base.lhs == perm.lhs);  // both -inf: same degenerate classification
    }

    const auto base2 = theorem2_sides(pair.a, pair.b, NormKind::euclidean(),
                                      SpectrumMode::multiset, {}, false);
    const auto perm2 = theorem2_sides(pa, pb, NormKind::euclidean(), SpectrumMode::multiset, {},
                                      false);
    CHECK(std::abs(base2.rhs - perm2.rhs) <= 1e-12 * std::max(1.0, std::abs(base2.rhs)));
    CHECK(std::abs(base2.lhs.value() - perm2.lhs.value()) <=
          1e-12 * std::max(1.0, std::abs(base2.lhs.value())));
  }
}

TEST_CASE("admissible pairs never see an undefined right-hand side", "[bounds]") {
  for (int i = 0; i < 100; ++i) {
    const auto pair =
        sample_admissible_pair(derive_stream_seed(161, i), 2, 6, 5.0, NormKind::euclidean());
    for (SpectrumMode mode : {SpectrumMode::multiset, SpectrumMode::set}) {
      const auto spec = rank_one_spectrum(pair.a, pair.b, mode);
      const double s = norm(pair.a, NormKind::euclidean()) + norm(pair.b, NormKind::euclidean());
      CHECK(rhs_correction_sum(spec, s).has_value());
      const auto sides = theorem1_sides(pair.a, pair.b, NormKind::euclidean(), mode);
      CHECK(sides.status != BoundStatus::rhs_undefined);
    }
  }
}

TEST_CASE("theorem2 propagates quadrature exhaustion", "[bounds]") {
  const auto [a, b] = interior_eigenvalue_pair(1.8);
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-14;
  cfg.max_depth = 10;
  CHECK_THROWS_AS(theorem2_sides(a, b, NormKind::euclidean(), SpectrumMode::multiset, cfg,
                                 /*verify_with_quadrature=*/true),
                  quadrature_error);
}
