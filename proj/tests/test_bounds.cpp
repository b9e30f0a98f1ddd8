#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fqlab/bounds.hpp"
#include "fqlab/setgen.hpp"

using namespace fqlab;

namespace {
constexpr double kEps = 1e-9;
}

TEST_CASE("odd-dimension bound cases") {
  // d = 3, q = 5: thresholds at |E| = 5 and 25.
  CHECK(bound_main1(5, 3, 4, 100) == Catch::Approx(2.0));   // case 1
  CHECK(bound_main1(5, 3, 5, 100) == Catch::Approx(2.5));   // case 2
  CHECK(bound_main1(3, 3, 27, 27) == Catch::Approx(1.5));   // case 3
  CHECK_THROWS_MATCHES(bound_main1(5, 2, 4, 4), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::EvenDimension;
                       }));
  CHECK_THROWS_MATCHES(bound_main1(5, 3, 0, 4), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::OutOfRange;
                       }));
}

TEST_CASE("even-dimension bound cases") {
  // q = 5, d = 2, |E| = |F| = 20: |E| >= q^(3/2), so the top case applies.
  CHECK(bound_main2(5, 2, 20, 20) == Catch::Approx(5.0 / 144));
  // q = 3, d = 4, |E| = |F| = 81 >= 3^(5/2).
  CHECK(bound_main2(3, 4, 81, 81) == Catch::Approx(3.0 / 144));
  // Middle case needs q^((d+1)/2) > 16; q = 13, d = 2, |E| = 30, |F| = 91.
  CHECK(bound_main2(13, 2, 30, 91) ==
        Catch::Approx(std::min(13.0, 91.0 / (2 * std::sqrt(13.0))) / 144));
  // Low case via d = 4: |E| = 20 < 9^(3/2), |F| = 9^4.
  CHECK(bound_main2(9, 4, 20, 6561) == Catch::Approx(9.0 / 144));
  CHECK_THROWS_MATCHES(bound_main2(3, 2, 9, 9), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::HypothesisNotMet;
                       }));
  CHECK_THROWS_MATCHES(bound_main2(5, 3, 100, 100), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::OddDimension;
                       }));
}

TEST_CASE("planar variants") {
  CHECK(bound_main2_d2(5, 20, 20) == Catch::Approx(2.5 / 72));
  CHECK_THROWS_AS(bound_main2_d2(5, 3, 3), Error);

  CHECK(bound_main2_d2_nonsquare(7, 25, 30) == Catch::Approx(3.5));
  CHECK_THROWS_MATCHES(bound_main2_d2_nonsquare(5, 20, 20), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::MinusOneIsSquare;
                       }));
}

TEST_CASE("product-set bound") {
  CHECK(bound_main3(7, 2, 3, 30) == Catch::Approx(90.0 / 28));
  CHECK(bound_main3(3, 3, 2, 27) == Catch::Approx(1.5));
  CHECK(bound_main3(5, 2, 0, 10) == 0.0);
  CHECK_THROWS_AS(bound_main3(5, 2, 6, 10), Error);
}

TEST_CASE("corollary surrogate") {
  // Even d: c = 1/144.
  CHECK(bound_corollary(5, 2, 20, 20) ==
        Catch::Approx(std::min(5.0, 20.0 / std::sqrt(5.0)) / 144));
  // Odd d: c = 1/8. q = 3, d = 3, |E| = 22, |F| = 27 has product 594 >= 432.
  CHECK(bound_corollary(3, 3, 22, 27) ==
        Catch::Approx(std::min(3.0, 27.0 / 3.0) / 8));
  CHECK_THROWS_AS(bound_corollary(3, 3, 27, 22), Error);  // needs |E| <= |F|
  CHECK_THROWS_AS(bound_corollary(3, 2, 5, 5), Error);
}

TEST_CASE("baselines") {
  const BaselineValues b = bound_baselines(5, 2, 25, 25);
  CHECK(b.shparlinski == Catch::Approx(3125.0 / 750));
  CHECK(!b.dietmann_met);  // (900 + ln 5) * 25 >> 625

  const BaselineValues full = bound_baselines(5, 2, 25 * 25, 1);
  CHECK(full.shparlinski ==
        Catch::Approx(625.0 * 5 / (125 + 625)));  // |E||F| = q^(2d) with nF=1
  CHECK(!full.dietmann_met);  // requires |F| >= |E|

  // A regime where the Dietmann gate opens: q^d = 2401 > 908.
  const BaselineValues big = bound_baselines(7, 4, 2401, 2401);
  CHECK(big.dietmann_met);
  CHECK(big.dietmann ==
        Catch::Approx(std::min(7.0, 2401.0 / (std::pow(7.0, 1.5) *
                                               std::log(7.0)))));
}

TEST_CASE("every evaluator is nondecreasing in |F|") {
  const uint64_t q = 5;
  for (uint64_t nf = 1; nf < 125; ++nf) {
    CHECK(bound_main1(q, 3, 7, nf + 1) >= bound_main1(q, 3, 7, nf) - kEps);
    CHECK(bound_main3(q, 3, 3, nf + 1) >= bound_main3(q, 3, 3, nf) - kEps);
    CHECK(bound_baselines(q, 3, 7, nf + 1).shparlinski >=
          bound_baselines(q, 3, 7, nf).shparlinski - kEps);
  }
  for (uint64_t nf = 16; nf <= 24; ++nf)
    CHECK(bound_main2(q, 2, 25, nf + 1) >= bound_main2(q, 2, 25, nf) - kEps);
  for (uint64_t nf = 1; nf < 49; ++nf)
    CHECK(bound_main2_d2_nonsquare(7, 10, nf + 1) >=
          bound_main2_d2_nonsquare(7, 10, nf) - kEps);
}

TEST_CASE("case breakpoints evaluate on both sides") {
  const BreakpointAudit a = case_breakpoint_audit(5, 3, 100, false);
  CHECK(a.ne_lo == 5);
  CHECK(a.ne_hi == 25);
  CHECK(std::isfinite(a.lo_case1));
  CHECK(std::isfinite(a.lo_case2));
  CHECK(std::isfinite(a.hi_case2));
  CHECK(std::isfinite(a.hi_case3));
  const BreakpointAudit b = case_breakpoint_audit(5, 2, 100, true);
  CHECK(b.ne_lo == 3);  // ceil(sqrt 5)
  CHECK(b.ne_hi == 12);  // ceil(5^(3/2))
}

TEST_CASE("verify_bound composes measurement and evaluator") {
  const Field f = make_field(5, 1);
  // The isotropic pair has |E||F| = q^d = 25 < 16 q^d, so the even-dimension
  // theorem does not even apply to it; the sharpness it witnesses lives
  // below the hypothesis floor.
  const PointSet iso = isotropic_set(f, 2);
  const BoundReport r = verify_bound(f, iso, iso, TheoremId::MAIN2);
  CHECK(!r.hypotheses_met);
  CHECK(r.measured == 1);

  const PointSet e = random_set(f, 2, 20, 1);
  const PointSet g = random_set(f, 2, 20, 2);
  const BoundReport r2 = verify_bound(f, e, g, TheoremId::MAIN2);
  CHECK(r2.hypotheses_met);  // 400 >= 400
  CHECK(r2.bound_value == Catch::Approx(5.0 / 144));
  CHECK(r2.pass);
}

TEST_CASE("verify_bound reports unmet hypotheses without evaluating") {
  const Field f3 = make_field(3, 1);
  const PointSet full = PointSet::full(f3, 2);
  const BoundReport r = verify_bound(f3, full, full, TheoremId::MAIN2);
  CHECK(!r.hypotheses_met);
  CHECK(!r.pass);
  CHECK(r.measured == 3);
  CHECK(!r.hypothesis_detail.empty());

  PointSet empty(f3, 2);
  const BoundReport r2 = verify_bound(f3, empty, full, TheoremId::MAIN1);
  CHECK(!r2.hypotheses_met);  // |E| >= 1 fails (and d = 2 besides)
}

TEST_CASE("verify_bound detects product sets") {
  const Field f = make_field(5, 1);
  const PointSet prod = product_set(f, 2, {0, 1, 2});
  const PointSet g = random_set(f, 2, 20, 9);
  const BoundReport r = verify_bound(f, prod, g, TheoremId::MAIN3);
  CHECK(r.hypotheses_met);
  CHECK(r.pass);

  PointSet not_prod = prod;
  not_prod.erase(0);
  const BoundReport r2 = verify_bound(f, not_prod, g, TheoremId::MAIN3);
  CHECK(!r2.hypotheses_met);
}

TEST_CASE("verify_bound on empty sets") {
  const Field f = make_field(5, 1);
  PointSet empty(f, 2);
  const BoundReport r = verify_bound(f, empty, empty, TheoremId::SHPARLINSKI);
  CHECK(r.hypotheses_met);
  CHECK(r.measured == 0);
  CHECK(r.bound_value == 0.0);
  CHECK(r.pass);
  // An empty product set: bound 0, measured 0.
  const BoundReport r3 = verify_bound(f, empty, empty, TheoremId::MAIN3);
  CHECK(r3.hypotheses_met);
  CHECK(r3.pass);
}

TEST_CASE("theorem sweeps on random hypothesis-satisfying instances") {
  // MAIN1 at (3,3) and (5,3).
  for (uint64_t p : {3u, 5u}) {
    const Field f = make_field(p, 1);
    const uint64_t n = ipow(p, 3);
    for (uint64_t i = 0; i < 30; ++i) {
      SplitMix64 rng(derive_seed(41, p, 3, i));
      const PointSet e = random_set(f, 3, 1 + rng.bounded(n), rng.next());
      const PointSet g = random_set(f, 3, 1 + rng.bounded(n), rng.next());
      const BoundReport r = verify_bound(f, e, g, TheoremId::MAIN1);
      CAPTURE(p, i, r.bound_value, r.measured);
      CHECK(r.hypotheses_met);
      CHECK(r.pass);
    }
  }
  // MAIN2 at (5,2) with |E||F| >= 400.
  {
    const Field f = make_field(5, 1);
    for (uint64_t i = 0; i < 30; ++i) {
      SplitMix64 rng(derive_seed(43, 5, 2, i));
      const uint64_t ne = 16 + rng.bounded(10);
      const uint64_t min_f = (400 + ne - 1) / ne;
      const PointSet e = random_set(f, 2, ne, rng.next());
      const PointSet g =
          random_set(f, 2, min_f + rng.bounded(26 - min_f), rng.next());
      const BoundReport r = verify_bound(f, e, g, TheoremId::MAIN2);
      CHECK(r.hypotheses_met);
      CHECK(r.pass);
    }
  }
  // MAIN2_D2_NONSQUARE at q = 7: no size hypothesis.
  {
    const Field f = make_field(7, 1);
    for (uint64_t i = 0; i < 30; ++i) {
      SplitMix64 rng(derive_seed(47, 7, 2, i));
      const PointSet e = random_set(f, 2, 1 + rng.bounded(49), rng.next());
      const PointSet g = random_set(f, 2, 1 + rng.bounded(49), rng.next());
      const BoundReport r =
          verify_bound(f, e, g, TheoremId::MAIN2_D2_NONSQUARE);
      CAPTURE(i, e.cardinality(), g.cardinality(), r.bound_value, r.measured);
      CHECK(r.hypotheses_met);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("odd-dimension improvement over the baseline at larger q") {
  const auto rows = baseline_comparison_table({5, 7, 9, 11, 13});
  REQUIRE(rows.size() == 5);
  // The margin turns positive from q = 9 on for this instance family.
  CHECK(rows[2].margin > 0);
  CHECK(rows[3].margin > 0);
  CHECK(rows[4].margin > 0);
  // Frozen values at q = 9: min{4.5, 648/648} = 1 vs 5832/7209.
  CHECK(rows[2].main1 == Catch::Approx(1.0));
  CHECK(rows[2].shparlinski == Catch::Approx(5832.0 / 7209));
}
