#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fqlab/distance.hpp"
#include "fqlab/setgen.hpp"

using namespace fqlab;

namespace {

PointSet set_of(const Field& f, uint32_t d, std::vector<uint64_t> idx) {
  PointSet s(f, d);
  for (uint64_t i : idx) s.insert(i);
  return s;
}

uint64_t random_size(SplitMix64& rng, uint64_t n) { return rng.bounded(n + 1); }

}  // namespace

TEST_CASE("distance set basics") {
  const Field f = make_field(3, 1);
  const PointSet single = set_of(f, 2, {4});
  CHECK(distance_set(f, single, single) == std::vector<Elem>{0});

  const PointSet full = PointSet::full(f, 2);
  CHECK(distance_set(f, full, full) == std::vector<Elem>{0, 1, 2});

  const PointSet empty(f, 2);
  CHECK(distance_set(f, empty, full).empty());

  const Field f5 = make_field(5, 1);
  PointSet other(f5, 2);
  CHECK_THROWS_MATCHES(distance_set(f, single, other), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::DimensionMismatch;
                       }));
}

TEST_CASE("the isotropic line has a single distance") {
  const Field f = make_field(5, 1);
  const PointSet e = isotropic_set(f, 2);
  CHECK(e.cardinality() == 5);
  CHECK(e.cardinality() * e.cardinality() == ipow(5, 2));
  CHECK(distance_set(f, e, e) == std::vector<Elem>{0});
}

TEST_CASE("nu by brute force") {
  const Field f = make_field(3, 1);
  // E = F = {(0,0), (1,0)}: indices 0 and 1.
  const PointSet e = set_of(f, 2, {0, 1});
  const NuTable nu = nu_brute(f, e, e);
  CHECK(nu.counts == std::vector<uint64_t>{2, 2, 0});

  const PointSet full = PointSet::full(f, 2);
  CHECK(nu_brute(f, full, full).total() == 81);

  const Field f5 = make_field(5, 1);
  const PointSet iso = isotropic_set(f5, 2);
  const NuTable nu_iso = nu_brute(f5, iso, iso);
  CHECK(nu_iso.counts[0] == 25);
  CHECK(nu_iso.total() == 25);
}

TEST_CASE("nu via the spectral identity matches brute force") {
  for (auto [p, d] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {5u, 3u},
                      {7u, 2u}, {7u, 3u}}) {
    const Field f = make_field(p, 1);
    const uint64_t n = ipow(f.q(), d);
    for (uint64_t i = 0; i < 25; ++i) {
      SplitMix64 rng(derive_seed(2024, p, d, i));
      const PointSet e = random_set(f, d, random_size(rng, n), rng.next());
      const PointSet g = random_set(f, d, random_size(rng, n), rng.next());
      double residual = 0;
      const NuTable fast = nu_fourier(f, e, g, kDefaultTol, &residual);
      const NuTable slow = nu_brute(f, e, g);
      CAPTURE(p, d, i, residual);
      CHECK(fast.counts == slow.counts);
      CHECK(residual < 1e-6);
    }
  }
}

TEST_CASE("nu of full sets counts sphere partners") {
  const Field f = make_field(5, 1);
  const PointSet full = PointSet::full(f, 2);
  const NuTable nu = nu_fourier(f, full, full);
  const SphereTable spheres = build_spheres(f, 2);
  for (Elem t = 0; t < 5; ++t)
    CHECK(nu.counts[t] == ipow(5, 2) * spheres.cardinality(t));
}

TEST_CASE("nu of an empty set is zero") {
  const Field f = make_field(3, 1);
  const PointSet empty(f, 2);
  const NuTable nu = nu_fourier(f, empty, PointSet::full(f, 2));
  for (uint64_t c : nu.counts) CHECK(c == 0);
}

TEST_CASE("nu totals and support match the distance set") {
  const Field f = make_field(7, 1);
  for (uint64_t i = 0; i < 10; ++i) {
    SplitMix64 rng(derive_seed(11, 7, 2, i));
    const PointSet e = random_set(f, 2, random_size(rng, 49), rng.next());
    const PointSet g = random_set(f, 2, random_size(rng, 49), rng.next());
    const NuTable nu = nu_brute(f, e, g);
    CHECK(nu.total() == e.cardinality() * g.cardinality());
    CHECK(nu.support_size() == distance_set(f, e, g).size());
  }
}

TEST_CASE("spherical maxima on structured sets") {
  const Field f = make_field(5, 1);
  const PointSet full = PointSet::full(f, 2);
  const SphericalMax sm_full = spherical_max(f, full);
  CHECK(std::abs(sm_full.value_all - 1.0) < 1e-12);  // delta spectrum at 0
  CHECK(sm_full.value_star < 1e-12);

  PointSet single(f, 2);
  single.insert(7);
  const SphericalMax sm_single = spherical_max(f, single);
  const SphereTable spheres = build_spheres(f, 2);
  uint64_t max_card = 0;
  for (Elem r = 0; r < 5; ++r)
    max_card = std::max(max_card, spheres.cardinality(r));
  CHECK(std::abs(sm_single.value_all -
                 static_cast<double>(max_card) / ipow(5, 4)) < 1e-12);
}

TEST_CASE("spherical maxima never exceed the density cap") {
  for (auto [p, d] : {std::pair{5u, 2u}, {3u, 3u}, {7u, 2u}}) {
    const Field f = make_field(p, 1);
    const uint64_t n = ipow(f.q(), d);
    for (uint64_t i = 0; i < 30; ++i) {
      SplitMix64 rng(derive_seed(5, p, d, i));
      const PointSet e = random_set(f, d, random_size(rng, n), rng.next());
      const SphericalMax sm = spherical_max(f, e);
      CHECK(sm.value_star <= sm.value_all + 1e-12);
      CHECK(sm.value_all <=
            static_cast<double>(e.cardinality()) / ipow(f.q(), d) + 1e-6);
    }
  }
}

TEST_CASE("quadratic nu bounds hold on random pairs") {
  for (auto [p, d] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {5u, 3u}}) {
    const Field f = make_field(p, 1);
    const uint64_t n = ipow(f.q(), d);
    for (uint64_t i = 0; i < 25; ++i) {
      SplitMix64 rng(derive_seed(17, p, d, i));
      const PointSet e = random_set(f, d, random_size(rng, n), rng.next());
      const PointSet g = random_set(f, d, random_size(rng, n), rng.next());
      const L2Report r = l2_bounds_check(f, e, g);
      CAPTURE(p, d, i, r.lhs, r.rhs_all, r.rhs_star);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("quadratic nu bounds on structured pairs") {
  const Field f = make_field(5, 1);
  const PointSet iso = isotropic_set(f, 2);
  CHECK(l2_bounds_check(f, iso, iso).pass);

  PointSet single(f, 2);
  single.insert(3);
  CHECK(l2_bounds_check(f, single, PointSet::full(f, 2)).pass);
}

TEST_CASE("nu0 checks under the even-dimension hypothesis") {
  const Field f5 = make_field(5, 1);
  SplitMix64 rng(99);
  const PointSet e = random_set(f5, 2, 21, rng.next());
  const PointSet g = random_set(f5, 2, 21, rng.next());
  const Nu0Report r = nu0_even_checks(f5, e, g);
  CHECK(r.pass);

  // Infeasible regime: 16 q^d = 144 > 81.
  const Field f3 = make_field(3, 1);
  const PointSet full3 = PointSet::full(f3, 2);
  CHECK_THROWS_MATCHES(nu0_even_checks(f3, full3, full3), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e2) {
                         return e2.code() == ErrorCode::HypothesisNotMet;
                       }));

  // Odd dimension is a hypothesis failure, not an evaluation.
  const PointSet full53 = PointSet::full(f5, 3);
  CHECK_THROWS_AS(nu0_even_checks(f5, full53, full53), Error);

  // q = 3, d = 4: 16 q^d = 1296 <= 37 * 37.
  const PointSet e4 = random_set(f3, 4, 37, 1);
  const PointSet g4 = random_set(f3, 4, 37, 2);
  CHECK(nu0_even_checks(f3, e4, g4).pass);
}

TEST_CASE("planar spherical cap, exhaustive over the 9-point plane") {
  const Field f = make_field(3, 1);
  for (uint32_t mask = 0; mask < 512; ++mask) {
    PointSet e(f, 2);
    for (uint32_t b = 0; b < 9; ++b)
      if (mask & (1u << b)) e.insert(b);
    const CapReport r = restriction_check(f, e);
    CAPTURE(mask, r.value, r.cap);
    CHECK(r.pass);
  }
}

TEST_CASE("planar spherical cap on random subsets of the 49-point plane") {
  const Field f = make_field(7, 1);
  for (uint64_t i = 0; i < 200; ++i) {
    SplitMix64 rng(derive_seed(7, 7, 2, i));
    const PointSet e = random_set(f, 2, random_size(rng, 49), rng.next());
    CHECK(restriction_check(f, e).pass);
  }
  const PointSet empty(f, 2);
  const CapReport r = restriction_check(f, empty);
  CHECK(r.pass);
  CHECK(r.value == 0.0);
  CHECK_THROWS_AS(restriction_check(f, PointSet(f, 3)), Error);
}

TEST_CASE("spherical sum caps in both parities") {
  const Field f3 = make_field(3, 1);
  for (uint64_t i = 0; i < 60; ++i) {
    SplitMix64 rng(derive_seed(23, 3, 3, i));
    const PointSet e = random_set(f3, 3, random_size(rng, 27), rng.next());
    CHECK(sph_sum_bound_check(f3, e).pass);  // odd d: M(E)
  }
  const Field f5 = make_field(5, 1);
  for (uint64_t i = 0; i < 60; ++i) {
    SplitMix64 rng(derive_seed(23, 5, 2, i));
    const PointSet e = random_set(f5, 2, random_size(rng, 25), rng.next());
    CHECK(sph_sum_bound_check(f5, e).pass);  // even d: M*(E)
  }
  PointSet single(f3, 3);
  single.insert(11);
  CHECK(sph_sum_bound_check(f3, single).pass);
}

TEST_CASE("product spherical cap") {
  const Field f5 = make_field(5, 1);
  PointSet ebar1(f5, 1);
  for (Elem c : {0u, 1u, 2u}) ebar1.insert(c);
  CHECK(product_bound_check(f5, ebar1, {0, 1, 2}).pass);

  const Field f3 = make_field(3, 1);
  const PointSet ebar2 = random_set(f3, 2, 5, 77);
  CHECK(product_bound_check(f3, ebar2, {0, 1, 2}).pass);

  // Empty factor: M = 0 <= 0.
  const CapReport r = product_bound_check(f5, ebar1, {});
  CHECK(r.pass);
  CHECK(r.value == 0.0);
}

TEST_CASE("cauchy-schwarz lower bounds on the distance count") {
  for (auto [p, d] : {std::pair{3u, 2u}, {5u, 2u}, {3u, 3u}}) {
    const Field f = make_field(p, 1);
    const uint64_t n = ipow(f.q(), d);
    for (uint64_t i = 0; i < 40; ++i) {
      SplitMix64 rng(derive_seed(31, p, d, i));
      const PointSet e = random_set(f, d, random_size(rng, n), rng.next());
      const PointSet g = random_set(f, d, random_size(rng, n), rng.next());
      const CsReport r = cs_lower_bounds(f, e, g);
      CAPTURE(p, d, i, r.measured, r.lower_all, r.lower_star);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("distance statistics are independent of the character choice") {
  const Field f = make_field(5, 1);
  const Field g = f.with_character_scale(2);
  SplitMix64 rng(4242);
  const PointSet e = random_set(f, 2, 13, rng.next());
  const PointSet h = random_set(f, 2, 9, rng.next());

  CHECK(nu_fourier(f, e, h).counts == nu_fourier(g, e, h).counts);
  CHECK(distance_set(f, e, h) == distance_set(g, e, h));
  CHECK(decay_audit(f, 2).pass == decay_audit(g, 2).pass);
  const L2Report rf = l2_bounds_check(f, e, h);
  const L2Report rg = l2_bounds_check(g, e, h);
  CHECK(rf.pass == rg.pass);
  CHECK(std::abs(rf.lhs - rg.lhs) < 1e-9);
}
