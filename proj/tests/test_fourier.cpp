#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "fqlab/fourier.hpp"
#include "fqlab/setgen.hpp"

using namespace fqlab;

namespace {

PointSet sphere_as_set(const Field& f, const SphereTable& t, Elem r) {
  PointSet s(f, t.d);
  for (uint32_t idx : t.members[r]) s.insert(idx);
  return s;
}

}  // namespace

TEST_CASE("dft of the full space is the delta at zero") {
  const Field f = make_field(5, 1);
  const SpectralTable t = dft_set(f, PointSet::full(f, 2));
  CHECK(std::abs(t.values[0] - Cx(1, 0)) < 1e-12);
  for (uint64_t m = 1; m < 25; ++m) CHECK(std::abs(t.values[m]) < 1e-12);
}

TEST_CASE("dft of a singleton has flat magnitude q^-d") {
  const Field f = make_field(3, 1);
  PointSet s(f, 2);
  s.insert(5);
  const SpectralTable t = dft_set(f, s);
  for (uint64_t m = 0; m < 9; ++m)
    CHECK(std::abs(std::abs(t.values[m]) - 1.0 / 9) < 1e-12);
}

TEST_CASE("dft at frequency zero is the density") {
  const Field f = make_field(7, 1);
  const PointSet e = random_set(f, 2, 11, 3);
  const SpectralTable t = dft_set(f, e);
  CHECK(std::abs(t.values[0] - Cx(11.0 / 49, 0)) < 1e-12);
}

TEST_CASE("plancherel on random sets") {
  for (auto [p, k, d] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {3u, 1u, 3u},
                         {3u, 2u, 2u}, {7u, 1u, 2u}}) {
    const Field f = make_field(p, k);
    const uint64_t n = ipow(f.q(), d);
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const PointSet e = random_set(f, d, SplitMix64(seed).bounded(n + 1), seed);
      const SpectralTable t = dft_set(f, e);
      double total = 0;
      for (const Cx& v : t.values) total += std::norm(v);
      CHECK(std::abs(total - static_cast<double>(e.cardinality()) / n) < 1e-6);
    }
  }
}

TEST_CASE("inversion round trip recovers indicators") {
  const Field f = make_field(5, 1);
  const PointSet e = random_set(f, 2, 12, 7);
  const std::vector<Cx> back = inverse_dft(f, dft_set(f, e));
  double residual = 0;
  const auto rounded = round_to_integers(back, 1e-6, &residual);
  CHECK(residual < 1e-6);
  for (uint64_t i = 0; i < 25; ++i)
    CHECK(rounded[i] == (e.contains(i) ? 1 : 0));
}

TEST_CASE("inverse of the zero table is zero") {
  const Field f = make_field(3, 1);
  SpectralTable t;
  t.q = 3;
  t.d = 2;
  t.values.assign(9, Cx(0, 0));
  for (const Cx& v : inverse_dft(f, t)) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("round_to_integers enforces the residual gate") {
  std::vector<Cx> vals{Cx(1.0, 0.0), Cx(2.0 + 1e-3, 0.0)};
  CHECK_THROWS_MATCHES(round_to_integers(vals, 1e-6), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::ResidualTooLarge;
                       }));
}

TEST_CASE("orthogonality of the d-dimensional character sums") {
  for (auto [p, k, d] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {3u, 1u, 3u},
                         {3u, 2u, 2u}}) {
    const Field f = make_field(p, k);
    const uint64_t n = ipow(f.q(), d);
    std::vector<Elem> mc(d), xc(d);
    for (uint64_t m = 0; m < n; ++m) {
      decode_point(f, d, m, mc);
      Cx sum = 0;
      for (uint64_t x = 0; x < n; ++x) {
        decode_point(f, d, x, xc);
        Elem dot = 0;
        for (uint32_t i = 0; i < d; ++i)
          dot = f.add(dot, f.mul(mc[i], xc[i]));
        sum += f.chi(dot);
      }
      const Cx expect = m == 0 ? Cx(static_cast<double>(n), 0) : Cx(0, 0);
      CHECK(std::abs(sum - expect) < 1e-6);
    }
  }
}

TEST_CASE("closed-form sphere transform matches the direct dft") {
  for (auto [p, k, d] : {std::tuple{3u, 1u, 2u}, {3u, 1u, 3u}, {5u, 1u, 2u},
                         {5u, 1u, 3u}, {7u, 1u, 2u}, {7u, 1u, 3u},
                         {3u, 2u, 2u}, {3u, 2u, 3u}}) {
    const Field f = make_field(p, k);
    const SphereTable spheres = build_spheres(f, d);
    const auto norms = norm_table(f, d);
    const SphereFt sft(f, d);
    double worst = 0;
    for (Elem t = 0; t < f.q(); ++t) {
      const SpectralTable direct = dft_set(f, sphere_as_set(f, spheres, t));
      for (uint64_t m = 0; m < direct.values.size(); ++m) {
        const Cx closed = sft.at_norm(t, norms[m], m == 0);
        worst = std::max(worst, std::abs(closed - direct.values[m]));
      }
    }
    CAPTURE(p, k, d);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("closed form at frequency zero gives the sphere density") {
  for (auto [p, d] : {std::pair{3u, 2u}, {5u, 2u}, {7u, 3u}}) {
    const Field f = make_field(p, 1);
    const SphereTable spheres = build_spheres(f, d);
    const SphereFt sft(f, d);
    for (Elem t = 0; t < f.q(); ++t) {
      const double density = static_cast<double>(spheres.cardinality(t)) /
                             static_cast<double>(ipow(f.q(), d));
      CHECK(std::abs(sft.at_norm(t, 0, true) - Cx(density, 0)) < 1e-9);
    }
  }
}

TEST_CASE("sphere transform correlation identity") {
  // Closed-form RHS against sum_t S_t_hat(m) conj(S_t_hat(m')) from the
  // directly enumerated spheres, exhaustively over all frequency pairs.
  for (auto [p, d] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}}) {
    const Field f = make_field(p, 1);
    const uint64_t n = ipow(f.q(), d);
    const SphereTable spheres = build_spheres(f, d);
    const auto norms = norm_table(f, d);
    std::vector<SpectralTable> hats;
    for (Elem t = 0; t < f.q(); ++t)
      hats.push_back(dft_set(f, sphere_as_set(f, spheres, t)));
    double worst = 0;
    for (uint64_t m = 0; m < n; ++m)
      for (uint64_t m2 = 0; m2 < n; ++m2) {
        Cx direct = 0;
        for (Elem t = 0; t < f.q(); ++t)
          direct += hats[t].values[m] * std::conj(hats[t].values[m2]);
        const Cx closed = sphere_ft_correlation_norm(
            f, d, norms[m], norms[m2], m == 0, m2 == 0);
        worst = std::max(worst, std::abs(direct - closed));
      }
    CAPTURE(p, d);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("correlation closed form special values") {
  const Field f = make_field(5, 1);
  const uint32_t d = 2;
  // m = m' = 0: q^-1 + q^-(d+1) (q - 1).
  CHECK(std::abs(sphere_ft_correlation_norm(f, d, 0, 0, true, true) -
                 Cx(1.0 / 5 + 4.0 / 125, 0)) < 1e-12);
  // ||m|| != ||m'||: the character sum collapses to -1.
  CHECK(std::abs(sphere_ft_correlation_norm(f, d, 1, 2, false, false) -
                 Cx(-1.0 / 125, 0)) < 1e-12);
}

TEST_CASE("decay audit classifies and passes the caps") {
  const Field f3 = make_field(3, 1);
  const DecayAudit a33 = decay_audit(f3, 3);
  CHECK(a33.pass);
  CHECK(a33.count_exceptional == 0);  // odd d has no exceptional class
  CHECK(a33.max_generic <= 2.0 * std::pow(3.0, -2.0) + 1e-9);

  const Field f5 = make_field(5, 1);
  const DecayAudit a52 = decay_audit(f5, 2);
  CHECK(a52.pass);
  CHECK(a52.count_exceptional > 0);  // S_0 is a cone: nonzero m with ||m|| = 0
  CHECK(a52.max_exceptional <= 1.0 / 5 + 1e-9);

  const Field f7 = make_field(7, 1);
  const DecayAudit a72 = decay_audit(f7, 2);
  CHECK(a72.pass);
  CHECK(a72.count_exceptional == 0);  // -1 nonsquare: ||m|| = 0 forces m = 0

  const Field f9 = make_field(3, 2);
  const DecayAudit a92 = decay_audit(f9, 2);
  CHECK(a92.pass);
  CHECK(a92.count_exceptional > 0);
  // At q = 9 the exceptional class genuinely needs its larger cap.
  CHECK(a92.max_exceptional > a92.cap_generic);
}

TEST_CASE("decay audit over the default grid") {
  for (auto [p, k, d] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 3u}, {3u, 2u, 3u},
                         {13u, 1u, 2u}}) {
    const Field f = make_field(p, k);
    CAPTURE(p, k, d);
    CHECK(decay_audit(f, d).pass);
  }
}
