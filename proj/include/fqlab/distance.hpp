#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fqlab/common.hpp"
#include "fqlab/error.hpp"
#include "fqlab/field.hpp"
#include "fqlab/fourier.hpp"
#include "fqlab/geometry.hpp"
#include "fqlab/pointset.hpp"

namespace fqlab {

// nu(t) = #{(x, y) in E x F : ||x - y|| = t}, one count per t in F_q.
struct NuTable {
  std::vector<uint64_t> counts;

  uint64_t total() const {
    uint64_t s = 0;
    for (uint64_t c : counts) s += c;
    return s;
  }

  uint64_t support_size() const {
    uint64_t s = 0;
    for (uint64_t c : counts) s += (c > 0);
    return s;
  }

  // sum_t nu(t)^2, optionally excluding t = 0.
  double square_sum(bool skip_zero = false) const {
    double s = 0;
    for (size_t t = skip_zero ? 1 : 0; t < counts.size(); ++t)
      s += static_cast<double>(counts[t]) * static_cast<double>(counts[t]);
    return s;
  }
};

namespace detail {

inline Elem diff_norm(const Field& f, uint32_t d, uint64_t x, uint64_t y) {
  Elem acc = 0;
  for (uint32_t i = 0; i < d; ++i) {
    const Elem cx = static_cast<Elem>(x % f.q());
    const Elem cy = static_cast<Elem>(y % f.q());
    acc = f.add(acc, f.square(f.sub(cx, cy)));
    x /= f.q();
    y /= f.q();
  }
  return acc;
}

inline void require_pair_budget(const PointSet& E, const PointSet& F) {
  if (E.cardinality() * F.cardinality() > kMaxPairs)
    fail(ErrorCode::BudgetExceeded, "|E||F| exceeds the pair budget");
}

}  // namespace detail

inline NuTable nu_brute(const Field& f, const PointSet& E, const PointSet& F) {
  require_same_space(f, E, F);
  detail::require_pair_budget(E, F);
  NuTable nu;
  nu.counts.assign(f.q(), 0);
  const auto xs = E.members();
  const auto ys = F.members();
  for (uint32_t x : xs)
    for (uint32_t y : ys) ++nu.counts[detail::diff_norm(f, E.d(), x, y)];
  return nu;
}

// Delta(E, F) = { ||x - y|| : x in E, y in F }, ascending. Stops early once
// every value of F_q has been seen.
inline std::vector<Elem> distance_set(const Field& f, const PointSet& E,
                                      const PointSet& F) {
  require_same_space(f, E, F);
  detail::require_pair_budget(E, F);
  std::vector<bool> seen(f.q(), false);
  uint32_t found = 0;
  const auto xs = E.members();
  const auto ys = F.members();
  for (uint32_t x : xs) {
    for (uint32_t y : ys) {
      const Elem t = detail::diff_norm(f, E.d(), x, y);
      if (!seen[t]) {
        seen[t] = true;
        if (++found == f.q()) goto done;
      }
    }
  }
done:
  std::vector<Elem> out;
  out.reserve(found);
  for (Elem t = 0; t < f.q(); ++t)
    if (seen[t]) out.push_back(t);
  return out;
}

// Per-norm-class spectral mass sums used throughout:
//   W(u)     = sum_{||m|| = u} conj(E_hat(m)) F_hat(m)
//   power(u) = sum_{||m|| = u} |E_hat(m)|^2
struct SpectralByNorm {
  std::vector<Cx> cross;       // W(u)
  std::vector<double> powerE;  // for E
  std::vector<double> powerF;  // for F
};

inline SpectralByNorm spectral_by_norm(const Field& f, const SpectralTable& eh,
                                       const SpectralTable& fh) {
  SpectralByNorm out;
  out.cross.assign(f.q(), Cx(0, 0));
  out.powerE.assign(f.q(), 0.0);
  out.powerF.assign(f.q(), 0.0);
  const std::vector<Elem> norms = norm_table(f, eh.d);
  for (uint64_t m = 0; m < eh.values.size(); ++m) {
    const Elem u = norms[m];
    out.cross[u] += std::conj(eh.values[m]) * fh.values[m];
    out.powerE[u] += std::norm(eh.values[m]);
    out.powerF[u] += std::norm(fh.values[m]);
  }
  return out;
}

// nu(t) via the exact spectral identity
//   nu(t) = q^(2d) sum_m S_t_hat(m) conj(E_hat(m)) F_hat(m),
// with S_t_hat in closed form. Entries are rounded to integers under the
// residual gate; a large residual is an error, never a silent pass.
inline NuTable nu_fourier(const Field& f, const PointSet& E, const PointSet& F,
                          double tol = kDefaultTol,
                          double* max_residual = nullptr) {
  require_same_space(f, E, F);
  const uint32_t d = E.d();
  const SpectralTable eh = dft_set(f, E);
  const SpectralTable fh = dft_set(f, F);
  const SpectralByNorm byn = spectral_by_norm(f, eh, fh);
  const SphereFt sft(f, d);
  const double q2d = static_cast<double>(ipow(f.q(), d)) *
                     static_cast<double>(ipow(f.q(), d));
  const Cx delta_part =
      std::conj(eh.values[0]) * fh.values[0] / static_cast<double>(f.q());

  std::vector<Cx> raw(f.q());
  for (Elem t = 0; t < f.q(); ++t) {
    Cx acc = delta_part;
    for (Elem u = 0; u < f.q(); ++u)
      acc += sft.at_norm(t, u, false) * byn.cross[u];
    raw[t] = q2d * acc;
  }
  const std::vector<int64_t> rounded = round_to_integers(raw, tol, max_residual);
  NuTable nu;
  nu.counts.assign(f.q(), 0);
  for (Elem t = 0; t < f.q(); ++t) {
    if (rounded[t] < 0)
      fail(ErrorCode::ResidualTooLarge, "negative pair count after rounding");
    nu.counts[t] = static_cast<uint64_t>(rounded[t]);
  }
  return nu;
}

// M(E)  = max_r sum_{m in S_r} |E_hat(m)|^2, and M*(E) the max over r != 0.
struct SphericalMax {
  double value_all = 0;
  double value_star = 0;
  Elem argmax_all = 0;
  Elem argmax_star = 0;
  std::vector<double> per_radius;
};

inline SphericalMax spherical_max(const Field& f, const PointSet& E) {
  SphericalMax out;
  const SpectralTable eh = dft_set(f, E);
  const std::vector<Elem> norms = norm_table(f, E.d());
  out.per_radius.assign(f.q(), 0.0);
  for (uint64_t m = 0; m < eh.values.size(); ++m)
    out.per_radius[norms[m]] += std::norm(eh.values[m]);
  out.value_all = out.per_radius[0];
  out.argmax_all = 0;
  for (Elem r = 1; r < f.q(); ++r) {
    if (out.per_radius[r] > out.value_star) {
      out.value_star = out.per_radius[r];
      out.argmax_star = r;
    }
    if (out.per_radius[r] > out.value_all) {
      out.value_all = out.per_radius[r];
      out.argmax_all = r;
    }
  }
  return out;
}

// Both quadratic bounds on sum_t nu(t)^2:
//   (all radii)  sum nu^2 <= q^-1 |E|^2 |F|^2 + q^(2d) |F| M(E)
//   (star)       sum nu^2 <= q^-1 |E|^2 |F|^2 + q^(3d) |W(0)|^2 + q^(2d) |F| M*(E)
struct L2Report {
  double lhs = 0;
  double rhs_all = 0;
  double rhs_star = 0;
  double slack_all = 0;
  double slack_star = 0;
  bool pass = false;
};

inline L2Report l2_bounds_check(const Field& f, const PointSet& E,
                                const PointSet& F, double tol = kDefaultTol) {
  require_same_space(f, E, F);
  const uint32_t d = E.d();
  const double ne = static_cast<double>(E.cardinality());
  const double nf = static_cast<double>(F.cardinality());
  const NuTable nu = nu_brute(f, E, F);
  const SpectralTable eh = dft_set(f, E);
  const SpectralTable fh = dft_set(f, F);
  const SpectralByNorm byn = spectral_by_norm(f, eh, fh);
  const SphericalMax sm = spherical_max(f, E);
  const double qd = static_cast<double>(ipow(f.q(), d));
  const double common = ne * ne * nf * nf / f.q();

  L2Report r;
  r.lhs = nu.square_sum();
  r.rhs_all = common + qd * qd * nf * sm.value_all;
  r.rhs_star = common + qd * qd * qd * std::norm(byn.cross[0]) +
               qd * qd * nf * sm.value_star;
  r.slack_all = r.rhs_all - r.lhs;
  r.slack_star = r.rhs_star - r.lhs;
  r.pass = r.lhs <= r.rhs_all + tol && r.lhs <= r.rhs_star + tol;
  return r;
}

// For even d with |E||F| >= 16 q^d:
//   (|E||F| - nu(0))^2 >= |E|^2 |F|^2 / 36
//   q^(3d) |W(0)|^2 - nu(0)^2 <= q^-1 |E|^2 |F|^2
struct Nu0Report {
  uint64_t nu0 = 0;
  double separation_lhs = 0;
  double separation_rhs = 0;
  double mass_lhs = 0;
  double mass_rhs = 0;
  double slack_separation = 0;
  double slack_mass = 0;
  bool pass = false;
};

inline Nu0Report nu0_even_checks(const Field& f, const PointSet& E,
                                 const PointSet& F, double tol = kDefaultTol) {
  require_same_space(f, E, F);
  const uint32_t d = E.d();
  if (d % 2 != 0)
    fail(ErrorCode::HypothesisNotMet, "requires even dimension, d = " +
                                          std::to_string(d));
  const uint64_t product = E.cardinality() * F.cardinality();
  const uint64_t floor16 = 16 * ipow(f.q(), d);
  if (product < floor16)
    fail(ErrorCode::HypothesisNotMet,
         "|E||F| = " + std::to_string(product) + " < 16 q^d = " +
             std::to_string(floor16));

  const NuTable nu = nu_brute(f, E, F);
  const SpectralTable eh = dft_set(f, E);
  const SpectralTable fh = dft_set(f, F);
  const SpectralByNorm byn = spectral_by_norm(f, eh, fh);
  const double ne = static_cast<double>(E.cardinality());
  const double nf = static_cast<double>(F.cardinality());
  const double qd = static_cast<double>(ipow(f.q(), d));
  const double nu0 = static_cast<double>(nu.counts[0]);

  Nu0Report r;
  r.nu0 = nu.counts[0];
  r.separation_lhs = (ne * nf - nu0) * (ne * nf - nu0);
  r.separation_rhs = ne * ne * nf * nf / 36.0;
  r.mass_lhs = qd * qd * qd * std::norm(byn.cross[0]) - nu0 * nu0;
  r.mass_rhs = ne * ne * nf * nf / f.q();
  r.slack_separation = r.separation_lhs - r.separation_rhs;
  r.slack_mass = r.mass_rhs - r.mass_lhs;
  r.pass = r.separation_lhs >= r.separation_rhs - tol &&
           r.mass_lhs <= r.mass_rhs + tol;
  return r;
}

struct CapReport {
  double value = 0;  // the measured spherical quantity
  double cap = 0;
  double slack = 0;
  bool pass = false;
};

// d = 2 only: M*(E) <= sqrt(3) q^-3 |E|^(3/2).
inline CapReport restriction_check(const Field& f, const PointSet& E,
                                   double tol = kDefaultTol) {
  if (E.d() != 2)
    fail(ErrorCode::DimensionMismatch, "restriction check requires d = 2");
  const SphericalMax sm = spherical_max(f, E);
  const double ne = static_cast<double>(E.cardinality());
  CapReport r;
  r.value = sm.value_star;
  r.cap = std::sqrt(3.0) * std::pow(ne, 1.5) /
          static_cast<double>(ipow(f.q(), 3));
  r.slack = r.cap - r.value;
  r.pass = r.value <= r.cap + tol;
  return r;
}

// M(E) for odd d >= 3, M*(E) for even d >= 2, against
//   min{ q^-d |E|, 2 q^-(d+1) |E| + 2 q^-((3d+1)/2) |E|^2 }.
inline CapReport sph_sum_bound_check(const Field& f, const PointSet& E,
                                     double tol = kDefaultTol) {
  const uint32_t d = E.d();
  if (d < 2) fail(ErrorCode::DimensionMismatch, "requires d >= 2");
  const SphericalMax sm = spherical_max(f, E);
  const double ne = static_cast<double>(E.cardinality());
  const double q = f.q();
  const double cap1 = ne / std::pow(q, static_cast<double>(d));
  const double cap2 = 2 * ne / std::pow(q, static_cast<double>(d) + 1) +
                      2 * ne * ne / std::pow(q, (3.0 * d + 1) / 2);
  CapReport r;
  r.value = (d % 2 != 0) ? sm.value_all : sm.value_star;
  r.cap = std::min(cap1, cap2);
  r.slack = r.cap - r.value;
  r.pass = r.value <= r.cap + tol;
  return r;
}

// Assembles Ebar x A (A in the last coordinate) and checks
// M(Ebar x A) <= 2 q^-(d+1) |A|^2 |Ebar|.
inline CapReport product_bound_check(const Field& f, const PointSet& ebar,
                                     const std::vector<Elem>& a,
                                     double tol = kDefaultTol) {
  const uint32_t d = ebar.d() + 1;
  PointSet e(f, d);
  const uint64_t stride = ebar.universe_size();
  for (uint32_t base : ebar.members())
    for (Elem last : a) e.insert(base + stride * last);
  const SphericalMax sm = spherical_max(f, e);
  CapReport r;
  r.value = sm.value_all;
  r.cap = 2.0 * static_cast<double>(a.size()) * static_cast<double>(a.size()) *
          static_cast<double>(ebar.cardinality()) /
          std::pow(static_cast<double>(f.q()), static_cast<double>(d) + 1);
  r.slack = r.cap - r.value;
  r.pass = r.value <= r.cap + tol;
  return r;
}

// The two quadratic lower bounds on |Delta(E, F)|:
//   |Delta| >= |E|^2 |F|^2 / sum_t nu(t)^2
//   |Delta| >= (|E||F| - nu(0))^2 / sum_{t != 0} nu(t)^2
struct CsReport {
  uint64_t measured = 0;
  double lower_all = 0;
  double lower_star = 0;
  bool pass = false;
};

inline CsReport cs_lower_bounds(const Field& f, const PointSet& E,
                                const PointSet& F) {
  const NuTable nu = nu_brute(f, E, F);
  const double ne = static_cast<double>(E.cardinality());
  const double nf = static_cast<double>(F.cardinality());
  const double sq_all = nu.square_sum();
  const double sq_star = nu.square_sum(true);
  const double nu0 = static_cast<double>(nu.counts[0]);
  CsReport r;
  r.measured = nu.support_size();
  r.lower_all = sq_all > 0 ? ne * ne * nf * nf / sq_all : 0.0;
  r.lower_star =
      sq_star > 0 ? (ne * nf - nu0) * (ne * nf - nu0) / sq_star : 0.0;
  r.pass = static_cast<double>(r.measured) >= r.lower_all - kBoundPassMargin &&
           static_cast<double>(r.measured) >= r.lower_star - kBoundPassMargin;
  return r;
}

}  // namespace fqlab
