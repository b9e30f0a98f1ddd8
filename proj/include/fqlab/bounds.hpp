#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fqlab/common.hpp"
#include "fqlab/distance.hpp"
#include "fqlab/error.hpp"
#include "fqlab/field.hpp"
#include "fqlab/pointset.hpp"

namespace fqlab {

enum class TheoremId {
  MAIN1,
  MAIN2,
  MAIN2_D2,
  MAIN2_D2_NONSQUARE,
  MAIN3,
  COROLLARY,
  SHPARLINSKI,
  DIETMANN,
};

constexpr std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::MAIN1: return "MAIN1";
    case TheoremId::MAIN2: return "MAIN2";
    case TheoremId::MAIN2_D2: return "MAIN2_D2";
    case TheoremId::MAIN2_D2_NONSQUARE: return "MAIN2_D2_NONSQUARE";
    case TheoremId::MAIN3: return "MAIN3";
    case TheoremId::COROLLARY: return "COROLLARY";
    case TheoremId::SHPARLINSKI: return "SHPARLINSKI";
    case TheoremId::DIETMANN: return "DIETMANN";
  }
  return "UNKNOWN";
}

inline TheoremId theorem_from_name(const std::string& s) {
  for (TheoremId id :
       {TheoremId::MAIN1, TheoremId::MAIN2, TheoremId::MAIN2_D2,
        TheoremId::MAIN2_D2_NONSQUARE, TheoremId::MAIN3, TheoremId::COROLLARY,
        TheoremId::SHPARLINSKI, TheoremId::DIETMANN})
    if (s == theorem_name(id)) return id;
  fail(ErrorCode::ParseError, "unknown theorem id: " + s);
}

namespace detail {

// Case split on |E| against q^((d-1)/2) and q^((d+1)/2); half-integer
// thresholds are compared exactly via nE^2 vs q^(d-+1).
inline int size_case(uint64_t q, uint32_t d, uint64_t ne) {
  const uint64_t lo2 = ipow(q, d - 1);  // (q^((d-1)/2))^2
  const uint64_t hi2 = ipow(q, d + 1);
  const uint64_t ne2 = ne * ne;
  if (ne2 < lo2) return 1;
  if (ne2 < hi2) return 2;
  return 3;
}

inline void require_sizes(uint64_t q, uint32_t d, uint64_t ne, uint64_t nf,
                          uint64_t ne_min) {
  const uint64_t qd = ipow(q, d);
  if (ne < ne_min || ne > qd)
    fail(ErrorCode::OutOfRange, "|E| = " + std::to_string(ne) +
                                    " outside [" + std::to_string(ne_min) +
                                    ", q^d]");
  if (nf > qd) fail(ErrorCode::OutOfRange, "|F| > q^d");
}

}  // namespace detail

// Odd d >= 3:
//   |E| <  q^((d-1)/2)          -> min{ q/2, |E||F| / (8 q^(d-1)) }
//   |E| in [q^((d-1)/2), q^((d+1)/2)) -> min{ q/2, |F| / (8 q^((d-1)/2)) }
//   |E| >= q^((d+1)/2)          -> min{ q/2, |E||F| / (2 q^d) }
inline double bound_main1(uint64_t q, uint32_t d, uint64_t ne, uint64_t nf) {
  if (d % 2 == 0) fail(ErrorCode::EvenDimension, "requires odd d >= 3");
  if (d < 3) fail(ErrorCode::OutOfRange, "requires d >= 3");
  detail::require_sizes(q, d, ne, nf, 1);
  const double qd = static_cast<double>(q);
  const double half_q = qd / 2;
  switch (detail::size_case(q, d, ne)) {
    case 1:
      return std::min(half_q, static_cast<double>(ne) * nf /
                                  (8.0 * ipow(q, d - 1)));
    case 2:
      return std::min(half_q, static_cast<double>(nf) /
                                  (8.0 * std::sqrt(
                                             static_cast<double>(ipow(q, d - 1)))));
    default:
      return std::min(half_q,
                      static_cast<double>(ne) * nf / (2.0 * ipow(q, d)));
  }
}

// Even d >= 2 under |E||F| >= 16 q^d:
//   |E| <  q^((d-1)/2)          -> q / 144
//   |E| in [q^((d-1)/2), q^((d+1)/2)) -> (1/144) min{ q, |F| / (2 q^((d-1)/2)) }
//   |E| >= q^((d+1)/2)          -> (1/144) min{ q, 2 |E||F| / q^d }
inline double bound_main2(uint64_t q, uint32_t d, uint64_t ne, uint64_t nf) {
  if (d % 2 != 0) fail(ErrorCode::OddDimension, "requires even d >= 2");
  detail::require_sizes(q, d, ne, nf, 1);
  const uint64_t qd = ipow(q, d);
  if (ne * nf < 16 * qd)
    fail(ErrorCode::HypothesisNotMet,
         "|E||F| = " + std::to_string(ne * nf) + " < 16 q^d = " +
             std::to_string(16 * qd));
  const double qq = static_cast<double>(q);
  switch (detail::size_case(q, d, ne)) {
    case 1:
      return qq / 144.0;
    case 2:
      return std::min(qq, static_cast<double>(nf) /
                              (2.0 * std::sqrt(
                                         static_cast<double>(ipow(q, d - 1))))) /
             144.0;
    default:
      return std::min(qq, 2.0 * static_cast<double>(ne) * nf / qd) / 144.0;
  }
}

// d = 2 under |E||F| >= 16 q^2: (1/72) min{ q/2, sqrt(|E|) |F| / (sqrt(3) q) }.
inline double bound_main2_d2(uint64_t q, uint64_t ne, uint64_t nf) {
  detail::require_sizes(q, 2, ne, nf, 1);
  if (ne * nf < 16 * q * q)
    fail(ErrorCode::HypothesisNotMet,
         "|E||F| = " + std::to_string(ne * nf) + " < 16 q^2 = " +
             std::to_string(16 * q * q));
  return std::min(static_cast<double>(q) / 2,
                  std::sqrt(static_cast<double>(ne)) * nf /
                      (std::sqrt(3.0) * q)) /
         72.0;
}

// d = 2 with -1 a nonsquare (q = 3 mod 4), no size hypothesis:
//   min{ q/2, sqrt(|E|) |F| / (2 (sqrt(3)+1) q) }.
inline double bound_main2_d2_nonsquare(uint64_t q, uint64_t ne, uint64_t nf) {
  if (q % 4 != 3)
    fail(ErrorCode::MinusOneIsSquare,
         "-1 is a square in F_q for q = " + std::to_string(q));
  detail::require_sizes(q, 2, ne, nf, 1);
  return std::min(static_cast<double>(q) / 2,
                  std::sqrt(static_cast<double>(ne)) * nf /
                      (2.0 * (std::sqrt(3.0) + 1.0) * q));
}

// Product sets E = A^d: min{ q/2, |E|^(1 - 1/d) |F| / (4 q^(d-1)) }, with
// |E|^(1 - 1/d) = |A|^(d-1).
inline double bound_main3(uint64_t q, uint32_t d, uint64_t na, uint64_t nf) {
  if (d < 2) fail(ErrorCode::OutOfRange, "requires d >= 2");
  if (na > q) fail(ErrorCode::OutOfRange, "|A| > q");
  if (nf > ipow(q, d)) fail(ErrorCode::OutOfRange, "|F| > q^d");
  if (na == 0) return 0.0;
  return std::min(static_cast<double>(q) / 2,
                  static_cast<double>(ipow(na, d - 1)) * nf /
                      (4.0 * ipow(q, d - 1)));
}

// Surrogate-constant form of the corollary: under |E||F| >= 16 q^d and
// |E| <= |F|, measured >= c min{ q, |F| / q^((d-1)/2) } with c = 1/8 for odd
// d (routed through the odd-dimension theorem) and c = 1/144 for even d.
inline double bound_corollary(uint64_t q, uint32_t d, uint64_t ne,
                              uint64_t nf) {
  if (d < 2) fail(ErrorCode::OutOfRange, "requires d >= 2");
  detail::require_sizes(q, d, ne, nf, 1);
  if (ne > nf)
    fail(ErrorCode::HypothesisNotMet, "requires |E| <= |F|");
  const uint64_t qd = ipow(q, d);
  if (ne * nf < 16 * qd)
    fail(ErrorCode::HypothesisNotMet,
         "|E||F| = " + std::to_string(ne * nf) + " < 16 q^d = " +
             std::to_string(16 * qd));
  const double c = (d % 2 != 0) ? 1.0 / 8 : 1.0 / 144;
  return c * std::min(static_cast<double>(q),
                      static_cast<double>(nf) /
                          std::sqrt(static_cast<double>(ipow(q, d - 1))));
}

struct BaselineValues {
  double shparlinski = 0;
  double dietmann = 0;
  bool dietmann_met = false;
  std::string dietmann_detail;
};

// Comparison baselines:
//   Shparlinski: |E||F| q / (q^(d+1) + |E||F|), no hypothesis.
//   Dietmann (constant normalized to 1): min{ q, |F| / (q^((d-1)/2) ln q) }
//   under |F| >= |E| and |E||F| >= (900 + ln q) q^d.
inline BaselineValues bound_baselines(uint64_t q, uint32_t d, uint64_t ne,
                                      uint64_t nf) {
  BaselineValues out;
  const double product = static_cast<double>(ne) * static_cast<double>(nf);
  out.shparlinski =
      product * q / (static_cast<double>(ipow(q, d + 1)) + product);
  const double logq = std::log(static_cast<double>(q));
  const double floor_di = (900.0 + logq) * static_cast<double>(ipow(q, d));
  if (nf < ne) {
    out.dietmann_detail = "requires |F| >= |E|";
  } else if (product < floor_di) {
    out.dietmann_detail = "|E||F| < (900 + log q) q^d";
  } else {
    out.dietmann_met = true;
    out.dietmann = std::min(
        static_cast<double>(q),
        static_cast<double>(nf) /
            (std::sqrt(static_cast<double>(ipow(q, d - 1))) * logq));
  }
  return out;
}

struct BoundReport {
  TheoremId theorem = TheoremId::MAIN1;
  bool hypotheses_met = false;
  std::string hypothesis_detail;
  double bound_value = 0;
  uint64_t measured = 0;
  bool pass = false;
};

namespace detail {

// If E = A^d for some A, returns A's elements.
inline std::optional<std::vector<Elem>> product_factor(const Field& f,
                                                       const PointSet& E) {
  std::set<Elem> a;
  const auto members = E.members();
  for (uint32_t idx : members) {
    uint64_t x = idx;
    for (uint32_t i = 0; i < E.d(); ++i) {
      a.insert(static_cast<Elem>(x % f.q()));
      x /= f.q();
    }
  }
  uint64_t expected = 1;
  for (uint32_t i = 0; i < E.d(); ++i) expected *= a.size();
  if (expected != E.cardinality()) return std::nullopt;
  return std::vector<Elem>(a.begin(), a.end());
}

}  // namespace detail

// Measures |Delta(E, F)| and compares it against the requested bound.
// Hypothesis failures produce a report with hypotheses_met = false;
// structural errors (mismatched spaces, blown budgets) propagate.
inline BoundReport verify_bound(const Field& f, const PointSet& E,
                                const PointSet& F, TheoremId id) {
  require_same_space(f, E, F);
  BoundReport r;
  r.theorem = id;
  r.measured = distance_set(f, E, F).size();
  const uint64_t q = f.q();
  const uint32_t d = E.d();
  const uint64_t ne = E.cardinality();
  const uint64_t nf = F.cardinality();
  try {
    switch (id) {
      case TheoremId::MAIN1:
        r.bound_value = bound_main1(q, d, ne, nf);
        break;
      case TheoremId::MAIN2:
        r.bound_value = bound_main2(q, d, ne, nf);
        break;
      case TheoremId::MAIN2_D2:
        if (d != 2) fail(ErrorCode::HypothesisNotMet, "requires d = 2");
        r.bound_value = bound_main2_d2(q, ne, nf);
        break;
      case TheoremId::MAIN2_D2_NONSQUARE:
        if (d != 2) fail(ErrorCode::HypothesisNotMet, "requires d = 2");
        r.bound_value = bound_main2_d2_nonsquare(q, ne, nf);
        break;
      case TheoremId::MAIN3: {
        const auto a = detail::product_factor(f, E);
        if (!a) fail(ErrorCode::HypothesisNotMet, "E is not a product set A^d");
        r.bound_value = bound_main3(q, d, a->size(), nf);
        break;
      }
      case TheoremId::COROLLARY:
        r.bound_value = bound_corollary(q, d, ne, nf);
        break;
      case TheoremId::SHPARLINSKI:
        r.bound_value = bound_baselines(q, d, ne, nf).shparlinski;
        break;
      case TheoremId::DIETMANN: {
        const BaselineValues b = bound_baselines(q, d, ne, nf);
        if (!b.dietmann_met)
          fail(ErrorCode::HypothesisNotMet, b.dietmann_detail);
        r.bound_value = b.dietmann;
        break;
      }
    }
    r.hypotheses_met = true;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::HypothesisNotMet:
      case ErrorCode::OddDimension:
      case ErrorCode::EvenDimension:
      case ErrorCode::MinusOneIsSquare:
      case ErrorCode::OutOfRange:
        r.hypotheses_met = false;
        r.hypothesis_detail = e.what();
        r.bound_value = 0;
        r.pass = false;
        return r;
      default:
        throw;
    }
  }
  r.pass = static_cast<double>(r.measured) >= r.bound_value - kBoundPassMargin;
  return r;
}

// One row of the odd-dimension improvement table: |E| = q - 1, |F| = q^2 at
// d = 3, the new bound next to the Shparlinski baseline.
struct ComparisonRow {
  uint64_t q = 0;
  uint32_t d = 3;
  uint64_t ne = 0;
  uint64_t nf = 0;
  double main1 = 0;
  double shparlinski = 0;
  double margin = 0;
};

inline std::vector<ComparisonRow> baseline_comparison_table(
    const std::vector<uint64_t>& qs) {
  std::vector<ComparisonRow> rows;
  for (uint64_t q : qs) {
    ComparisonRow row;
    row.q = q;
    row.ne = q - 1;
    row.nf = q * q;
    row.main1 = bound_main1(q, 3, row.ne, row.nf);
    row.shparlinski = bound_baselines(q, 3, row.ne, row.nf).shparlinski;
    row.margin = row.main1 - row.shparlinski;
    rows.push_back(row);
  }
  return rows;
}

// Both adjacent formulas evaluated at the case breakpoints (diagnostic: the
// cases partition, no continuity is claimed).
struct BreakpointAudit {
  uint64_t ne_lo = 0;  // ceil(q^((d-1)/2))
  uint64_t ne_hi = 0;  // ceil(q^((d+1)/2))
  double lo_case1 = 0, lo_case2 = 0;
  double hi_case2 = 0, hi_case3 = 0;
};

inline BreakpointAudit case_breakpoint_audit(uint64_t q, uint32_t d,
                                             uint64_t nf, bool even_variant) {
  BreakpointAudit a;
  a.ne_lo = static_cast<uint64_t>(
      std::ceil(std::sqrt(static_cast<double>(ipow(q, d - 1)))));
  a.ne_hi = static_cast<uint64_t>(
      std::ceil(std::sqrt(static_cast<double>(ipow(q, d + 1)))));
  const double qq = static_cast<double>(q);
  const double lo_sqrt = std::sqrt(static_cast<double>(ipow(q, d - 1)));
  if (!even_variant) {
    a.lo_case1 = std::min(qq / 2, static_cast<double>(a.ne_lo) * nf /
                                      (8.0 * ipow(q, d - 1)));
    a.lo_case2 = std::min(qq / 2, nf / (8.0 * lo_sqrt));
    a.hi_case2 = a.lo_case2;
    a.hi_case3 = std::min(qq / 2, static_cast<double>(a.ne_hi) * nf /
                                      (2.0 * ipow(q, d)));
  } else {
    a.lo_case1 = qq / 144.0;
    a.lo_case2 = std::min(qq, nf / (2.0 * lo_sqrt)) / 144.0;
    a.hi_case2 = a.lo_case2;
    a.hi_case3 = std::min(qq, 2.0 * static_cast<double>(a.ne_hi) * nf /
                                  ipow(q, d)) /
                 144.0;
  }
  return a;
}

}  // namespace fqlab
