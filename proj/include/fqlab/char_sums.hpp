#pragma once

#include <cmath>
#include <complex>

#include "fqlab/common.hpp"
#include "fqlab/error.hpp"
#include "fqlab/field.hpp"

namespace fqlab {

struct CharSumResult {
  Cx value;
  double magnitude = 0;
  double bound = 0;        // the proven cap on |value|
  bool within_bound = false;
};

namespace detail {
inline CharSumResult finish(Cx value, double bound, double tol) {
  CharSumResult r;
  r.value = value;
  r.magnitude = std::abs(value);
  r.bound = bound;
  r.within_bound = r.magnitude <= bound + tol;
  return r;
}
}  // namespace detail

// G = sum_{s != 0} eta(s) chi(s); |G| = sqrt(q) exactly.
inline CharSumResult gauss_sum(const Field& f, double tol = kDefaultTol) {
  Cx acc = 0;
  for (Elem s = 1; s < f.q(); ++s)
    acc += static_cast<double>(f.eta(s)) * f.chi(s);
  return detail::finish(acc, std::sqrt(static_cast<double>(f.q())), tol);
}

// K = sum_{s != 0} chi(a s + b s^-1); |K| <= 2 sqrt(q).
inline CharSumResult kloosterman(const Field& f, Elem a, Elem b,
                                 double tol = kDefaultTol) {
  if (a == 0 || b == 0)
    fail(ErrorCode::ZeroParameter, "kloosterman needs a, b != 0");
  Cx acc = 0;
  for (Elem s = 1; s < f.q(); ++s)
    acc += f.chi(f.add(f.mul(a, s), f.mul(b, f.inv(s))));
  return detail::finish(acc, 2 * std::sqrt(static_cast<double>(f.q())), tol);
}

// S = sum_{s != 0} eta(s) chi(a s + b s^-1); |S| <= 2 sqrt(q).
inline CharSumResult salie(const Field& f, Elem a, Elem b,
                           double tol = kDefaultTol) {
  if (a == 0 || b == 0) fail(ErrorCode::ZeroParameter, "salie needs a, b != 0");
  Cx acc = 0;
  for (Elem s = 1; s < f.q(); ++s)
    acc += static_cast<double>(f.eta(s)) *
           f.chi(f.add(f.mul(a, s), f.mul(b, f.inv(s))));
  return detail::finish(acc, 2 * std::sqrt(static_cast<double>(f.q())), tol);
}

}  // namespace fqlab
