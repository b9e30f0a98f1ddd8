#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fqlab/char_sums.hpp"
#include "fqlab/common.hpp"
#include "fqlab/error.hpp"
#include "fqlab/field.hpp"
#include "fqlab/geometry.hpp"
#include "fqlab/pointset.hpp"

namespace fqlab {

// f_hat(m) = q^-d sum_x chi(-m.x) f(x), stored for every frequency index m.
struct SpectralTable {
  uint32_t q = 0;
  uint32_t d = 0;
  std::vector<Cx> values;
};

namespace detail {

// One 1-D pass of the separable transform along the axis with the given
// stride. sign = -1 applies the kernel chi(-m x), sign = +1 chi(m x).
// Total transform cost is O(d * q^(d+1)) instead of O(q^(2d)).
inline void axis_transform(const Field& f, std::vector<Cx>& v, uint64_t stride,
                           int sign) {
  const uint32_t q = f.q();
  const uint64_t n = v.size();
  std::vector<Cx> line(q), out(q);
  for (uint64_t block = 0; block < n; block += stride * q) {
    for (uint64_t off = 0; off < stride; ++off) {
      const uint64_t base = block + off;
      for (uint32_t t = 0; t < q; ++t) line[t] = v[base + t * stride];
      for (uint32_t m = 0; m < q; ++m) {
        Cx acc = 0;
        for (uint32_t x = 0; x < q; ++x) {
          const Cx kern = f.chi(f.mul(m, x));
          acc += (sign < 0 ? std::conj(kern) : kern) * line[x];
        }
        out[m] = acc;
      }
      for (uint32_t m = 0; m < q; ++m) v[base + m * stride] = out[m];
    }
  }
}

inline void full_transform(const Field& f, uint32_t d, std::vector<Cx>& v,
                           int sign) {
  uint64_t stride = 1;
  for (uint32_t axis = 0; axis < d; ++axis) {
    axis_transform(f, v, stride, sign);
    stride *= f.q();
  }
}

inline void require_dft_budget(uint64_t n) {
  if (n > kMaxDftPoints)
    fail(ErrorCode::BudgetExceeded, "q^d exceeds the transform budget");
}

}  // namespace detail

inline SpectralTable dft_set(const Field& f, const PointSet& E) {
  const uint64_t n = E.universe_size();
  detail::require_dft_budget(n);
  SpectralTable t;
  t.q = f.q();
  t.d = E.d();
  t.values.assign(n, Cx(0, 0));
  for (uint32_t idx : E.members()) t.values[idx] = Cx(1, 0);
  detail::full_transform(f, E.d(), t.values, -1);
  const double scale = 1.0 / static_cast<double>(n);
  for (Cx& v : t.values) v *= scale;
  return t;
}

// f(x) = sum_m chi(m.x) f_hat(m). For indicator inputs the round trip
// returns values within kDefaultTol of 0 or 1.
inline std::vector<Cx> inverse_dft(const Field& f, const SpectralTable& table) {
  std::vector<Cx> v = table.values;
  detail::full_transform(f, table.d, v, +1);
  return v;
}

// Rounds a complex-valued function to the nearest integers, enforcing the
// per-entry residual gate.
inline std::vector<int64_t> round_to_integers(std::span<const Cx> values,
                                              double tol,
                                              double* max_residual = nullptr) {
  std::vector<int64_t> out(values.size());
  double worst = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    const int64_t r = std::llround(values[i].real());
    const double res = std::abs(values[i] - Cx(static_cast<double>(r), 0));
    if (res > worst) worst = res;
    out[i] = r;
  }
  if (max_residual) *max_residual = worst;
  if (worst > tol)
    fail(ErrorCode::ResidualTooLarge,
         "rounding residual " + std::to_string(worst));
  return out;
}

// Closed form of the sphere transform:
//   S_t_hat(m) = q^-1 [m = 0]
//              + q^-(d+1) eta(-1)^d G^d sum_{r != 0} eta(r)^d chi(t r + ||m||/(4r)).
// Only (||m||, [m = 0]) enter, which the sweep drivers exploit.
class SphereFt {
 public:
  SphereFt(const Field& f, uint32_t d) : f_(&f), d_(d) {
    const Cx g = gauss_sum(f).value;
    Cx gd(1, 0);
    for (uint32_t i = 0; i < d; ++i) gd *= g;
    const int eta_sign = (d % 2 == 0) ? 1 : f.eta_minus_one();
    prefactor_ = gd * static_cast<double>(eta_sign) /
                 static_cast<double>(ipow(f.q(), d + 1));
    inv4_ = f.inv(f.from_int(4));
    q_inv_ = 1.0 / f.q();
    odd_ = (d % 2 != 0);
  }

  Cx at_norm(Elem t, Elem m_norm, bool m_is_zero) const {
    const Field& f = *f_;
    Cx acc = 0;
    for (Elem r = 1; r < f.q(); ++r) {
      const Elem arg = f.add(f.mul(t, r), f.mul(m_norm, f.mul(inv4_, f.inv(r))));
      const Cx term = f.chi(arg);
      acc += odd_ ? static_cast<double>(f.eta(r)) * term : term;
    }
    Cx result = prefactor_ * acc;
    if (m_is_zero) result += Cx(q_inv_, 0);
    return result;
  }

  uint32_t d() const { return d_; }

 private:
  const Field* f_;
  uint32_t d_;
  Cx prefactor_;
  Elem inv4_;
  double q_inv_;
  bool odd_;
};

inline Cx sphere_ft_closed(const Field& f, uint32_t d, Elem t,
                           std::span<const Elem> m) {
  bool zero = true;
  for (Elem c : m)
    if (c != 0) zero = false;
  return SphereFt(f, d).at_norm(t, norm(f, m), zero);
}

// Closed form of sum_t S_t_hat(m) conj(S_t_hat(m')):
//   q^-1 [m = 0][m' = 0] + q^-(d+1) sum_{s != 0} chi(s (||m|| - ||m'||)).
inline Cx sphere_ft_correlation_norm(const Field& f, uint32_t d, Elem m_norm,
                                     Elem m2_norm, bool m_zero, bool m2_zero) {
  const Elem diff = f.sub(m_norm, m2_norm);
  Cx acc = 0;
  for (Elem s = 1; s < f.q(); ++s) acc += f.chi(f.mul(s, diff));
  Cx result = acc / static_cast<double>(ipow(f.q(), d + 1));
  if (m_zero && m2_zero) result += Cx(1.0 / f.q(), 0);
  return result;
}

inline Cx sphere_ft_correlation(const Field& f, uint32_t d,
                                std::span<const Elem> m,
                                std::span<const Elem> m2) {
  auto all_zero = [](std::span<const Elem> v) {
    for (Elem c : v)
      if (c != 0) return false;
    return true;
  };
  return sphere_ft_correlation_norm(f, d, norm(f, m), norm(f, m2),
                                    all_zero(m), all_zero(m2));
}

// Sweeps every (t, m != 0), splitting into the exceptional class (d even,
// t = 0, ||m|| = 0) with cap q^(-d/2) and the generic class with cap
// 2 q^(-(d+1)/2), and records the max observed |S_t_hat(m)| per class.
struct DecayAudit {
  uint32_t q = 0;
  uint32_t d = 0;
  double cap_generic = 0;
  double cap_exceptional = 0;
  double max_generic = 0;
  double max_exceptional = 0;
  uint64_t count_generic = 0;
  uint64_t count_exceptional = 0;
  bool pass = false;
};

inline DecayAudit decay_audit(const Field& f, uint32_t d,
                              double tol = kDefaultTol) {
  const uint64_t n = space_size(f, d);
  detail::require_dft_budget(n);
  DecayAudit audit;
  audit.q = f.q();
  audit.d = d;
  const double q = f.q();
  audit.cap_generic = 2.0 / std::pow(q, (d + 1) / 2.0);
  audit.cap_exceptional = 1.0 / std::pow(q, d / 2.0);

  // |S_t_hat(m)| depends on m only through (||m||, m = 0); count norm
  // classes once and evaluate the closed form per (t, class).
  const std::vector<Elem> norms = norm_table(f, d);
  std::vector<uint64_t> class_count(f.q(), 0);
  for (uint64_t i = 1; i < n; ++i) ++class_count[norms[i]];

  const SphereFt sft(f, d);
  for (Elem t = 0; t < f.q(); ++t) {
    for (Elem u = 0; u < f.q(); ++u) {
      if (class_count[u] == 0) continue;
      const double mag = std::abs(sft.at_norm(t, u, false));
      const bool exceptional = (d % 2 == 0) && t == 0 && u == 0;
      if (exceptional) {
        audit.count_exceptional += class_count[u];
        if (mag > audit.max_exceptional) audit.max_exceptional = mag;
      } else {
        audit.count_generic += class_count[u];
        if (mag > audit.max_generic) audit.max_generic = mag;
      }
    }
  }
  audit.pass = audit.max_generic <= audit.cap_generic + tol &&
               audit.max_exceptional <= audit.cap_exceptional + tol;
  return audit;
}

}  // namespace fqlab
