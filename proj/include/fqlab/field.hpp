#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "fqlab/error.hpp"

namespace fqlab {

using Elem = uint32_t;
using Cx = std::complex<double>;

// Arithmetic in F_q, q = p^k with p an odd prime, plus the three maps every
// character sum here is built from: the absolute trace Tr : F_q -> F_p, the
// additive character chi(x) = exp(2*pi*i*Tr(c*x)/p) (c = 1 by default), and
// the quadratic character eta (+1 on nonzero squares, -1 on nonsquares,
// eta(0) = 0).
//
// Elements are stored as indices in [0, q): the base-p packing of the
// coefficient vector of the residue polynomial, constant term in the least
// significant digit. For k = 1 the index is the residue itself.
class Field {
 public:
  // Largest q for which a field can be built at all (tables are O(q)).
  static constexpr uint32_t kMaxQ = 1u << 20;
  // When the modulus is omitted for k > 1, the deterministic built-in
  // search covers q up to this cap.
  static constexpr uint32_t kBuiltinModulusMaxQ = 2401;
  // Full q*q multiplication table below this; exp/log tables otherwise.
  static constexpr uint32_t kMulTableMaxQ = 512;

  Field(uint32_t p, uint32_t k,
        std::optional<std::vector<uint32_t>> modulus = std::nullopt)
      : p_(p), k_(k) {
    validate_pk(p, k);
    q_ = 1;
    for (uint32_t i = 0; i < k; ++i) {
      uint64_t next = uint64_t{q_} * p;
      if (next > kMaxQ) fail(ErrorCode::UnsupportedDegree, "q exceeds 2^20");
      q_ = static_cast<uint32_t>(next);
    }
    if (k == 1) {
      if (modulus && !modulus->empty())
        fail(ErrorCode::ConfigError, "modulus must be absent for k=1");
    } else if (modulus) {
      modulus_ = std::move(*modulus);
      validate_modulus();
    } else {
      if (q_ > kBuiltinModulusMaxQ)
        fail(ErrorCode::UnsupportedDegree,
             "no built-in modulus for q > " +
                 std::to_string(kBuiltinModulusMaxQ));
      modulus_ = find_smallest_irreducible();
    }
    build_tables();
  }

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint32_t q() const { return q_; }
  // Monic modulus coefficients, ascending degree; empty for k = 1.
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  Elem char_scale() const { return scale_; }

  Elem add(Elem a, Elem b) const {
    if (k_ == 1) {
      uint32_t s = a + b;
      return s >= q_ ? s - q_ : s;
    }
    return add_digits(a, b);
  }

  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }

  Elem mul(Elem a, Elem b) const {
    if (!mul_tab_.empty()) return mul_tab_[size_t{a} * q_ + b];
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }

  Elem square(Elem a) const { return sq_[a]; }

  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
    return inv_[a];
  }

  Elem pow(Elem a, uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Embeds an integer via reduction mod p into the prime subfield.
  Elem from_int(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  // Absolute trace Tr(x) = x + x^p + ... + x^(p^(k-1)), as an integer in [0, p).
  uint32_t trace(Elem a) const { return trace_[a]; }

  Cx chi(Elem a) const { return chi_[a]; }

  int eta(Elem a) const { return eta_[a]; }
  int eta_minus_one() const { return eta_[neg_[1]]; }

  // The same field with chi replaced by x -> chi(c*x), c != 0. Distance-set
  // statistics must not depend on this choice; tests exercise that.
  Field with_character_scale(Elem c) const {
    if (c == 0 || c >= q_) fail(ErrorCode::OutOfRange, "scale must be nonzero");
    Field f(*this);
    f.scale_ = c;
    f.rebuild_chi();
    return f;
  }

  bool same_field(const Field& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

 private:
  static void validate_pk(uint32_t p, uint32_t k) {
    if (p == 2) fail(ErrorCode::EvenCharacteristic, "p must be odd");
    if (p < 2) fail(ErrorCode::NotPrime, "p = " + std::to_string(p));
    for (uint32_t d = 2; uint64_t{d} * d <= p; ++d)
      if (p % d == 0) fail(ErrorCode::NotPrime, "p = " + std::to_string(p));
    if (k < 1) fail(ErrorCode::UnsupportedDegree, "k must be >= 1");
  }

  void validate_modulus() const {
    if (modulus_.size() != k_ + 1)
      fail(ErrorCode::ConfigError, "modulus must have k+1 coefficients");
    for (uint32_t c : modulus_)
      if (c >= p_) fail(ErrorCode::ConfigError, "modulus coefficient out of range");
    if (modulus_.back() != 1)
      fail(ErrorCode::ConfigError, "modulus must be monic");
    if (!is_irreducible(modulus_))
      fail(ErrorCode::ReducibleModulus, "modulus factors over F_p");
  }

  // --- polynomial helpers over F_p (construction-time only) ---

  uint32_t poly_eval(const std::vector<uint32_t>& f, uint32_t x) const {
    uint64_t acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p_;
    return static_cast<uint32_t>(acc);
  }

  // Remainder of f by monic g, both ascending-degree.
  std::vector<uint32_t> poly_mod(std::vector<uint32_t> f,
                                 const std::vector<uint32_t>& g) const {
    size_t dg = g.size() - 1;
    while (f.size() > dg) {
      uint32_t lead = f.back();
      size_t shift = f.size() - 1 - dg;
      if (lead != 0)
        for (size_t i = 0; i < dg; ++i) {
          uint64_t t = f[shift + i] + uint64_t{p_} * p_ -
                       uint64_t{lead} * g[i] % p_;
          f[shift + i] = static_cast<uint32_t>(t % p_);
        }
      f.pop_back();
    }
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
  }

  bool is_irreducible(const std::vector<uint32_t>& f) const {
    size_t deg = f.size() - 1;
    if (deg == 1) return true;
    for (uint32_t x = 0; x < p_; ++x)
      if (poly_eval(f, x) == 0) return false;
    if (deg <= 3) return true;
    // No linear factors at this point; trial-divide by monic polynomials of
    // degree 2..deg/2.
    for (size_t dg = 2; dg <= deg / 2; ++dg) {
      uint64_t count = 1;
      for (size_t i = 0; i < dg; ++i) count *= p_;
      for (uint64_t idx = 0; idx < count; ++idx) {
        std::vector<uint32_t> g(dg + 1, 0);
        uint64_t t = idx;
        for (size_t i = 0; i < dg; ++i) {
          g[i] = static_cast<uint32_t>(t % p_);
          t /= p_;
        }
        g[dg] = 1;
        if (poly_mod(f, g).empty()) return false;
      }
    }
    return true;
  }

  // Smallest irreducible monic polynomial of degree k, ordered by the base-p
  // index of its non-leading coefficients (constant term least significant).
  std::vector<uint32_t> find_smallest_irreducible() const {
    for (uint32_t idx = 0; idx < q_; ++idx) {
      std::vector<uint32_t> f(k_ + 1, 0);
      uint32_t t = idx;
      for (uint32_t i = 0; i < k_; ++i) {
        f[i] = t % p_;
        t /= p_;
      }
      f[k_] = 1;
      if (is_irreducible(f)) return f;
    }
    fail(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
  }

  Elem add_digits(Elem a, Elem b) const {
    Elem r = 0, mult = 1;
    for (uint32_t i = 0; i < k_; ++i) {
      uint32_t s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      r += s * mult;
      mult *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

  // Product by direct polynomial multiplication mod the modulus; used to
  // bootstrap the exp/log tables.
  Elem raw_mul(Elem a, Elem b) const {
    if (k_ == 1) return static_cast<Elem>(uint64_t{a} * b % p_);
    std::vector<uint32_t> pa(k_), pb(k_), prod(2 * k_ - 1, 0);
    for (uint32_t i = 0; i < k_; ++i, a /= p_) pa[i] = a % p_;
    for (uint32_t i = 0; i < k_; ++i, b /= p_) pb[i] = b % p_;
    for (uint32_t i = 0; i < k_; ++i)
      for (uint32_t j = 0; j < k_; ++j)
        prod[i + j] = static_cast<uint32_t>(
            (prod[i + j] + uint64_t{pa[i]} * pb[j]) % p_);
    std::vector<uint32_t> rem = poly_mod(std::move(prod), modulus_);
    Elem r = 0, mult = 1;
    for (size_t i = 0; i < k_; ++i) {
      if (i < rem.size()) r += rem[i] * mult;
      mult *= p_;
    }
    return r;
  }

  void build_tables() {
    neg_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      Elem r = 0, mult = 1, x = a;
      for (uint32_t i = 0; i < k_; ++i) {
        uint32_t d = x % p_;
        r += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
        x /= p_;
      }
      neg_[a] = r;
    }

    // Multiplicative generator, then exp/log and everything derived.
    std::vector<uint32_t> prime_factors;
    {
      uint32_t n = q_ - 1;
      for (uint32_t d = 2; uint64_t{d} * d <= n; ++d)
        if (n % d == 0) {
          prime_factors.push_back(d);
          while (n % d == 0) n /= d;
        }
      if (n > 1) prime_factors.push_back(n);
    }
    auto raw_pow = [&](Elem a, uint64_t e) {
      Elem r = 1;
      while (e) {
        if (e & 1) r = raw_mul(r, a);
        a = raw_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    Elem gen = 0;
    for (Elem g = 2; g < q_; ++g) {
      bool primitive = true;
      for (uint32_t f : prime_factors)
        if (raw_pow(g, (q_ - 1) / f) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        gen = g;
        break;
      }
    }
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    Elem cur = 1;
    for (uint32_t j = 0; j < q_ - 1; ++j) {
      exp_[j] = cur;
      log_[cur] = j;
      cur = raw_mul(cur, gen);
    }

    inv_.resize(q_);
    inv_[0] = 0;  // guarded at call sites
    for (Elem a = 1; a < q_; ++a)
      inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];

    if (q_ <= kMulTableMaxQ) {
      mul_tab_.resize(size_t{q_} * q_);
      for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b)
          mul_tab_[size_t{a} * q_ + b] =
              (a && b) ? exp_[(log_[a] + log_[b]) % (q_ - 1)] : 0;
    }

    sq_.resize(q_);
    for (Elem a = 0; a < q_; ++a) sq_[a] = mul(a, a);

    eta_.resize(q_);
    eta_[0] = 0;
    for (Elem a = 1; a < q_; ++a) eta_[a] = (log_[a] & 1) ? -1 : 1;

    trace_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      Elem acc = a, y = a;
      for (uint32_t i = 1; i < k_; ++i) {
        y = raw_pow(y, p_);
        acc = add(acc, y);
      }
      trace_[a] = acc;  // lies in the prime subfield, so index < p
    }

    rebuild_chi();
  }

  void rebuild_chi() {
    std::vector<Cx> roots(p_);
    for (uint32_t j = 0; j < p_; ++j) {
      double ang = 2.0 * std::numbers::pi * j / p_;
      roots[j] = Cx(std::cos(ang), std::sin(ang));
    }
    chi_.resize(q_);
    for (Elem a = 0; a < q_; ++a) chi_[a] = roots[trace_[mul(scale_, a)]];
  }

  uint32_t p_, k_, q_ = 0;
  std::vector<uint32_t> modulus_;
  Elem scale_ = 1;
  std::vector<Elem> neg_, inv_, sq_, exp_, mul_tab_;
  std::vector<uint32_t> log_, trace_;
  std::vector<int8_t> eta_;
  std::vector<Cx> chi_;
};

inline Field make_field(uint32_t p, uint32_t k,
                        std::optional<std::vector<uint32_t>> modulus =
                            std::nullopt) {
  return Field(p, k, std::move(modulus));
}

}  // namespace fqlab
