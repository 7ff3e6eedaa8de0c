#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "blockbench/base.hpp"
#include "blockbench/cyclotomic.hpp"

namespace blockbench {

namespace detail {

// Arithmetic on polynomials over GF(p), coefficients low-to-high, used only
// while constructing fields.
struct PrimePoly {
  static std::vector<u32> trim(std::vector<u32> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }
  static std::vector<u32> mulmod(const std::vector<u32>& a, const std::vector<u32>& b,
                                 const std::vector<u32>& f, u32 p) {
    std::vector<u32> c(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    return rem(std::move(c), f, p);
  }
  static std::vector<u32> rem(std::vector<u32> c, const std::vector<u32>& f, u32 p) {
    int df = int(f.size()) - 1;  // f monic
    for (int i = int(c.size()) - 1; i >= df; --i) {
      u32 q = c[size_t(i)];
      if (!q) continue;
      for (int j = 0; j <= df; ++j) {
        u32& t = c[size_t(i - df + j)];
        t = (t + p * q - q * f[size_t(j)] % p) % p;
      }
    }
    if (int(c.size()) > df) c.resize(size_t(df));
    return c;
  }
  static std::vector<u32> powmod(std::vector<u32> base, u64 e, const std::vector<u32>& f, u32 p) {
    std::vector<u32> r{1};
    while (e) {
      if (e & 1) r = mulmod(r, base, f, p);
      base = mulmod(base, base, f, p);
      e >>= 1;
    }
    return r;
  }
  static std::vector<u32> gcd(std::vector<u32> a, std::vector<u32> b, u32 p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
      // a mod b, b made monic on the fly
      u32 lead = b.back();
      u32 inv = 1;
      for (u32 t = 1; t < p; ++t)
        if (lead * t % p == 1) { inv = t; break; }
      std::vector<u32> bm = b;
      for (u32& x : bm) x = x * inv % p;
      a = trim(rem(std::move(a), bm, p));
      std::swap(a, b);
    }
    return a;
  }
};

inline std::vector<u32> prime_factors_u64(u64 n) {
  std::vector<u32> fs;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(u32(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(u32(n));
  return fs;
}

}  // namespace detail

/// GF(p^k) with the canonical (Conway) defining polynomial, a fixed primitive
/// generator and full discrete-log tables. Elements are encoded as u32: the
/// base-p digit vector of the residue polynomial. Instances are immutable and
/// interned per (p, k); all operations are pure.
class Field {
 public:
  static const Field& get(int p, int k);

  int p() const { return p_; }
  int k() const { return k_; }
  u32 q() const { return q_; }
  const std::vector<u32>& defining_poly() const { return poly_; }
  u32 zero() const { return 0; }
  u32 one() const { return 1; }
  u32 gen() const { return gen_; }

  u32 add(u32 a, u32 b) const {
    if (small_) return add_[size_t(a) * q_ + b];
    return digit_add(a, b);
  }
  u32 neg(u32 a) const {
    if (small_) return neg_[a];
    return digit_neg(a);
  }
  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
  u32 mul(u32 a, u32 b) const {
    if (small_) return mul_[size_t(a) * q_ + b];
    if (!a || !b) return 0;
    return exp_[(u64(log_[a]) + log_[b]) % (q_ - 1)];
  }
  u32 inv(u32 a) const {
    require(a != 0, "bad_input", "inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  u32 pow(u32 a, i64 e) const {
    if (a == 0) {
      require(e > 0, "bad_input", "0^e with e <= 0");
      return 0;
    }
    i64 m = i64(q_) - 1;
    i64 t = (i64(log_[a]) * (e % m)) % m;
    if (t < 0) t += m;
    return exp_[size_t(t)];
  }

  /// Discrete log base the canonical generator; gen^result == x.
  u32 log(u32 x) const {
    require(x != 0, "bad_input", "log of zero");
    return log_[x];
  }
  u32 exp(u64 e) const { return exp_[e % (q_ - 1)]; }

  /// Reduction of a rational integer.
  u32 from_int(i64 n) const {
    i64 r = n % p_;
    if (r < 0) r += p_;
    return u32(r);
  }

  u32 mul_order(u32 x) const {
    require(x != 0, "bad_input", "order of zero");
    return (q_ - 1) / u32(std::gcd(u64(log_[x]), u64(q_ - 1)));
  }

  /// Conway-compatible embedding into GF(p^K) with k | K.
  u32 embed_to(const Field& big, u32 x) const {
    require(big.p_ == p_ && big.k_ % k_ == 0, "bad_input", "not a subfield pair");
    if (x == 0) return 0;
    u64 ratio = (u64(big.q_) - 1) / (q_ - 1);
    return big.exp_[u64(log_[x]) * ratio % (big.q_ - 1)];
  }

  /// Brauer lift: x = gen^L of multiplicative order m maps to zeta_m^j where
  /// j = L / ((q-1)/m). Compatible across Conway subfield inclusions.
  CycInt brauer_lift(u32 x) const {
    require(x != 0, "bad_input", "Brauer lift of zero");
    u32 m = mul_order(x);
    u32 step = (q_ - 1) / m;
    return CycInt::root(int(m), i64(log_[x] / step));
  }

  bool frobenius_fixed(u32 x) const { return pow(x, p_) == x; }

  /// Row of the multiplication table for a fixed scalar (q <= 256 only);
  /// the workhorse of the dense row-operation kernels.
  const u8* mul_row(u32 a) const {
    require(small_, "internal", "mul_row needs q <= 256");
    return &mul_[size_t(a) * q_];
  }
  bool small() const { return small_; }

 private:
  Field(int p, int k);

  u32 digit_add(u32 a, u32 b) const {
    u32 r = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
      r += (a % u32(p_) + b % u32(p_)) % u32(p_) * mult;
      a /= u32(p_);
      b /= u32(p_);
      mult *= u32(p_);
    }
    return r;
  }
  u32 digit_neg(u32 a) const {
    u32 r = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
      r += (u32(p_) - a % u32(p_)) % u32(p_) * mult;
      a /= u32(p_);
      mult *= u32(p_);
    }
    return r;
  }

  int p_, k_;
  u32 q_;
  bool small_;
  std::vector<u32> poly_;  // Conway polynomial, low-to-high, monic length k+1
  u32 gen_;
  std::vector<u32> log_, exp_;
  std::vector<u8> add_, mul_, neg_;  // only for q <= 256
};

namespace detail {

inline bool is_prime_u32(u32 n) {
  if (n < 2) return false;
  for (u32 d = 2; u64(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Conway polynomial search. Candidates are enumerated in the standard
// ordering: f = x^k + sum a_i x^i corresponds to the word c_i = (-1)^{k-i} a_i
// read from c_{k-1} down to c_0, words compared lexicographically. The first
// monic primitive polynomial compatible with the Conway polynomials of all
// proper subfields wins.
inline std::vector<u32> conway_poly(int p, int k);

inline bool conway_candidate_ok(const std::vector<u32>& f, int p, int k) {
  u32 up = u32(p);
  u64 q = 1;
  for (int i = 0; i < k; ++i) q *= up;
  std::vector<u32> x{0, 1};
  if (k > 1) {
    // irreducibility: x^(p^k) == x mod f, and gcd(x^(p^(k/r)) - x, f) = 1
    std::vector<u32> fr = x;
    for (int i = 1; i <= k; ++i) fr = PrimePoly::powmod(fr, up, f, up);
    if (PrimePoly::trim(fr) != PrimePoly::trim(x)) return false;
  }
  for (u32 r : prime_factors_u64(u64(k))) {
    std::vector<u32> g = x;
    for (u32 i = 0; i < u32(k) / r; ++i) g = PrimePoly::powmod(g, up, f, up);
    // gcd(g - x, f)
    std::vector<u32> diff = g;
    diff.resize(std::max(diff.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) diff[i] = (diff[i] + up - x[i]) % up;
    auto gc = PrimePoly::gcd(diff, f, up);
    if (int(gc.size()) - 1 != 0) return false;
  }
  // primitivity of the class of x
  for (u32 r : prime_factors_u64(q - 1)) {
    auto t = PrimePoly::powmod(x, (q - 1) / r, f, up);
    if (PrimePoly::trim(t) == std::vector<u32>{1}) return false;
  }
  if (PrimePoly::trim(PrimePoly::powmod(x, q - 1, f, up)) != std::vector<u32>{1}) return false;
  // compatibility with proper subfields
  for (int d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    u64 qd = 1;
    for (int i = 0; i < d; ++i) qd *= up;
    auto cd = conway_poly(p, d);
    u64 t = (q - 1) / (qd - 1);
    auto xt = PrimePoly::powmod(x, t, f, up);
    // evaluate cd at xt mod f (Horner)
    std::vector<u32> acc{cd.back()};
    for (int i = int(cd.size()) - 2; i >= 0; --i) {
      acc = PrimePoly::mulmod(acc, xt, f, up);
      if (acc.empty()) acc.push_back(0);
      acc[0] = (acc[0] + cd[size_t(i)]) % up;
    }
    if (!PrimePoly::trim(acc).empty()) return false;
  }
  return true;
}

inline std::vector<u32> conway_poly(int p, int k) {
  static std::map<std::pair<int, int>, std::vector<u32>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  u32 up = u32(p);
  u64 total = 1;
  for (int i = 0; i < k; ++i) total *= up;
  for (u64 w = 0; w < total; ++w) {
    // word -> coefficients, c_{k-1} is the most significant digit
    std::vector<u32> f(size_t(k) + 1, 0);
    f[size_t(k)] = 1;
    u64 t = w;
    for (int i = 0; i < k; ++i) {
      u32 c = u32(t % up);
      t /= up;
      // a_i = (-1)^(k-i) c_i
      f[size_t(i)] = ((k - i) % 2 == 0) ? c : (up - c) % up;
    }
    if (f[0] == 0) continue;  // root would not generate
    if (conway_candidate_ok(f, p, k)) {
      cache.emplace(key, f);
      return cache.at(key);
    }
  }
  fail("internal", "no Conway polynomial found");
}

}  // namespace detail

inline Field::Field(int p, int k) : p_(p), k_(k) {
  require(detail::is_prime_u32(u32(p)), "bad_input", "p must be prime");
  require(k >= 1, "bad_input", "extension degree must be >= 1");
  u64 q = 1;
  for (int i = 0; i < k; ++i) {
    q *= u64(p);
    require(q <= caps().field_size, "cap",
            "field size exceeds cap of " + std::to_string(caps().field_size));
  }
  q_ = u32(q);
  poly_ = detail::conway_poly(p, k);
  // exp/log tables via repeated multiplication by the class of x
  auto encode = [&](const std::vector<u32>& v) {
    u32 r = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
      r += (i < int(v.size()) ? v[size_t(i)] : 0) * mult;
      mult *= u32(p_);
    }
    return r;
  };
  std::vector<u32> x{0, 1};
  x = detail::PrimePoly::rem(std::move(x), poly_, u32(p_));
  gen_ = encode(x);
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  std::vector<u32> cur{1};
  for (u32 e = 0; e < q_ - 1; ++e) {
    u32 code = encode(cur);
    exp_[e] = code;
    log_[code] = e;
    cur = detail::PrimePoly::mulmod(cur, x, poly_, u32(p_));
  }
  small_ = q_ <= 256;
  if (small_) {
    add_.assign(size_t(q_) * q_, 0);
    mul_.assign(size_t(q_) * q_, 0);
    neg_.assign(q_, 0);
    for (u32 a = 0; a < q_; ++a) {
      neg_[a] = u8(digit_neg(a));
      for (u32 b = 0; b < q_; ++b) {
        add_[size_t(a) * q_ + b] = u8(digit_add(a, b));
        u32 m = (!a || !b) ? 0 : exp_[(u64(log_[a]) + log_[b]) % (q_ - 1)];
        mul_[size_t(a) * q_ + b] = u8(m);
      }
    }
  }
}

inline const Field& Field::get(int p, int k) {
  static std::map<std::pair<int, int>, std::unique_ptr<Field>> registry;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = registry.find(key);
  if (it == registry.end()) it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, k))).first;
  return *it->second;
}

/// Multiplicative order of p modulo m (m coprime to p).
inline int mul_order_mod(int p, int m) {
  if (m == 1) return 1;
  require(std::gcd(p, m) == 1, "bad_input", "order of p mod m needs gcd(p,m)=1");
  int o = 1;
  i64 t = p % m;
  while (t != 1) {
    t = t * p % m;
    ++o;
  }
  return o;
}

/// Image of a cyclotomic integer under the fixed place over p singled out by
/// the Conway convention: zeta_{p^b * m'} maps to the canonical m'-th root of
/// unity raised to the inverse of p^b mod m'. The target field must contain
/// the m'-th roots of unity.
inline u32 place_image(const CycInt& v, const Field& F) {
  int p = F.p();
  int m = v.conductor();
  int pb = 1;
  while (m % p == 0) {
    m /= p;
    pb *= p;
  }
  require((F.q() - 1) % u32(m) == 0, "bad_input",
          "target field lacks the required roots of unity");
  // zeta_{p^b} collapses to 1 under the place, so zeta_{conductor} maps to the
  // canonical m-th root raised to the inverse of p^b mod m
  i64 beta = 0;
  for (i64 t = 0; t < m; ++t)
    if (t * pb % m == 1 % m) { beta = t; break; }
  u32 zeta = m == 1 ? 1 : F.exp(u64((F.q() - 1) / u32(m)) * u64(beta));
  u32 acc = 0, zp = 1;
  const auto& c = v.coeffs();
  for (size_t j = 0; j < c.size(); ++j) {
    i64 cj = c[j] % p;
    if (cj < 0) cj += p;
    acc = F.add(acc, F.mul(u32(cj), zp));
    zp = F.mul(zp, zeta);
  }
  return acc;
}

/// Smallest field GF(p^d) whose multiplicative group contains the m'-th roots
/// of unity, m' the p'-part of m.
inline const Field& place_field(int p, int m) {
  while (m % p == 0) m /= p;
  return Field::get(p, mul_order_mod(p, m));
}

}  // namespace blockbench
