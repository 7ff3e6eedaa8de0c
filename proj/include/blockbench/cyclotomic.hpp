#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

#include "blockbench/base.hpp"

namespace blockbench {

inline int euler_phi(int m) {
  int r = m, n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r -= r / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace detail {

// Exact division of integer polynomials, num / den with den monic.
inline std::vector<i64> poly_divexact(std::vector<i64> num, const std::vector<i64>& den) {
  int dn = int(num.size()) - 1, dd = int(den.size()) - 1;
  std::vector<i64> q(dn - dd + 1, 0);
  for (int i = dn; i >= dd; --i) {
    i64 c = num[i];
    if (c == 0) continue;
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (i64 c : num) require(c == 0, "internal", "inexact cyclotomic division");
  return q;
}

}  // namespace detail

/// m-th cyclotomic polynomial, coefficients low-to-high (monic, degree phi(m)).
inline const std::vector<i64>& cyclotomic_poly(int m) {
  static std::map<int, std::vector<i64>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // x^m - 1 divided by Phi_d for all proper divisors d, done bottom-up.
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0 || cache.count(d)) continue;
    std::vector<i64> f(d + 1, 0);
    f[0] = -1;
    f[d] = 1;
    for (int e = 1; e < d; ++e)
      if (d % e == 0) f = detail::poly_divexact(std::move(f), cache.at(e));
    cache.emplace(d, std::move(f));
  }
  return cache.at(m);
}

/// Exact element of Z[zeta_m], stored in the power basis
/// zeta^0..zeta^{phi(m)-1} after reduction modulo the m-th cyclotomic
/// polynomial. Arithmetic promotes to the lcm conductor as needed.
class CycInt {
 public:
  CycInt() : m_(1), c_(1, 0) {}

  static CycInt integer(i64 n) {
    CycInt z;
    z.c_[0] = n;
    return z;
  }

  /// zeta_m^j
  static CycInt root(int m, i64 j) {
    require(m >= 1, "bad_input", "conductor must be positive");
    j %= m;
    if (j < 0) j += m;
    std::vector<i64> full(m, 0);
    full[size_t(j)] = 1;
    return from_full(m, std::move(full));
  }

  int conductor() const { return m_; }
  const std::vector<i64>& coeffs() const { return c_; }

  bool is_zero() const {
    for (i64 x : c_)
      if (x) return false;
    return true;
  }
  bool is_integer() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }
  i64 integer_value() const {
    require(is_integer(), "bad_input", "cyclotomic value is not a rational integer");
    return c_[0];
  }

  /// Re-express at conductor M (m | M).
  CycInt to_conductor(int M) const {
    if (M == m_) return *this;
    require(M % m_ == 0, "internal", "conductor promotion must go upward");
    std::vector<i64> full(M, 0);
    int r = M / m_;
    for (size_t j = 0; j < c_.size(); ++j) full[j * size_t(r)] = c_[j];
    return from_full(M, std::move(full));
  }

  friend CycInt operator+(const CycInt& a, const CycInt& b) {
    int M = std::lcm(a.m_, b.m_);
    CycInt x = a.to_conductor(M), y = b.to_conductor(M);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend CycInt operator-(const CycInt& a, const CycInt& b) {
    int M = std::lcm(a.m_, b.m_);
    CycInt x = a.to_conductor(M), y = b.to_conductor(M);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
  }
  CycInt operator-() const {
    CycInt x = *this;
    for (i64& v : x.c_) v = -v;
    return x;
  }
  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    int M = std::lcm(a.m_, b.m_);
    CycInt x = a.to_conductor(M), y = b.to_conductor(M);
    std::vector<i64> prod(x.c_.size() + y.c_.size(), 0);
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (!x.c_[i]) continue;
      for (size_t j = 0; j < y.c_.size(); ++j) prod[i + j] += x.c_[i] * y.c_[j];
    }
    CycInt z;
    z.m_ = M;
    z.c_ = reduce(M, std::move(prod));
    return z;
  }
  CycInt& operator+=(const CycInt& o) { return *this = *this + o; }
  CycInt& operator*=(const CycInt& o) { return *this = *this * o; }
  friend CycInt operator*(i64 s, const CycInt& a) {
    CycInt x = a;
    for (i64& v : x.c_) v *= s;
    return x;
  }

  /// Galois twist zeta -> zeta^t, gcd(t, m) = 1.
  CycInt galois(i64 t) const {
    int m = m_;
    t %= m;
    if (t < 0) t += m;
    require(std::gcd(t, i64(m)) == 1, "bad_input", "galois exponent not coprime to conductor");
    std::vector<i64> full(m, 0);
    for (size_t j = 0; j < c_.size(); ++j) full[size_t(i64(j) * t % m)] += c_[j];
    return from_full(m, std::move(full));
  }
  CycInt conj() const { return m_ <= 2 ? *this : galois(m_ - 1); }

  friend bool operator==(const CycInt& a, const CycInt& b) {
    int M = std::lcm(a.m_, b.m_);
    return a.to_conductor(M).c_ == b.to_conductor(M).c_;
  }
  friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

  /// Exact division by a rational integer; every coefficient must divide.
  CycInt divexact(i64 d) const {
    require(d != 0, "bad_input", "division by zero");
    CycInt x = *this;
    for (i64& v : x.c_) {
      require(v % d == 0, "bad_input", "inexact division of cyclotomic integer");
      v /= d;
    }
    return x;
  }

  std::complex<double> to_complex() const {
    std::complex<double> s(0, 0);
    const double two_pi = 6.283185307179586476925286766559;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (!c_[j]) continue;
      double a = two_pi * double(j) / double(m_);
      s += double(c_[j]) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return s;
  }

  /// Same value at the smallest conductor d | m containing it (canonical form
  /// for printing and golden files).
  CycInt normalized() const {
    for (int d = 1; d < m_; ++d) {
      if (m_ % d != 0) continue;
      CycInt cand;
      if (try_descend(d, cand)) return cand;
    }
    return *this;
  }

  /// Total-order key (conductor of the normalized value, then coefficients);
  /// exact and deterministic, used wherever rows/labels need a fixed order.
  friend bool lex_less(const CycInt& a, const CycInt& b) {
    CycInt x = a.normalized(), y = b.normalized();
    if (x.m_ != y.m_) return x.m_ < y.m_;
    return x.c_ < y.c_;
  }

  std::string to_string() const {
    CycInt v = normalized();
    if (v.is_integer()) return std::to_string(v.c_[0]);
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < v.c_.size(); ++j) {
      i64 c = v.c_[j];
      if (!c) continue;
      if (!first) os << (c > 0 ? "+" : "-");
      else if (c < 0) os << "-";
      i64 a = c > 0 ? c : -c;
      if (a != 1 || j == 0) os << a;
      if (j > 0) {
        if (a != 1) os << "*";
        os << "z" << v.m_;
        if (j > 1) os << "^" << j;
      }
      first = false;
    }
    return os.str();
  }

 private:
  static std::vector<i64> reduce(int m, std::vector<i64> full) {
    const std::vector<i64>& phi = cyclotomic_poly(m);
    int deg = int(phi.size()) - 1;
    for (int i = int(full.size()) - 1; i >= deg; --i) {
      i64 c = full[size_t(i)];
      if (!c) continue;
      for (int j = 0; j <= deg; ++j) full[size_t(i - deg + j)] -= c * phi[size_t(j)];
    }
    full.resize(size_t(deg));
    return full;
  }

  static CycInt from_full(int m, std::vector<i64> full) {
    CycInt z;
    z.m_ = m;
    z.c_ = reduce(m, std::move(full));
    return z;
  }

  // Try to rewrite in the conductor-d power basis by exact linear solve.
  bool try_descend(int d, CycInt& out) const {
    int pd = euler_phi(d);
    // columns: conductor-m coordinates of zeta_d^i
    std::vector<std::vector<i64>> basis;
    for (int i = 0; i < pd; ++i) basis.push_back(root(m_, i64(i) * (m_ / d)).c_);
    int n = int(c_.size());
    std::vector<std::vector<Rat>> A(size_t(n), std::vector<Rat>(size_t(pd) + 1));
    for (int r = 0; r < n; ++r) {
      for (int cidx = 0; cidx < pd; ++cidx) A[size_t(r)][size_t(cidx)] = Rat(basis[size_t(cidx)][size_t(r)]);
      A[size_t(r)][size_t(pd)] = Rat(c_[size_t(r)]);
    }
    // exact Gauss
    int row = 0;
    std::vector<int> pivot_col(size_t(pd), -1);
    for (int col = 0; col < pd && row < n; ++col) {
      int pr = -1;
      for (int r = row; r < n; ++r)
        if (!A[size_t(r)][size_t(col)].is_zero()) { pr = r; break; }
      if (pr < 0) continue;
      std::swap(A[size_t(row)], A[size_t(pr)]);
      Rat inv = Rat(1) / A[size_t(row)][size_t(col)];
      for (int j = col; j <= pd; ++j) A[size_t(row)][size_t(j)] = A[size_t(row)][size_t(j)] * inv;
      for (int r = 0; r < n; ++r) {
        if (r == row || A[size_t(r)][size_t(col)].is_zero()) continue;
        Rat f = A[size_t(r)][size_t(col)];
        for (int j = col; j <= pd; ++j)
          A[size_t(r)][size_t(j)] = A[size_t(r)][size_t(j)] - f * A[size_t(row)][size_t(j)];
      }
      pivot_col[size_t(col)] = row;
      ++row;
    }
    std::vector<i64> sol(size_t(pd), 0);
    for (int col = 0; col < pd; ++col) {
      if (pivot_col[size_t(col)] < 0) continue;
      Rat v = A[size_t(pivot_col[size_t(col)])][size_t(pd)];
      if (!v.is_integer()) return false;
      sol[size_t(col)] = v.n;
    }
    // consistency: rows without pivots must have zero rhs
    for (int r = 0; r < n; ++r) {
      bool all_zero = true;
      for (int j = 0; j < pd; ++j)
        if (!A[size_t(r)][size_t(j)].is_zero()) { all_zero = false; break; }
      if (all_zero && !A[size_t(r)][size_t(pd)].is_zero()) return false;
    }
    out.m_ = d;
    out.c_ = std::move(sol);
    return true;
  }

  int m_;
  std::vector<i64> c_;
};

}  // namespace blockbench
