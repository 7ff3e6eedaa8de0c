#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace blockbench {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Library error with a stable machine-readable code ("cap", "bad_input",
/// "io", "internal"). The CLI maps codes to exit statuses.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool ok, const std::string& code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

/// Deterministic splitmix64 generator. All randomized algorithms in the
/// library draw from one of these, seeded explicitly, so runs are
/// bit-reproducible across platforms.
class Rng {
 public:
  explicit Rng(u64 seed = 0) : s_(seed) {}
  u64 next() {
    u64 z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  u32 below(u32 n) { return n ? u32(next() % n) : 0; }

 private:
  u64 s_;
};

/// Size caps. Operations that would exceed a cap raise Error("cap", ...)
/// instead of thrashing; the CLI can override entries via --cap name=value.
struct Caps {
  u64 group_order = 200000;      // element enumeration
  u64 chartab_order = 250000;    // Dixon-Schneider
  int chartab_degree = 12;       // beyond: hash class map must be enabled
  bool hash_classmap = false;
  u64 hom_product = 10000000;    // dim(M)*dim(N) for hom-space solving
  u64 induce_dim = 5000;
  u64 tensor_dim = 5000;
  u64 perm_module_degree = 10000;
  int lattice_length = 12;       // composition length bound for lattices
  int lattice_mult = 4;          // c_M(S) bound for lattices
  int chop_tries = 200;
  u64 field_size = u64(1) << 20;
  u64 central_order = 2000;      // |G| cap for materializing Z(kG)
  int threads = 1;
};

inline Caps& caps() {
  static Caps c;
  return c;
}

/// Exact rational with i64 numerator/denominator; enough headroom for the
/// small solves (cyclotomic basis changes, decomposition matrices) done here.
struct Rat {
  i64 n = 0, d = 1;
  Rat() = default;
  Rat(i64 num) : n(num), d(1) {}
  Rat(i64 num, i64 den) : n(num), d(den) { normalize(); }
  void normalize() {
    if (d < 0) { n = -n; d = -d; }
    if (n == 0) { d = 1; return; }
    i64 g = std::gcd(n < 0 ? -n : n, d);
    n /= g;
    d /= g;
  }
  bool is_zero() const { return n == 0; }
  bool is_integer() const { return d == 1; }
  friend Rat operator+(Rat a, Rat b) { return Rat(a.n * b.d + b.n * a.d, a.d * b.d); }
  friend Rat operator-(Rat a, Rat b) { return Rat(a.n * b.d - b.n * a.d, a.d * b.d); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.n * b.n, a.d * b.d); }
  friend Rat operator/(Rat a, Rat b) {
    require(b.n != 0, "internal", "rational division by zero");
    return Rat(a.n * b.d, a.d * b.n);
  }
  friend bool operator==(Rat a, Rat b) { return a.n == b.n && a.d == b.d; }
};

}  // namespace blockbench
