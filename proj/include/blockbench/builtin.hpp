#pragma once

#include "blockbench/perm.hpp"

namespace blockbench {

/// Constructions for the small groups the suites revolve around. Everything
/// here is derived from first principles at runtime (no baked-in tables), so
/// repeated runs are bit-identical by construction.
namespace builtin {

inline Perm cycle(int degree, const std::vector<int>& pts) {
  Perm p = perm_identity(degree);
  for (size_t i = 0; i < pts.size(); ++i)
    p[size_t(pts[i])] = u8(pts[(i + 1) % pts.size()]);
  return p;
}

inline Group c3() { return Group(3, {cycle(3, {0, 1, 2})}, "c3"); }
inline Group c6() { return Group(6, {cycle(6, {0, 1, 2, 3, 4, 5})}, "c6"); }
inline Group s3() { return Group(3, {cycle(3, {0, 1, 2}), cycle(3, {0, 1})}, "s3"); }

/// Semidihedral group of order 16: an 8-cycle r and s: i -> 3i mod 8.
inline Group sd16() {
  Perm r = cycle(8, {0, 1, 2, 3, 4, 5, 6, 7});
  Perm s(8);
  for (int i = 0; i < 8; ++i) s[size_t(i)] = u8(3 * i % 8);
  return Group(8, {r, s}, "sd16");
}

inline Group a5() { return Group(5, {cycle(5, {0, 1, 2, 3, 4}), cycle(5, {0, 1, 2})}, "a5"); }
inline Group a6() {
  return Group(6, {cycle(6, {0, 1, 2, 3, 4}), cycle(6, {1, 2, 3, 4, 5})}, "a6");
}
/// a5 embedded in a6 as the stabilizer of the last point.
inline std::vector<Perm> a5_in_a6_gens() {
  return {cycle(6, {0, 1, 2, 3, 4}), cycle(6, {0, 1, 2})};
}
inline Group a9() {
  return Group(9, {cycle(9, {0, 1, 2, 3, 4, 5, 6, 7, 8}), cycle(9, {0, 1, 2})}, "a9");
}

namespace detail {

// Affine action v -> v M + t on the plane over GF(3); points are x + 3y.
inline Perm affine_perm(int a, int b, int c, int d, int tx, int ty) {
  Perm p(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      int nx = (x * a + y * c + tx) % 3;
      int ny = (x * b + y * d + ty) % 3;
      p[size_t(x + 3 * y)] = u8(nx + 3 * ny);
    }
  return p;
}

}  // namespace detail

/// P : SD16 of order 144 on 9 points: the translations of the plane over
/// GF(3) extended by a Sylow 2-subgroup of GL_2(3). The linear generators are
/// found by a deterministic scan: the first order-8 matrix r in lexicographic
/// order, then the first involution s outside <r> with s r s = r^3.
inline Group psd16() {
  auto order_of = [&](const Perm& p) { return perm_order(p); };
  Perm r, s;
  bool found_r = false;
  for (int a = 0; a < 3 && !found_r; ++a)
    for (int b = 0; b < 3 && !found_r; ++b)
      for (int c = 0; c < 3 && !found_r; ++c)
        for (int d = 0; d < 3 && !found_r; ++d) {
          if ((a * d - b * c) % 3 == 0) continue;
          Perm m = detail::affine_perm(a, b, c, d, 0, 0);
          if (order_of(m) == 8) {
            r = m;
            found_r = true;
          }
        }
  require(found_r, "internal", "no order-8 element in GL_2(3)");
  Group r_grp(9, {r});
  Perm r3 = perm_pow(r, 3);
  bool found_s = false;
  for (int a = 0; a < 3 && !found_s; ++a)
    for (int b = 0; b < 3 && !found_s; ++b)
      for (int c = 0; c < 3 && !found_s; ++c)
        for (int d = 0; d < 3 && !found_s; ++d) {
          if ((a * d - b * c) % 3 == 0) continue;
          Perm m = detail::affine_perm(a, b, c, d, 0, 0);
          if (order_of(m) != 2 || r_grp.contains(m)) continue;
          if (perm_mul(perm_mul(m, r), m) == r3) {
            s = m;
            found_s = true;
          }
        }
  require(found_s, "internal", "no semidihedral involution found");
  Perm t1 = detail::affine_perm(1, 0, 0, 1, 1, 0);
  return Group(9, {t1, r, s}, "psd16");
}

/// The translation subgroup P = C3 x C3 of psd16 (on the same 9 points).
inline std::vector<Perm> psd16_P_gens() {
  return {detail::affine_perm(1, 0, 0, 1, 1, 0), detail::affine_perm(1, 0, 0, 1, 0, 1)};
}
/// One order-3 subgroup Q <= P.
inline std::vector<Perm> psd16_Q_gens() {
  return {detail::affine_perm(1, 0, 0, 1, 1, 0)};
}

inline Group by_name(const std::string& name) {
  if (name == "c3") return c3();
  if (name == "c6") return c6();
  if (name == "s3") return s3();
  if (name == "sd16") return sd16();
  if (name == "a5") return a5();
  if (name == "a6") return a6();
  if (name == "a9") return a9();
  if (name == "psd16") return psd16();
  fail("bad_input", "unknown builtin group '" + name + "'");
}

}  // namespace builtin
}  // namespace blockbench
