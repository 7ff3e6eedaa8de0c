#include <catch2/catch_amalgamated.hpp>

#include "blockbench/gfq.hpp"

using namespace blockbench;

namespace {

// Independent mini-implementation of GF(3)[x] arithmetic used to re-derive
// the canonical quadratic below without going through the library path.
int eval_mod3(const std::vector<int>& f, int x) {
  int acc = 0;
  for (int i = int(f.size()) - 1; i >= 0; --i) acc = (acc * x + f[size_t(i)]) % 3;
  return acc;
}

}  // namespace

TEST_CASE("prime fields have the expected canonical generators") {
  const Field& f3 = Field::get(3, 1);
  CHECK(f3.q() == 3);
  CHECK(f3.gen() == 2);  // the only primitive root of GF(3)
  const Field& f2 = Field::get(2, 1);
  CHECK(f2.gen() == 1);
  CHECK(f2.add(1, 1) == 0);
  const Field& f5 = Field::get(5, 1);
  CHECK(f5.gen() == 2);
  const Field& f7 = Field::get(7, 1);
  CHECK(f7.gen() == 3);
}

TEST_CASE("canonical defining polynomial of GF(9)") {
  // Oracle: scan the nine monic quadratics over GF(3) in the canonical word
  // order and keep the first that is irreducible, has a primitive root and is
  // compatible with x+1 downstairs (root^4 = 2).
  std::vector<int> expected;
  for (int w = 0; w < 9 && expected.empty(); ++w) {
    int c1 = w / 3, c0 = w % 3;
    std::vector<int> f{((c0) % 3 + 3) % 3, ((3 - c1) % 3), 1};  // a1 = -c1, a0 = +c0
    bool irreducible = true;
    for (int x = 0; x < 3; ++x)
      if (eval_mod3(f, x) == 0) irreducible = false;
    if (!irreducible) continue;
    // multiplication in GF(3)[x]/(f): x has order 8 and x^4 == 2?
    auto mul = [&](std::pair<int, int> a, std::pair<int, int> b) {
      // (a0 + a1 x)(b0 + b1 x) with x^2 = -f1 x - f0
      int c0q = a.first * b.first, c1q = a.first * b.second + a.second * b.first;
      int c2q = a.second * b.second;
      c0q += c2q * (3 - f[0]);
      c1q += c2q * (3 - f[1]);
      return std::make_pair((c0q % 3 + 3) % 3, (c1q % 3 + 3) % 3);
    };
    std::pair<int, int> acc{1, 0}, x{0, 1};
    int order = 0;
    for (int e = 1; e <= 8; ++e) {
      acc = mul(acc, x);
      if (acc == std::make_pair(1, 0)) {
        order = e;
        break;
      }
    }
    if (order != 8) continue;
    // x^4 must reduce to the canonical GF(3) generator 2
    std::pair<int, int> x4{1, 0};
    for (int e = 0; e < 4; ++e) x4 = mul(x4, x);
    if (x4 != std::make_pair(2, 0)) continue;
    expected.assign(f.begin(), f.end());
  }
  REQUIRE(expected.size() == 3);
  CHECK(expected == std::vector<int>{2, 2, 1});  // x^2 + 2x + 2

  const Field& f9 = Field::get(3, 2);
  CHECK(f9.defining_poly() == std::vector<u32>{2, 2, 1});
  CHECK(f9.mul_order(f9.gen()) == 8);
}

TEST_CASE("discrete logs") {
  const Field& f9 = Field::get(3, 2);
  CHECK(f9.log(f9.gen()) == 1);
  CHECK(f9.log(1) == 0);
  CHECK(Field::get(3, 1).log(2) == 1);
  for (u32 x = 1; x < f9.q(); ++x) CHECK(f9.exp(f9.log(x)) == x);
  CHECK_THROWS_AS(f9.log(0), Error);
}

TEST_CASE("field axioms under randomized testing") {
  Rng rng(7);
  for (auto [p, k] : {std::pair{2, 3}, {3, 2}, {3, 3}, {5, 1}}) {
    const Field& F = Field::get(p, k);
    for (int t = 0; t < 200; ++t) {
      u32 a = rng.below(F.q()), b = rng.below(F.q()), c = rng.below(F.q());
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.add(a, F.neg(a)) == 0);
    }
  }
}

TEST_CASE("Brauer lift basics") {
  const Field& f3 = Field::get(3, 1);
  CHECK(f3.brauer_lift(1) == CycInt::integer(1));
  CHECK(f3.brauer_lift(2) == CycInt::integer(-1));  // unique element of order 2

  const Field& f9 = Field::get(3, 2);
  u32 g2 = f9.mul(f9.gen(), f9.gen());  // order 4
  CHECK(f9.mul_order(g2) == 4);
  CHECK(f9.brauer_lift(g2) == CycInt::root(4, 1));
}

TEST_CASE("Brauer lift is multiplicative and has exact order") {
  Rng rng(11);
  for (auto [p, k] : {std::pair{3, 2}, {3, 4}, {2, 4}}) {
    const Field& F = Field::get(p, k);
    for (int t = 0; t < 60; ++t) {
      u32 x = 1 + rng.below(F.q() - 1), y = 1 + rng.below(F.q() - 1);
      CHECK(F.brauer_lift(F.mul(x, y)) == F.brauer_lift(x) * F.brauer_lift(y));
    }
    for (int t = 0; t < 25; ++t) {
      u32 x = 1 + rng.below(F.q() - 1);
      u32 m = F.mul_order(x);
      CycInt lx = F.brauer_lift(x), acc = CycInt::integer(1);
      for (u32 e = 1; e < m; ++e) {
        acc = acc * lx;
        CHECK(acc != CycInt::integer(1));
      }
      CHECK(acc * lx == CycInt::integer(1));
    }
  }
}

TEST_CASE("lifts are compatible across subfield inclusions") {
  const Field& f9 = Field::get(3, 2);
  const Field& f81 = Field::get(3, 4);
  for (u32 x = 1; x < f9.q(); ++x) {
    u32 y = f9.embed_to(f81, x);
    CHECK(f9.brauer_lift(x) == f81.brauer_lift(y));
  }
  // embedding is a ring map
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    u32 a = rng.below(f9.q()), b = rng.below(f9.q());
    CHECK(f9.embed_to(f81, f9.add(a, b)) == f81.add(f9.embed_to(f81, a), f9.embed_to(f81, b)));
    CHECK(f9.embed_to(f81, f9.mul(a, b)) == f81.mul(f9.embed_to(f81, a), f9.embed_to(f81, b)));
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Field::get(4, 1), Error);
  CHECK_THROWS_AS(Field::get(3, 14), Error);  // 3^14 over the size cap
}

TEST_CASE("place images: sqrt(-2) reduces to 1 in GF(3)") {
  // zeta8 + zeta8^3 under the canonical place over 3 lands in the prime field.
  CycInt v = CycInt::root(8, 1) + CycInt::root(8, 3);
  const Field& F = place_field(3, 8);
  CHECK(F.q() == 9);
  u32 img = place_image(v, F);
  CHECK(F.frobenius_fixed(img));
  CHECK(img == 1);
}

TEST_CASE("place images kill p-power roots of unity") {
  const Field& F = place_field(3, 24);  // 24 = 3 * 8, residue needs zeta_8
  CHECK(place_image(CycInt::root(3, 1), F) == 1);
  CHECK(place_image(CycInt::root(9, 4), Field::get(3, 2)) == 1);
  // multiplicativity of the reduction on a sample
  CycInt a = CycInt::root(24, 1), b = CycInt::root(24, 7);
  CHECK(place_image(a * b, F) == F.mul(place_image(a, F), place_image(b, F)));
}
