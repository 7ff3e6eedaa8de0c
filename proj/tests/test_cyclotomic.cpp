#include <catch2/catch_amalgamated.hpp>

#include "blockbench/cyclotomic.hpp"

using namespace blockbench;

namespace {

CycInt random_cyc(Rng& rng, int m) {
  CycInt v;
  for (int j = 0; j < euler_phi(m); ++j)
    v = v + (i64(rng.below(9)) - 4) * CycInt::root(m, j);
  return v;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<i64>{1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<i64>{1, 0, 1});
  CHECK(cyclotomic_poly(8) == std::vector<i64>{1, 0, 0, 0, 1});
  CHECK(cyclotomic_poly(9) == std::vector<i64>{1, 0, 0, 1, 0, 0, 1});
  CHECK(cyclotomic_poly(12) == std::vector<i64>{1, 0, -1, 0, 1});
  CHECK(int(cyclotomic_poly(24).size()) - 1 == euler_phi(24));
}

TEST_CASE("roots of unity have the right orders") {
  for (int m : {2, 3, 4, 6, 8, 12, 15, 24}) {
    CycInt z = CycInt::root(m, 1);
    CycInt acc = CycInt::integer(1);
    for (int e = 1; e < m; ++e) {
      acc = acc * z;
      CHECK(acc != CycInt::integer(1));
    }
    CHECK(acc * z == CycInt::integer(1));
  }
}

TEST_CASE("ring axioms under randomized testing, conductor <= 24") {
  Rng rng(5);
  for (int m : {3, 4, 8, 12, 15, 24}) {
    for (int t = 0; t < 40; ++t) {
      CycInt a = random_cyc(rng, m), b = random_cyc(rng, 24 / std::gcd(m, 24) * 2), c = random_cyc(rng, m);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == CycInt());
    }
  }
}

TEST_CASE("conjugation is an involutive ring map") {
  Rng rng(9);
  for (int m : {4, 8, 12, 24}) {
    for (int t = 0; t < 30; ++t) {
      CycInt a = random_cyc(rng, m), b = random_cyc(rng, m);
      CHECK(a.conj().conj() == a);
      CHECK((a + b).conj() == a.conj() + b.conj());
      CHECK((a * b).conj() == a.conj() * b.conj());
    }
  }
  CHECK(CycInt::root(8, 1).conj() == CycInt::root(8, 7));
}

TEST_CASE("complex embedding agrees with floating evaluation") {
  Rng rng(13);
  for (int m : {5, 8, 12, 24}) {
    for (int t = 0; t < 20; ++t) {
      CycInt a = random_cyc(rng, m), b = random_cyc(rng, m);
      auto lhs = (a * b).to_complex();
      auto rhs = a.to_complex() * b.to_complex();
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("normalization finds the minimal conductor") {
  CHECK(CycInt::root(8, 4).normalized().conductor() == 1);   // zeta8^4 = -1
  CHECK(CycInt::root(8, 4) == CycInt::integer(-1));
  CHECK(CycInt::root(12, 3).normalized().conductor() == 4);  // = i
  CHECK((CycInt::root(3, 1) + CycInt::root(3, 2)) == CycInt::integer(-1));
  CycInt sqrtm2 = CycInt::root(8, 1) + CycInt::root(8, 3);
  CHECK(sqrtm2.normalized().conductor() == 8);
  CHECK((sqrtm2 * sqrtm2) == CycInt::integer(-2));
}

TEST_CASE("galois twists permute roots") {
  CycInt z = CycInt::root(24, 1);
  CHECK(z.galois(5) == CycInt::root(24, 5));
  CHECK(z.galois(5).galois(5) == CycInt::root(24, 1));
  CHECK_THROWS_AS(z.galois(6), Error);
}

TEST_CASE("string forms") {
  CHECK(CycInt::integer(-3).to_string() == "-3");
  CHECK(CycInt::root(4, 1).to_string() == "z4");
  CHECK((CycInt::root(8, 1) + CycInt::root(8, 3)).to_string() == "z8+z8^3");
}
