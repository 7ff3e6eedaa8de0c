#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "blockbench/builtin.hpp"
#include "blockbench/chartab.hpp"

using namespace blockbench;

namespace {

std::vector<i64> degrees_of(const CharTable& T) {
  std::vector<i64> d;
  for (int i = 0; i < T.num_irr(); ++i) d.push_back(T.degree(i));
  return d;
}

int class_by(const Group& G, int order, u64 centralizer) {
  for (int c = 0; c < G.num_classes(); ++c)
    if (G.class_element_order(c) == order && G.centralizer_order(c) == centralizer) return c;
  FAIL("no such class");
  return -1;
}

}  // namespace

TEST_CASE("S3 character table") {
  Group g = builtin::s3();
  CharTable T = CharTable::dixon_schneider(g);
  CHECK(degrees_of(T) == std::vector<i64>{1, 1, 2});
}

TEST_CASE("C3 character table has exact cube roots of unity") {
  Group g = builtin::c3();
  CharTable T = CharTable::dixon_schneider(g);
  REQUIRE(T.num_irr() == 3);
  CHECK(degrees_of(T) == std::vector<i64>{1, 1, 1});
  CHECK(T.irr(T.trivial_index()) == trivial_character(T));
  bool found = false;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      if (T.irr(i)[size_t(k)] == CycInt::root(3, 1)) found = true;
  CHECK(found);
}

TEST_CASE("class multiplication coefficients") {
  Group g = builtin::s3();
  SECTION("identity class acts as delta") {
    for (int j = 0; j < g.num_classes(); ++j) {
      auto a = class_mult_coeffs(g, 0, j);
      for (int k = 0; k < g.num_classes(); ++k) CHECK(a[size_t(k)] == (k == j ? 1 : 0));
    }
  }
  SECTION("transpositions times transpositions contains 3 copies of the identity") {
    int t = class_by(g, 2, 2);
    auto a = class_mult_coeffs(g, t, t);
    CHECK(a[0] == 3);
  }
  SECTION("row sums on psd16: sum_k a_ijk |C_k| = |C_i| |C_j|") {
    Group h = builtin::psd16();
    for (int i = 0; i < h.num_classes(); ++i)
      for (int j = 0; j < h.num_classes(); ++j) {
        auto a = class_mult_coeffs(h, i, j);
        i64 lhs = 0;
        for (int k = 0; k < h.num_classes(); ++k) lhs += a[size_t(k)] * i64(h.class_size(k));
        CHECK(lhs == i64(h.class_size(i)) * i64(h.class_size(j)));
      }
  }
}

TEST_CASE("character table of P : SD16") {
  Group g = builtin::psd16();
  CharTable T = CharTable::dixon_schneider(g);
  CHECK(degrees_of(T) == std::vector<i64>{1, 1, 1, 1, 2, 2, 2, 8, 8});

  int c3a = class_by(g, 3, 18);
  int c8a = class_by(g, 8, 8);
  int c2a = class_by(g, 2, 16);
  for (int i = 7; i <= 8; ++i) CHECK(T.irr(i)[size_t(c3a)] == CycInt::integer(-1));
  CycInt sqrtm2 = CycInt::root(8, 1) + CycInt::root(8, 3);
  int with_plus = 0, with_minus = 0, real_row = 0;
  for (int i = 4; i <= 6; ++i) {
    const CycInt& v = T.irr(i)[size_t(c8a)];
    if (v == sqrtm2) ++with_plus;
    if (v == -sqrtm2) ++with_minus;
    if (v == CycInt::integer(0)) {
      ++real_row;
      CHECK(T.irr(i)[size_t(c2a)] == CycInt::integer(2));
    }
  }
  CHECK(with_plus == 1);
  CHECK(with_minus == 1);
  CHECK(real_row == 1);

  SECTION("column orthogonality at the identity column") {
    for (int k = 1; k < T.num_classes(); ++k) {
      CycInt s;
      for (int i = 0; i < T.num_irr(); ++i) s = s + i64(T.degree(i)) * T.irr(i)[size_t(k)];
      CHECK(s == CycInt::integer(0));
    }
  }
}

TEST_CASE("A6 character table and induction from A5") {
  Group g = builtin::a6();
  CharTable T = CharTable::dixon_schneider(g);
  CHECK(degrees_of(T) == std::vector<i64>{1, 5, 5, 8, 8, 9, 10});

  Group h = subgroup(g, builtin::a5_in_a6_gens(), "a5");
  REQUIRE(h.order() == 60);
  CharTable Th = CharTable::dixon_schneider(h);

  SECTION("permutation character 1_A5 induced to A6 is 1 + a degree-5 row") {
    ClassFn ind = induce_classfn(h, trivial_character(Th), g);
    CHECK(ind[0] == CycInt::integer(6));
    CHECK(inner_product(T, ind, trivial_character(T)) == CycInt::integer(1));
    i64 fives = 0;
    for (int i = 0; i < T.num_irr(); ++i) {
      CycInt c = inner_product(T, ind, T.irr(i));
      if (T.degree(i) == 5 && c == CycInt::integer(1)) ++fives;
      if (T.degree(i) != 5 && i != T.trivial_index()) CHECK(c == CycInt::integer(0));
    }
    CHECK(fives == 1);  // rank-2 permutation action
  }

  SECTION("induction from H = G is the identity") {
    Group whole = subgroup(g, g.gens());
    ClassFn chi = restrict_classfn(whole, T.irr(3), g);
    ClassFn back = induce_classfn(whole, chi, g);
    for (int k = 0; k < T.num_classes(); ++k) CHECK(back[size_t(k)] == T.irr(3)[size_t(k)]);
  }

  SECTION("Frobenius reciprocity for every pair") {
    for (int a = 0; a < Th.num_irr(); ++a) {
      ClassFn up = induce_classfn(h, Th.irr(a), g);
      for (int b = 0; b < T.num_irr(); ++b) {
        CycInt lhs = inner_product(T, up, T.irr(b));
        CycInt rhs = inner_product(Th, restrict_classfn(h, T.irr(b), g), Th.irr(a));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("1_Q induced to psd16 has degree 48 and is self-conjugate") {
  Group g = builtin::psd16();
  Group q = subgroup(g, builtin::psd16_Q_gens(), "Q");
  CharTable Tq = CharTable::dixon_schneider(q);
  ClassFn ind = induce_classfn(q, trivial_character(Tq), g);
  CHECK(ind[0] == CycInt::integer(48));
  for (auto& v : ind) CHECK(v.conj() == v);
}

TEST_CASE("p-blocks") {
  SECTION("C3 at p = 3: one block of defect 1") {
    Group g = builtin::c3();
    CharTable T = CharTable::dixon_schneider(g);
    BlockPartition bp = p_blocks(T, 3);
    REQUIRE(bp.blocks.size() == 1);
    CHECK(bp.defects == std::vector<int>{1});
  }
  SECTION("S3 at p = 3: one block") {
    Group g = builtin::s3();
    CharTable T = CharTable::dixon_schneider(g);
    BlockPartition bp = p_blocks(T, 3);
    CHECK(bp.blocks.size() == 1);
  }
  SECTION("SD16 at p = 3 is semisimple: 7 blocks of defect 0") {
    Group g = builtin::sd16();
    CharTable T = CharTable::dixon_schneider(g);
    BlockPartition bp = p_blocks(T, 3);
    CHECK(bp.blocks.size() == 7);
    for (int d : bp.defects) CHECK(d == 0);
  }
  SECTION("psd16 at p = 3: a single block of defect 2") {
    Group g = builtin::psd16();
    CharTable T = CharTable::dixon_schneider(g);
    BlockPartition bp = p_blocks(T, 3);
    REQUIRE(bp.blocks.size() == 1);
    CHECK(bp.blocks[0].size() == 9);
    CHECK(bp.defects == std::vector<int>{2});
  }
  SECTION("A6 at p = 3: principal block of 6 plus a defect-0 block") {
    Group g = builtin::a6();
    CharTable T = CharTable::dixon_schneider(g);
    BlockPartition bp = p_blocks(T, 3);
    REQUIRE(bp.blocks.size() == 2);
    std::vector<size_t> sizes{bp.blocks[0].size(), bp.blocks[1].size()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 6});
    for (size_t b = 0; b < bp.blocks.size(); ++b) {
      if (bp.blocks[b].size() == 1) {
        CHECK(T.degree(bp.blocks[b][0]) == 9);
        CHECK(bp.defects[b] == 0);
      } else {
        CHECK(bp.defects[b] == 2);
      }
    }
  }
}

TEST_CASE("block projection") {
  Group g = builtin::a6();
  CharTable T = CharTable::dixon_schneider(g);
  BlockPartition bp = p_blocks(T, 3);
  int principal = bp.block_of_irr(T.trivial_index());
  SECTION("projecting an irreducible onto its own block fixes it") {
    for (int i : bp.blocks[size_t(principal)]) {
      ClassFn pr = block_project(T, T.irr(i), bp.blocks[size_t(principal)]);
      for (int k = 0; k < T.num_classes(); ++k) CHECK(pr[size_t(k)] == T.irr(i)[size_t(k)]);
    }
  }
  SECTION("projecting onto a disjoint block kills it") {
    int other = 1 - principal;
    ClassFn pr = block_project(T, T.irr(T.trivial_index()), bp.blocks[size_t(other)]);
    for (auto& v : pr) CHECK(v == CycInt::integer(0));
  }
  SECTION("projection is idempotent") {
    ClassFn reg(size_t(T.num_classes()));
    reg[0] = CycInt::integer(i64(g.order()));
    for (int k = 1; k < T.num_classes(); ++k) reg[size_t(k)] = CycInt::integer(0);
    ClassFn pr = block_project(T, reg, bp.blocks[size_t(principal)]);
    ClassFn pr2 = block_project(T, pr, bp.blocks[size_t(principal)]);
    for (int k = 0; k < T.num_classes(); ++k) CHECK(pr[size_t(k)] == pr2[size_t(k)]);
  }
}

TEST_CASE("Galois action permutes rows within equal-defect block unions") {
  Group g = builtin::a6();
  CharTable T = CharTable::dixon_schneider(g);
  BlockPartition bp = p_blocks(T, 3);
  int e = T.exponent();
  for (int t = 2; t < e; ++t) {
    if (std::gcd(t, e) != 1) continue;
    for (int i = 0; i < T.num_irr(); ++i) {
      ClassFn twisted(size_t(T.num_classes()));
      for (int k = 0; k < T.num_classes(); ++k) twisted[size_t(k)] = T.irr(i)[size_t(k)].galois(t);
      int match = -1;
      for (int j = 0; j < T.num_irr(); ++j) {
        bool eq = true;
        for (int k = 0; k < T.num_classes(); ++k)
          if (twisted[size_t(k)] != T.irr(j)[size_t(k)]) { eq = false; break; }
        if (eq) { match = j; break; }
      }
      REQUIRE(match >= 0);
      CHECK(bp.defects[size_t(bp.block_of_irr(i))] == bp.defects[size_t(bp.block_of_irr(match))]);
    }
  }
}

TEST_CASE("block sums vanish at p-singular classes under the place") {
  Group g = builtin::psd16();
  CharTable T = CharTable::dixon_schneider(g);
  BlockPartition bp = p_blocks(T, 3);
  for (auto& blk : bp.blocks)
    for (int k = 0; k < T.num_classes(); ++k) {
      if (g.class_element_order(k) % 3 != 0) continue;
      CycInt s;
      for (int i : blk) s = s + i64(T.degree(i)) * T.irr(i)[size_t(k)];
      const Field& F = place_field(3, g.class_element_order(k));
      CHECK(place_image(s, F) == 0);
    }
}
