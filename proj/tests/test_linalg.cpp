#include <catch2/catch_amalgamated.hpp>

#include "blockbench/linalg.hpp"

using namespace blockbench;

namespace {

Mat random_mat(Rng& rng, const Field& F, int r, int c) {
  Mat m(F, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = u8(rng.below(F.q()));
  return m;
}

// 3x3 circulant shift: the regular representation of C3 acting on itself.
Mat c3_shift(const Field& F) {
  Mat g(F, 3, 3);
  g.at(0, 1) = 1;
  g.at(1, 2) = 1;
  g.at(2, 0) = 1;
  return g;
}

}  // namespace

TEST_CASE("echelonize ranks") {
  const Field& F3 = Field::get(3, 1);
  CHECK(echelonize(Mat::identity(F3, 3)).rank == 3);
  CHECK(echelonize(Mat(F3, 4, 7)).rank == 0);
  Mat m(F3, 2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 1;
  CHECK(echelonize(m).rank == 1);  // det = 1 - 4 = 0 mod 3
}

TEST_CASE("echelonize is a projection") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const Field& F = Field::get(3, t % 2 + 1);
    Mat m = random_mat(rng, F, 1 + int(rng.below(8)), 1 + int(rng.below(8)));
    Echelon e = echelonize(m);
    Echelon e2 = echelonize(e.rref);
    CHECK(e.rref == e2.rref);
    CHECK(e.pivots == e2.pivots);
  }
}

TEST_CASE("nullspace") {
  const Field& F3 = Field::get(3, 1);
  CHECK(left_nullspace(Mat::identity(F3, 4)).rows() == 0);
  CHECK(left_nullspace(Mat(F3, 5, 5)).rows() == 5);
  Mat m(F3, 2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 1;
  Mat ns = left_nullspace(m);
  REQUIRE(ns.rows() == 1);
  CHECK(ns.at(0, 0) == 1);
  CHECK(ns.at(0, 1) == 1);  // (1,1) * M = 0 mod 3
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const Field& F = Field::get(3, 2);
    Mat a = random_mat(rng, F, 2 + int(rng.below(7)), 2 + int(rng.below(7)));
    Mat ns2 = left_nullspace(a);
    if (ns2.rows() > 0) CHECK((ns2 * a).is_zero());
    CHECK(ns2.rows() + echelonize(a).rank == a.rows());
  }
}

TEST_CASE("solve consistency") {
  Rng rng(31);
  const Field& F = Field::get(3, 2);
  for (int t = 0; t < 50; ++t) {
    Mat m = random_mat(rng, F, 2 + int(rng.below(6)), 2 + int(rng.below(6)));
    Vec x0(size_t(m.rows()));
    for (u8& v : x0) v = u8(rng.below(F.q()));
    Vec b = vec_mat(F, x0, m);
    auto x = solve_left(m, b);
    REQUIRE(x.has_value());
    CHECK(vec_mat(F, *x, m) == b);
  }
}

TEST_CASE("spin") {
  const Field& F3 = Field::get(3, 1);
  SECTION("identity generator spans the seeds") {
    std::vector<Vec> seeds{{1, 2, 0}, {0, 0, 1}};
    Mat s = spin(seeds, {Mat::identity(F3, 3)});
    CHECK(s.rows() == 2);
  }
  SECTION("all-ones vector is fixed by the C3 shift") {
    Mat s = spin({{1, 1, 1}}, {c3_shift(F3)});
    CHECK(s.rows() == 1);
  }
  SECTION("a point basis vector spins to everything") {
    Mat s = spin({{1, 0, 0}}, {c3_shift(F3)});
    CHECK(s.rows() == 3);
  }
  SECTION("spin is idempotent and generator-stable") {
    Rng rng(5);
    const Field& F9 = Field::get(3, 2);
    for (int t = 0; t < 20; ++t) {
      std::vector<Mat> gens{random_mat(rng, F9, 6, 6), random_mat(rng, F9, 6, 6)};
      Vec seed(6);
      for (u8& v : seed) v = u8(rng.below(9));
      Mat basis = spin({seed}, gens);
      std::vector<Vec> rows;
      for (int i = 0; i < basis.rows(); ++i) rows.push_back(basis.row_vec(i));
      CHECK(spin(rows, gens) == basis);
      CoordBasis cb(F9, 6);
      for (auto& r : rows) cb.insert(r);
      for (const Mat& g : gens)
        for (auto& r : rows) CHECK(cb.contains(vec_mat(F9, r, g)));
    }
  }
}

TEST_CASE("kron") {
  const Field& F9 = Field::get(3, 2);
  CHECK(kron(Mat::identity(F9, 2), Mat::identity(F9, 3)) == Mat::identity(F9, 6));
  Rng rng(7);
  Mat a = random_mat(rng, F9, 3, 3);
  Mat one(F9, 1, 1);
  one.at(0, 0) = 1;
  CHECK(kron(a, one) == a);
  for (int t = 0; t < 25; ++t) {
    Mat A = random_mat(rng, F9, 3, 3), B = random_mat(rng, F9, 2, 2);
    Mat C = random_mat(rng, F9, 3, 3), D = random_mat(rng, F9, 2, 2);
    CHECK(kron(A, B) * kron(C, D) == kron(A * C, B * D));
    CHECK(kron(A, B).trace() == F9.mul(A.trace(), B.trace()));
  }
}

TEST_CASE("coord basis coordinates") {
  Rng rng(11);
  const Field& F = Field::get(3, 2);
  for (int t = 0; t < 30; ++t) {
    CoordBasis cb(F, 8);
    std::vector<Vec> inserted;
    for (int i = 0; i < 6; ++i) {
      Vec v(8);
      for (u8& x : v) x = u8(rng.below(9));
      if (cb.insert(v)) inserted.push_back(v);
    }
    Vec combo(8, 0), expect(inserted.size());
    for (size_t i = 0; i < inserted.size(); ++i) {
      u8 c = u8(rng.below(9));
      expect[i] = c;
      const u8* crow = F.mul_row(c);
      for (size_t j = 0; j < 8; ++j) combo[j] = u8(F.add(combo[j], crow[inserted[i][j]]));
    }
    auto coords = cb.coords(combo);
    REQUIRE(coords.has_value());
    CHECK(*coords == expect);
  }
}

TEST_CASE("char_poly satisfies Cayley-Hamilton and matches small cases") {
  const Field& F3 = Field::get(3, 1);
  Mat one(F3, 1, 1);
  one.at(0, 0) = 2;
  CHECK(char_poly(one).c == std::vector<u32>{1, 1});  // x - 2 = x + 1 over GF(3)
  CHECK(char_poly(c3_shift(F3)).c == std::vector<u32>{2, 0, 0, 1});  // x^3 - 1

  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const Field& F = Field::get(3, 1 + t % 2);
    int n = 2 + int(rng.below(6));
    Mat a(F, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = u8(rng.below(F.q()));
    FPoly cp = char_poly(a);
    REQUIRE(cp.deg() == n);
    CHECK(cp.lead() == 1);
    CHECK(cp.eval_mat(a).is_zero());
    CHECK(cp.c[size_t(n) - 1] == F.neg(a.trace()));
  }
}

TEST_CASE("factor_poly") {
  const Field& F3 = Field::get(3, 1);
  SECTION("x^3 - 1 over GF(3) is (x-1)^3") {
    FPoly f(F3, {2, 0, 0, 1});
    auto fs = factor_poly(f);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].second == 3);
    CHECK(fs[0].first.c == std::vector<u32>{2, 1});
  }
  SECTION("x^2 + 1 over GF(3) is irreducible, splits over GF(9)") {
    FPoly f(F3, {1, 0, 1});
    auto fs = factor_poly(f);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].first.deg() == 2);
    const Field& F9 = Field::get(3, 2);
    FPoly f9(F9, {1, 0, 1});
    auto fs9 = factor_poly(f9);
    REQUIRE(fs9.size() == 2);
    CHECK(fs9[0].first.deg() == 1);
  }
  SECTION("random products refactor and multiply back") {
    Rng rng(19);
    for (int t = 0; t < 25; ++t) {
      const Field& F = Field::get(t % 2 ? 2 : 3, 1 + t % 3);
      FPoly prod = FPoly::one(F);
      for (int i = 0; i < 4; ++i) {
        int d = 1 + int(rng.below(3));
        std::vector<u32> c(size_t(d) + 1);
        for (u32& x : c) x = rng.below(F.q());
        c[size_t(d)] = 1;
        prod = prod * FPoly(F, c);
      }
      auto fs = factor_poly(prod);
      FPoly back = FPoly::one(F);
      for (auto& [f, m] : fs)
        for (int i = 0; i < m; ++i) back = back * f;
      CHECK(back == prod.monic());
      for (auto& [f, m] : fs) {
        auto sub = factor_poly(f);
        CHECK(sub.size() == 1);
        CHECK(sub[0].second == 1);
      }
    }
  }
}
