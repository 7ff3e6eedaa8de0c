#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "blockbench/base.hpp"
#include "blockbench/gfq.hpp"

namespace blockbench {

using Vec = std::vector<u8>;  // row vector over a Field with q <= 256

/// Packed dense matrix over a Field (one byte per entry, q <= 256).
/// Matrices are value types; all operations return fresh objects.
class Mat {
 public:
  Mat() : F_(nullptr), rows_(0), cols_(0) {}
  Mat(const Field& F, int rows, int cols)
      : F_(&F), rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), 0) {
    require(F.q() <= 256, "cap", "matrix entries require q <= 256");
  }
  static Mat identity(const Field& F, int n) {
    Mat m(F, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static Mat from_rows(const Field& F, const std::vector<Vec>& rows, int cols) {
    Mat m(F, int(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
      require(int(rows[i].size()) == cols, "bad_input", "ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(int(i)));
    }
    return m;
  }

  const Field& field() const { return *F_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  u8& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  u8 at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }
  u8* row(int r) { return a_.data() + size_t(r) * cols_; }
  const u8* row(int r) const { return a_.data() + size_t(r) * cols_; }
  Vec row_vec(int r) const { return Vec(row(r), row(r) + cols_); }

  bool is_zero() const {
    for (u8 x : a_)
      if (x) return false;
    return true;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "bad_input", "shape mismatch");
    Mat c = a;
    const Field& F = *a.F_;
    for (size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = u8(F.add(c.a_[i], b.a_[i]));
    return c;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "bad_input", "shape mismatch");
    Mat c = a;
    const Field& F = *a.F_;
    for (size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = u8(F.sub(c.a_[i], b.a_[i]));
    return c;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    require(a.F_ == b.F_, "bad_input", "field mismatch");
    require(a.cols_ == b.rows_, "bad_input", "shape mismatch");
    const Field& F = *a.F_;
    Mat c(F, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      u8* ci = c.row(i);
      for (int k = 0; k < a.cols_; ++k) {
        u8 aik = a.at(i, k);
        if (!aik) continue;
        const u8* mrow = F.mul_row(aik);
        const u8* bk = b.row(k);
        for (int j = 0; j < b.cols_; ++j) ci[j] = u8(F.add(ci[j], mrow[bk[j]]));
      }
    }
    return c;
  }
  Mat scaled(u32 c) const {
    Mat m = *this;
    const u8* mrow = F_->mul_row(c);
    for (u8& x : m.a_) x = mrow[x];
    return m;
  }
  Mat transpose() const {
    Mat t(*F_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }
  Mat pow(u64 e) const {
    require(rows_ == cols_, "bad_input", "pow needs a square matrix");
    Mat r = identity(*F_, rows_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  u32 trace() const {
    u32 t = 0;
    for (int i = 0; i < rows_; ++i) t = F_->add(t, at(i, i));
    return t;
  }

  /// Kronecker product; (A kron B)(C kron D) = AC kron BD.
  friend Mat kron(const Mat& a, const Mat& b) {
    require(a.F_ == b.F_, "bad_input", "field mismatch");
    const Field& F = *a.F_;
    Mat c(F, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        u8 s = a.at(i, k);
        if (!s) continue;
        const u8* mrow = F.mul_row(s);
        for (int j = 0; j < b.rows_; ++j)
          for (int l = 0; l < b.cols_; ++l)
            c.at(i * b.rows_ + j, k * b.cols_ + l) = mrow[b.at(j, l)];
      }
    return c;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << int(at(i, j));
      os << "\n";
    }
    return os.str();
  }

 private:
  const Field* F_;
  int rows_, cols_;
  std::vector<u8> a_;
};

inline Vec vec_mat(const Field& F, const Vec& v, const Mat& m) {
  require(int(v.size()) == m.rows(), "bad_input", "shape mismatch");
  Vec r(size_t(m.cols()), 0);
  for (int i = 0; i < m.rows(); ++i) {
    if (!v[size_t(i)]) continue;
    const u8* mrow = F.mul_row(v[size_t(i)]);
    const u8* mi = m.row(i);
    for (int j = 0; j < m.cols(); ++j) r[size_t(j)] = u8(F.add(r[size_t(j)], mrow[mi[j]]));
  }
  return r;
}

struct Echelon {
  Mat rref;
  int rank = 0;
  std::vector<int> pivots;
};

/// Row-reduced echelon form with deterministic first-nonzero pivoting.
/// echelonize is a projection: applying it to its own output is a no-op.
inline Echelon echelonize(Mat m) {
  const Field& F = m.field();
  int r = 0;
  std::vector<int> pivots;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pr = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c)) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
    u32 inv = F.inv(m.at(r, c));
    const u8* srow = F.mul_row(inv);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = srow[m.at(r, j)];
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      u8 f = m.at(i, c);
      if (!f) continue;
      const u8* mrow = F.mul_row(f);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) = u8(F.sub(m.at(i, j), mrow[m.row(r)[j]]));
    }
    pivots.push_back(c);
    ++r;
  }
  // drop zero rows for a canonical result
  Mat out(F, r, m.cols());
  for (int i = 0; i < r; ++i) std::copy(m.row(i), m.row(i) + m.cols(), out.row(i));
  return Echelon{std::move(out), r, std::move(pivots)};
}

inline int rank(const Mat& m) { return echelonize(m).rank; }

/// Right kernel: columns x with m x = 0, returned as rows of the result.
inline Mat right_kernel(const Mat& m) {
  const Field& F = m.field();
  Echelon e = echelonize(m);
  std::vector<char> is_pivot(size_t(m.cols()), 0);
  for (int c : e.pivots) is_pivot[size_t(c)] = 1;
  Mat out(F, m.cols() - e.rank, m.cols());
  int k = 0;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[size_t(c)]) continue;
    out.at(k, c) = 1;
    for (int i = 0; i < e.rank; ++i) out.at(k, e.pivots[size_t(i)]) = u8(F.neg(e.rref.at(i, c)));
    ++k;
  }
  return echelonize(std::move(out)).rref;
}

/// Basis of {v : v m = 0} as echelonized rows.
inline Mat left_nullspace(const Mat& m) { return right_kernel(m.transpose()); }

/// One solution x of x m = b, if any.
inline std::optional<Vec> solve_left(const Mat& m, const Vec& b) {
  const Field& F = m.field();
  // solve m^T x^T = b^T by eliminating the augmented transpose
  Mat aug(F, m.cols(), m.rows() + 1);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) aug.at(j, i) = m.at(i, j);
  for (int j = 0; j < m.cols(); ++j) aug.at(j, m.rows()) = b[size_t(j)];
  Echelon e = echelonize(std::move(aug));
  Vec x(size_t(m.rows()), 0);
  for (int i = 0; i < e.rank; ++i) {
    int p = e.pivots[size_t(i)];
    if (p == m.rows()) return std::nullopt;  // pivot in the rhs column
    x[size_t(p)] = e.rref.at(i, m.rows());
  }
  return x;
}

inline Mat inverse(const Mat& m) {
  require(m.rows() == m.cols(), "bad_input", "inverse needs a square matrix");
  const Field& F = m.field();
  int n = m.rows();
  Mat aug(F, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  Echelon e = echelonize(std::move(aug));
  require(e.rank == n && e.pivots[size_t(n) - 1] == n - 1, "bad_input", "matrix not invertible");
  Mat inv(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = e.rref.at(i, n + j);
  return inv;
}

/// Incremental echelonized basis that can express members in terms of the
/// original inserted rows (used by spinning and homomorphism solving).
class CoordBasis {
 public:
  explicit CoordBasis(const Field& F, int width) : F_(&F), width_(width) {}

  int dim() const { return int(rows_.size()); }
  int width() const { return width_; }
  const std::vector<Vec>& original_rows() const { return orig_; }

  /// Insert v as a new original row if independent; returns true if added.
  bool insert(const Vec& v) {
    Vec red = v;
    std::vector<std::pair<int, u8>> combo;
    if (!reduce(red, &combo)) return false;  // dependent
    int pivot = first_nonzero(red);
    u32 inv = F_->inv(red[size_t(pivot)]);
    Vec norm(red.size());
    const u8* mrow = F_->mul_row(inv);
    for (size_t i = 0; i < red.size(); ++i) norm[i] = mrow[red[i]];
    // transform row: coords of the new echelon row in terms of originals
    Vec t(orig_.size() + 1, 0);
    t[orig_.size()] = 1;
    for (auto [ri, c] : combo) {
      // red = v - sum c * rows_[ri]; echelon rows carry their own transforms
      const Vec& tr = trans_[size_t(ri)];
      const u8* crow = F_->mul_row(c);
      for (size_t i = 0; i < tr.size(); ++i) t[i] = u8(F_->sub(t[i], crow[tr[i]]));
    }
    for (u8& x : t) x = F_->mul_row(inv)[x];
    for (auto& tr : trans_) tr.resize(orig_.size() + 1, 0);
    // keep rows mutually reduced so one reduction pass decides membership
    for (size_t r = 0; r < rows_.size(); ++r) {
      u8 c = rows_[r][size_t(pivot)];
      if (!c) continue;
      const u8* crow = F_->mul_row(c);
      for (size_t i = 0; i < norm.size(); ++i)
        rows_[r][i] = u8(F_->sub(rows_[r][i], crow[norm[i]]));
      for (size_t i = 0; i < t.size(); ++i)
        trans_[r][i] = u8(F_->sub(trans_[r][i], crow[t[i]]));
    }
    orig_.push_back(v);
    rows_.push_back(std::move(norm));
    trans_.push_back(std::move(t));
    pivots_.push_back(pivot);
    return true;
  }

  bool contains(const Vec& v) const {
    Vec red = v;
    return !reduce(red, nullptr);
  }

  /// Coordinates of v with respect to the original inserted rows, if v lies
  /// in the span.
  std::optional<Vec> coords(const Vec& v) const {
    Vec red = v;
    std::vector<std::pair<int, u8>> combo;
    if (reduce(red, &combo)) return std::nullopt;
    Vec out(orig_.size(), 0);
    for (auto [ri, c] : combo) {
      const Vec& tr = trans_[size_t(ri)];
      const u8* crow = F_->mul_row(c);
      for (size_t i = 0; i < tr.size(); ++i) out[i] = u8(F_->add(out[i], crow[tr[i]]));
    }
    return out;
  }

  Mat basis_matrix() const { return echelonize(Mat::from_rows(*F_, rows_, width_)).rref; }
  Mat original_matrix() const { return Mat::from_rows(*F_, orig_, width_); }

 private:
  int first_nonzero(const Vec& v) const {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i]) return int(i);
    return -1;
  }
  // Reduce v against the echelon rows; records (row, coefficient) pairs.
  // Returns true if a nonzero remainder is left in v.
  bool reduce(Vec& v, std::vector<std::pair<int, u8>>* combo) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      u8 c = v[size_t(pivots_[r])];
      if (!c) continue;
      if (combo) combo->push_back({int(r), c});
      const u8* crow = F_->mul_row(c);
      const Vec& row = rows_[r];
      for (size_t i = 0; i < v.size(); ++i) v[i] = u8(F_->sub(v[i], crow[row[i]]));
    }
    return first_nonzero(v) >= 0;
  }

  const Field* F_;
  int width_;
  std::vector<Vec> rows_;   // echelonized (not fully reduced upward)
  std::vector<Vec> orig_;   // rows as inserted
  std::vector<Vec> trans_;  // rows_[i] = sum trans_[i][j] * orig_[j]
  std::vector<int> pivots_;
};

/// Smallest subspace containing the seeds and closed under every generator,
/// returned as an echelonized basis. Idempotent by construction.
inline Mat spin(const std::vector<Vec>& seeds, const std::vector<Mat>& gens) {
  require(!gens.empty(), "bad_input", "spin needs at least one generator");
  const Field& F = gens[0].field();
  int n = gens[0].rows();
  for (const Mat& g : gens)
    require(g.rows() == n && g.cols() == n, "bad_input", "generators must be square of equal size");
  CoordBasis basis(F, n);
  std::vector<Vec> work;
  for (const Vec& s : seeds) {
    require(int(s.size()) == n, "bad_input", "seed length mismatch");
    if (basis.insert(s)) work.push_back(s);
  }
  for (size_t i = 0; i < work.size(); ++i) {
    for (const Mat& g : gens) {
      Vec img = vec_mat(F, work[i], g);
      if (basis.insert(img)) work.push_back(std::move(img));
    }
  }
  return basis.basis_matrix();
}

// ---------------------------------------------------------------------------
// Polynomials over a Field (used for characteristic polynomials and the
// irreducibility machinery in the chopper).

struct FPoly {
  const Field* F = nullptr;
  std::vector<u32> c;  // low-to-high, normalized: trailing zeros stripped

  FPoly() = default;
  FPoly(const Field& field, std::vector<u32> coeffs) : F(&field), c(std::move(coeffs)) { trim(); }
  static FPoly zero(const Field& F) { return FPoly(F, {}); }
  static FPoly one(const Field& F) { return FPoly(F, {1}); }
  static FPoly x(const Field& F) { return FPoly(F, {0, 1}); }

  int deg() const { return int(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  u32 lead() const { return c.back(); }

  FPoly monic() const {
    if (is_zero()) return *this;
    FPoly r = *this;
    u32 inv = F->inv(lead());
    for (u32& x : r.c) x = F->mul(x, inv);
    return r;
  }

  friend FPoly operator+(const FPoly& a, const FPoly& b) {
    FPoly r = a;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.F->add(r.c[i], b.c[i]);
    r.trim();
    return r;
  }
  friend FPoly operator-(const FPoly& a, const FPoly& b) {
    FPoly r = a;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.F->sub(r.c[i], b.c[i]);
    r.trim();
    return r;
  }
  friend FPoly operator*(const FPoly& a, const FPoly& b) {
    if (a.is_zero() || b.is_zero()) return zero(*a.F);
    FPoly r;
    r.F = a.F;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (!a.c[i]) continue;
      for (size_t j = 0; j < b.c.size(); ++j)
        r.c[i + j] = a.F->add(r.c[i + j], a.F->mul(a.c[i], b.c[j]));
    }
    return r;
  }
  friend FPoly operator%(FPoly a, const FPoly& b) {
    require(!b.is_zero(), "internal", "poly mod zero");
    u32 linv = a.F->inv(b.lead());
    while (a.deg() >= b.deg() && !a.is_zero()) {
      u32 f = a.F->mul(a.lead(), linv);
      int shift = a.deg() - b.deg();
      for (size_t i = 0; i < b.c.size(); ++i)
        a.c[size_t(shift) + i] = a.F->sub(a.c[size_t(shift) + i], a.F->mul(f, b.c[i]));
      a.trim();
    }
    return a;
  }
  friend FPoly operator/(FPoly a, const FPoly& b) {
    require(!b.is_zero(), "internal", "poly div zero");
    if (a.deg() < b.deg()) return zero(*a.F);
    FPoly q;
    q.F = a.F;
    q.c.assign(size_t(a.deg() - b.deg()) + 1, 0);
    u32 linv = a.F->inv(b.lead());
    while (!a.is_zero() && a.deg() >= b.deg()) {
      u32 f = a.F->mul(a.lead(), linv);
      int shift = a.deg() - b.deg();
      q.c[size_t(shift)] = f;
      for (size_t i = 0; i < b.c.size(); ++i)
        a.c[size_t(shift) + i] = a.F->sub(a.c[size_t(shift) + i], a.F->mul(f, b.c[i]));
      a.trim();
    }
    q.trim();
    return q;
  }
  friend bool operator==(const FPoly& a, const FPoly& b) { return a.c == b.c; }

  FPoly derivative() const {
    if (c.size() <= 1) return zero(*F);
    FPoly r;
    r.F = F;
    r.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) {
      u32 s = F->from_int(i64(i));
      r.c[i - 1] = F->mul(c[i], s);
    }
    r.trim();
    return r;
  }

  u32 eval(u32 x) const {
    u32 acc = 0;
    for (int i = deg(); i >= 0; --i) acc = F->add(F->mul(acc, x), c[size_t(i)]);
    return acc;
  }

  /// f(A) for a square matrix A (Horner).
  Mat eval_mat(const Mat& a) const {
    Mat acc(*F, a.rows(), a.rows());
    for (int i = deg(); i >= 0; --i) {
      acc = acc * a;
      if (c[size_t(i)]) acc = acc + Mat::identity(*F, a.rows()).scaled(c[size_t(i)]);
    }
    return acc;
  }
};

inline FPoly poly_gcd(FPoly a, FPoly b) {
  while (!b.is_zero()) {
    FPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

inline FPoly poly_powmod(FPoly base, u64 e, const FPoly& mod) {
  FPoly r = FPoly::one(*base.F);
  base = base % mod;
  while (e) {
    if (e & 1) r = (r * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return r;
}

/// Characteristic polynomial via Hessenberg reduction, monic, exact.
inline FPoly char_poly(Mat a) {
  require(a.rows() == a.cols(), "bad_input", "char_poly needs a square matrix");
  const Field& F = a.field();
  int n = a.rows();
  if (n == 0) return FPoly::one(F);
  // similarity reduction to upper Hessenberg form
  for (int j = 0; j < n - 2; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i)
      if (a.at(i, j)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != j + 1) {
      for (int c = 0; c < n; ++c) std::swap(a.at(piv, c), a.at(j + 1, c));
      for (int r = 0; r < n; ++r) std::swap(a.at(r, piv), a.at(r, j + 1));
    }
    u32 inv = F.inv(a.at(j + 1, j));
    for (int i = j + 2; i < n; ++i) {
      u8 f = u8(F.mul(a.at(i, j), inv));
      if (!f) continue;
      const u8* frow = F.mul_row(f);
      for (int c = 0; c < n; ++c) a.at(i, c) = u8(F.sub(a.at(i, c), frow[a.at(j + 1, c)]));
      for (int r = 0; r < n; ++r) a.at(r, j + 1) = u8(F.add(a.at(r, j + 1), frow[a.at(r, i)]));
    }
  }
  // recurrence on leading principal minors of (xI - H)
  std::vector<FPoly> p(size_t(n) + 1);
  p[0] = FPoly::one(F);
  for (int k = 1; k <= n; ++k) {
    FPoly xc(F, {F.neg(a.at(k - 1, k - 1)), 1});
    p[size_t(k)] = xc * p[size_t(k) - 1];
    u32 prod = 1;
    for (int i = k - 2; i >= 0; --i) {
      prod = F.mul(prod, a.at(i + 1, i));
      if (!prod) break;
      u32 coef = F.mul(a.at(i, k - 1), prod);
      if (!coef) continue;
      FPoly term = p[size_t(i)];
      for (u32& x : term.c) x = F.mul(x, coef);
      p[size_t(k)] = p[size_t(k)] - term;
    }
  }
  return p[size_t(n)];
}

/// Irreducible factorization over GF(q); deterministic for a given input
/// (the equal-degree splitting draws from an input-derived seed). Factors are
/// sorted by (degree, coefficient vector).
inline std::vector<std::pair<FPoly, int>> factor_poly(const FPoly& f_in) {
  const Field& F = *f_in.F;
  u32 q = F.q(), p = u32(F.p());
  std::vector<std::pair<FPoly, int>> out;
  FPoly f = f_in.monic();
  require(!f.is_zero(), "bad_input", "factoring the zero polynomial");

  u64 seed = 0x9e3779b9;
  for (u32 c : f.c) seed = seed * 1099511628211ull + c + 1;
  Rng rng(seed);

  // strip powers of x
  int xmult = 0;
  while (!f.c.empty() && f.c[0] == 0) {
    f.c.erase(f.c.begin());
    ++xmult;
  }
  if (xmult) out.push_back({FPoly::x(F), xmult});

  // squarefree decomposition (char p aware)
  std::vector<std::pair<FPoly, int>> squarefree;  // (squarefree part, multiplicity)
  struct Item {
    FPoly f;
    int mult;
  };
  std::vector<Item> stack{{f, 1}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.f.deg() == 0) continue;
    FPoly d = it.f.derivative();
    if (d.is_zero()) {
      // f = g(x^p); take p-th roots of coefficients
      FPoly g;
      g.F = &F;
      g.c.resize(size_t(it.f.deg() / int(p)) + 1);
      for (size_t i = 0; i < g.c.size(); ++i) {
        u32 ci = it.f.c[i * p];
        g.c[i] = ci ? F.pow(ci, i64(q) / p) : 0;
      }
      g.trim();
      stack.push_back({g, it.mult * int(p)});
      continue;
    }
    FPoly gcd = poly_gcd(it.f, d);
    FPoly w = it.f / gcd;
    int i = 1;
    while (w.deg() > 0) {
      FPoly y = poly_gcd(w, gcd);
      FPoly z = w / y;
      if (z.deg() > 0) squarefree.push_back({z.monic(), it.mult * i});
      w = y;
      gcd = gcd / y;
      ++i;
    }
    if (gcd.deg() > 0) stack.push_back({gcd, it.mult});
  }

  // distinct-degree then equal-degree splitting on each squarefree piece
  for (auto& [sf, mult] : squarefree) {
    FPoly rem = sf;
    FPoly xq = FPoly::x(F);
    for (int d = 1; rem.deg() > 0 && d <= rem.deg(); ++d) {
      xq = poly_powmod(xq, q, rem);
      FPoly g = poly_gcd(xq - FPoly::x(F), rem);
      if (g.deg() <= 0) continue;
      // g is a product of irreducibles of degree d; split it
      std::vector<FPoly> parts{g};
      std::vector<FPoly> done;
      while (!parts.empty()) {
        FPoly h = parts.back();
        parts.pop_back();
        if (h.deg() == d) {
          done.push_back(h.monic());
          continue;
        }
        // Cantor-Zassenhaus split
        FPoly r;
        r.F = &F;
        r.c.resize(size_t(h.deg()));
        for (u32& x : r.c) x = rng.below(q);
        r.trim();
        if (r.deg() < 1) {
          parts.push_back(h);  // degenerate draw, retry
          continue;
        }
        FPoly s;
        if (p == 2) {
          // additive trace over GF(2^k): r + r^2 + ... + r^(2^(kd-1))
          s = FPoly::zero(F);
          FPoly t = r % h;
          u64 reps = u64(F.k()) * u64(d);
          for (u64 i = 0; i < reps; ++i) {
            s = (s + t) % h;
            t = (t * t) % h;
          }
        } else {
          u64 e = 1;
          for (int i = 0; i < d; ++i) e *= q;
          s = poly_powmod(r, (e - 1) / 2, h) - FPoly::one(F);
        }
        FPoly g1 = poly_gcd(s, h);
        if (g1.deg() <= 0 || g1.deg() == h.deg()) {
          parts.push_back(h);  // unlucky draw, retry
          continue;
        }
        parts.push_back(g1);
        parts.push_back(h / g1);
      }
      for (FPoly& irr : done) out.push_back({irr, mult});
      rem = rem / g;
      if (rem.deg() > 0) xq = xq % rem;
    }
    if (rem.deg() > 0) out.push_back({rem.monic(), mult});
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    return a.first.c < b.first.c;
  });
  return out;
}

}  // namespace blockbench
