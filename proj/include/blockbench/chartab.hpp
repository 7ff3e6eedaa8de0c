#pragma once

#include <algorithm>
#include <map>
#include <thread>
#include <vector>

#include "blockbench/cyclotomic.hpp"
#include "blockbench/gfq.hpp"
#include "blockbench/perm.hpp"

namespace blockbench {

/// Class function on a group, one value per canonical conjugacy class.
using ClassFn = std::vector<CycInt>;

namespace dixon_detail {

// dense matrices over Z/l for the eigenvector phase of Dixon-Schneider
struct ModMat {
  u64 l = 0;
  int rows = 0, cols = 0;
  std::vector<u64> a;
  ModMat() = default;
  ModMat(u64 mod, int r, int c) : l(mod), rows(r), cols(c), a(size_t(r) * size_t(c), 0) {}
  u64& at(int r, int c) { return a[size_t(r) * cols + c]; }
  u64 at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

inline u64 modpow(u64 b, u64 e, u64 l) {
  u64 r = 1 % l;
  b %= l;
  while (e) {
    if (e & 1) r = r * b % l;
    b = b * b % l;
    e >>= 1;
  }
  return r;
}
inline u64 modinv(u64 a, u64 l) { return modpow(a % l, l - 2, l); }

// row echelon over Z/l, in place; returns pivot columns
inline std::vector<int> echelon(ModMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    u64 inv = modinv(m.at(r, c), m.l);
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv % m.l;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      u64 f = m.at(i, c);
      if (!f) continue;
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = (m.at(i, j) + (m.l - f) * m.at(r, j)) % m.l;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline ModMat nullspace(const ModMat& m_in) {
  ModMat m = m_in;
  std::vector<int> pivots = echelon(m);
  std::vector<char> is_pivot(size_t(m.cols), 0);
  for (int c : pivots) is_pivot[size_t(c)] = 1;
  ModMat out(m.l, m.cols - int(pivots.size()), m.cols);
  int k = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[size_t(c)]) continue;
    out.at(k, c) = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      out.at(k, pivots[i]) = (m.l - m.at(int(i), c)) % m.l;
    ++k;
  }
  return out;
}

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace dixon_detail

/// Ordinary character table with exact cyclotomic values, rows in a canonical
/// order (degree, then exact lexicographic value vectors over the canonical
/// class order). Built by the Dixon-Schneider algorithm over GF(l).
class CharTable {
 public:
  const Group& group() const { return *G_; }
  int num_classes() const { return G_->num_classes(); }
  int num_irr() const { return int(irr_.size()); }
  const ClassFn& irr(int i) const { return irr_[size_t(i)]; }
  i64 degree(int i) const { return irr_[size_t(i)][0].integer_value(); }
  u64 working_prime() const { return l_; }
  int exponent() const { return exponent_; }

  int trivial_index() const {
    for (int i = 0; i < num_irr(); ++i) {
      bool all_one = true;
      for (const CycInt& v : irr_[size_t(i)])
        if (v != CycInt::integer(1)) { all_one = false; break; }
      if (all_one) return i;
    }
    fail("internal", "no trivial character");
  }

  /// Indices of classes with element order coprime to p.
  std::vector<int> p_regular_classes(int p) const {
    std::vector<int> out;
    for (int c = 0; c < num_classes(); ++c)
      if (G_->class_element_order(c) % p != 0) out.push_back(c);
    return out;
  }

  static CharTable dixon_schneider(const Group& G);
  static CharTable dixon_schneider(Group&&) = delete;  // the table keeps a reference

 private:
  const Group* G_ = nullptr;
  std::vector<ClassFn> irr_;
  u64 l_ = 0;
  int exponent_ = 0;
};

/// a_{ijk}: structure constants of the class algebra, C_i C_j = sum a_{ijk} C_k.
inline std::vector<i64> class_mult_coeffs(const Group& G, int i, int j) {
  int r = G.num_classes();
  std::vector<i64> a(size_t(r), 0);
  std::vector<Perm> reps;
  for (int k = 0; k < r; ++k) reps.push_back(G.class_rep(k));
  for (u32 idx : G.class_members(i)) {
    Perm xinv = perm_inv(G.element(idx));
    for (int k = 0; k < r; ++k)
      if (G.class_of(perm_mul(xinv, reps[size_t(k)])) == j) ++a[size_t(k)];
  }
  return a;
}

inline CharTable CharTable::dixon_schneider(const Group& G) {
  require(G.order() <= caps().chartab_order, "cap",
          "character table computation capped at order " + std::to_string(caps().chartab_order));
  require(G.degree() <= caps().chartab_degree || caps().hash_classmap, "cap",
          "degree above " + std::to_string(caps().chartab_degree) +
              " needs the hash class map enabled");
  using namespace dixon_detail;
  CharTable T;
  T.G_ = &G;
  int r = G.num_classes();
  int e = G.exponent();
  T.exponent_ = e;

  // working prime: l = 1 (mod e), l > 2 sqrt(|G|), smallest such
  u64 l = 0;
  for (u64 cand = u64(e) + 1;; cand += u64(e)) {
    if (cand * cand <= 4 * G.order()) continue;
    if (is_prime_u64(cand)) {
      l = cand;
      break;
    }
  }
  T.l_ = l;

  if (r == 1) {
    T.irr_ = {{CycInt::integer(1)}};
    return T;
  }

  // class matrices M_i[j][k] = a_{ijk}, all in one sweep over the elements
  std::vector<Perm> reps;
  for (int k = 0; k < r; ++k) reps.push_back(G.class_rep(k));
  u32 n = u32(G.order());
  std::vector<std::vector<u32>> amat(size_t(r), std::vector<u32>(size_t(r) * size_t(r), 0));
  {
    int nthreads = std::max(1, std::min(caps().threads, 16));
    std::vector<std::vector<std::vector<u32>>> partial(
        size_t(nthreads),
        std::vector<std::vector<u32>>(size_t(r), std::vector<u32>(size_t(r) * size_t(r), 0)));
    auto work = [&](int tid) {
      for (u32 idx = u32(tid); idx < n; idx += u32(nthreads)) {
        int i = G.class_of_index(idx);
        Perm xinv = perm_inv(G.element(idx));
        for (int k = 0; k < r; ++k) {
          int j = G.class_of(perm_mul(xinv, reps[size_t(k)]));
          ++partial[size_t(tid)][size_t(i)][size_t(j) * size_t(r) + size_t(k)];
        }
      }
    };
    if (nthreads == 1) {
      work(0);
    } else {
      std::vector<std::thread> ts;
      for (int t = 0; t < nthreads; ++t) ts.emplace_back(work, t);
      for (auto& t : ts) t.join();
    }
    for (int t = 0; t < nthreads; ++t)
      for (int i = 0; i < r; ++i)
        for (size_t z = 0; z < size_t(r) * size_t(r); ++z)
          amat[size_t(i)][z] += partial[size_t(t)][size_t(i)][z];
  }

  // split common eigenspaces; subspaces live as row bases of column vectors
  std::vector<ModMat> spaces;
  {
    ModMat full(l, r, r);
    for (int i = 0; i < r; ++i) full.at(i, i) = 1;
    spaces.push_back(full);
  }
  for (int mi = 1; mi < r; ++mi) {
    bool all_one = true;
    for (const ModMat& s : spaces)
      if (s.rows > 1) { all_one = false; break; }
    if (all_one) break;
    ModMat M(l, r, r);
    for (int jj = 0; jj < r; ++jj)
      for (int kk = 0; kk < r; ++kk) M.at(jj, kk) = amat[size_t(mi)][size_t(jj) * size_t(r) + size_t(kk)] % l;
    std::vector<ModMat> next;
    for (ModMat& W : spaces) {
      if (W.rows <= 1) {
        next.push_back(std::move(W));
        continue;
      }
      int d = W.rows;
      // images of basis rows under w -> M w (rows store w transposed)
      ModMat img(l, d, r);
      for (int s = 0; s < d; ++s)
        for (int jj = 0; jj < r; ++jj) {
          u64 acc = 0;
          for (int kk = 0; kk < r; ++kk) acc = (acc + M.at(jj, kk) * W.at(s, kk)) % l;
          img.at(s, jj) = acc;
        }
      // restriction R with img = R * W  (solve via echelon of W with memory)
      ModMat aug(l, d, r + d);
      for (int s = 0; s < d; ++s) {
        for (int c = 0; c < r; ++c) aug.at(s, c) = W.at(s, c);
        aug.at(s, r + s) = 1;
      }
      std::vector<int> piv = echelon(aug);
      ModMat R(l, d, d);
      for (int s = 0; s < d; ++s) {
        // express img row s over the echelonized rows, then map back
        std::vector<u64> v(size_t(r), 0);
        for (int c = 0; c < r; ++c) v[size_t(c)] = img.at(s, c);
        std::vector<u64> coef(size_t(d), 0);
        for (int prow = 0; prow < int(piv.size()); ++prow) {
          u64 f = v[size_t(piv[size_t(prow)])];
          if (!f) continue;
          for (int c = 0; c < r; ++c) v[size_t(c)] = (v[size_t(c)] + (l - f) * aug.at(prow, c)) % l;
          for (int c = 0; c < d; ++c)
            coef[size_t(c)] = (coef[size_t(c)] + f * aug.at(prow, r + c)) % l;
        }
        for (int c = 0; c < r; ++c)
          require(v[size_t(c)] == 0, "internal", "class matrix does not stabilize subspace");
        for (int c = 0; c < d; ++c) R.at(s, c) = coef[size_t(c)];
      }
      // eigen-split of the restriction: coordinate rows y with y R = lambda y,
      // i.e. right kernel of (R - lambda)^T
      int found = 0;
      for (u64 lam = 0; lam < l && found < d; ++lam) {
        ModMat shifted(l, d, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) shifted.at(i, j) = R.at(j, i);
        for (int i = 0; i < d; ++i) shifted.at(i, i) = (shifted.at(i, i) + l - lam) % l;
        ModMat ns = nullspace(shifted);
        if (ns.rows == 0) continue;
        found += ns.rows;
        // new basis rows: ns * W
        ModMat NB(l, ns.rows, r);
        for (int s = 0; s < ns.rows; ++s)
          for (int c = 0; c < r; ++c) {
            u64 acc = 0;
            for (int t = 0; t < d; ++t) acc = (acc + ns.at(s, t) * W.at(t, c)) % l;
            NB.at(s, c) = acc;
          }
        next.push_back(std::move(NB));
      }
      require(found == d, "internal", "restricted class matrix failed to split");
    }
    spaces = std::move(next);
  }
  require(int(spaces.size()) == r, "internal", "eigenspace splitting incomplete");

  // normalize: component on the identity class equals 1
  std::vector<std::vector<u64>> omega;
  for (ModMat& W : spaces) {
    require(W.rows == 1, "internal", "non-simple common eigenspace");
    std::vector<u64> w(size_t(r), 0);
    require(W.at(0, 0) != 0, "internal", "eigenvector vanishes on the identity class");
    u64 inv = modinv(W.at(0, 0), l);
    for (int c = 0; c < r; ++c) w[size_t(c)] = W.at(0, c) * inv % l;
    omega.push_back(std::move(w));
  }

  // degrees and character residues mod l
  std::vector<int> invclass(size_t(r), 0);
  std::vector<u64> hsize(size_t(r), 0);
  for (int k = 0; k < r; ++k) {
    invclass[size_t(k)] = G.class_of_inverse(k);
    hsize[size_t(k)] = G.class_size(k) % l;
  }
  u64 gorder = G.order() % l;
  std::vector<std::vector<u64>> chi_mod(omega.size(), std::vector<u64>(size_t(r)));
  std::vector<u64> degrees(omega.size());
  u64 degree_sq_sum = 0;
  for (size_t x = 0; x < omega.size(); ++x) {
    u64 s = 0;
    for (int k = 0; k < r; ++k)
      s = (s + omega[x][size_t(k)] * omega[x][size_t(invclass[size_t(k)])] % l *
                   modinv(hsize[size_t(k)], l)) % l;
    u64 dsq = gorder * modinv(s, l) % l;
    u64 d = 0;
    for (u64 cand = 1; 2 * cand < l; ++cand)
      if (cand * cand % l == dsq) { d = cand; break; }
    require(d != 0, "internal", "degree extraction failed");
    degrees[x] = d;
    degree_sq_sum += d * d;
    for (int k = 0; k < r; ++k)
      chi_mod[x][size_t(k)] = d * omega[x][size_t(k)] % l * modinv(hsize[size_t(k)], l) % l;
  }
  require(degree_sq_sum == G.order(), "internal", "degree check sum chi(1)^2 = |G| failed");

  // canonical e-th root of unity mod l via the smallest primitive root
  u64 w0 = 0;
  {
    auto fs = detail::prime_factors_u64(l - 1);
    for (u64 g = 2; g < l; ++g) {
      bool ok = true;
      for (u32 f : fs)
        if (modpow(g, (l - 1) / f, l) == 1) { ok = false; break; }
      if (ok) {
        w0 = g;
        break;
      }
    }
  }
  u64 z = modpow(w0, (l - 1) / u64(e), l);

  // exact values by discrete Fourier over the power map of each class
  std::vector<std::vector<int>> power_class(size_t(r), std::vector<int>{});
  for (int k = 0; k < r; ++k) {
    int m = G.class_element_order(k);
    power_class[size_t(k)].resize(size_t(m));
    for (int t = 0; t < m; ++t) power_class[size_t(k)][size_t(t)] = G.class_of_power(k, t);
  }
  for (size_t x = 0; x < omega.size(); ++x) {
    ClassFn row = ClassFn(size_t(r));
    for (int k = 0; k < r; ++k) {
      int m = G.class_element_order(k);
      u64 theta = modpow(z, u64(e / m), l);
      u64 minv = modinv(u64(m) % l, l);
      CycInt val;
      for (int j = 0; j < m; ++j) {
        u64 acc = 0;
        for (int t = 0; t < m; ++t) {
          u64 th = modpow(theta, u64((i64(m) - j) * t % m), l);
          acc = (acc + chi_mod[x][size_t(power_class[size_t(k)][size_t(t)])] * th) % l;
        }
        u64 mu = acc * minv % l;
        require(mu <= degrees[x], "internal", "eigenvalue multiplicity out of range");
        if (mu) val = val + i64(mu) * CycInt::root(m, j);
      }
      row[size_t(k)] = std::move(val);
    }
    T.irr_.push_back(std::move(row));
  }

  std::sort(T.irr_.begin(), T.irr_.end(), [](const ClassFn& a, const ClassFn& b) {
    i64 da = a[0].integer_value(), db = b[0].integer_value();
    if (da != db) return da < db;
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k] != b[k]) return lex_less(a[k], b[k]);
    return false;
  });

  // exact row orthonormality
  for (int i = 0; i < T.num_irr(); ++i)
    for (int j = i; j < T.num_irr(); ++j) {
      CycInt s;
      for (int k = 0; k < r; ++k)
        s = s + i64(G.class_size(k)) * (T.irr_[size_t(i)][size_t(k)] *
                                        T.irr_[size_t(j)][size_t(k)].conj());
      require(s == CycInt::integer(i == j ? i64(G.order()) : 0), "internal",
              "row orthogonality failed");
    }
  return T;
}

/// Standard inner product of class functions, exact.
inline CycInt inner_product(const CharTable& T, const ClassFn& a, const ClassFn& b) {
  require(a.size() == b.size() && int(a.size()) == T.num_classes(), "bad_input",
          "class function length mismatch");
  const Group& G = T.group();
  CycInt s;
  for (int k = 0; k < T.num_classes(); ++k)
    s = s + i64(G.class_size(k)) * (a[size_t(k)] * b[size_t(k)].conj());
  return s.divexact(i64(G.order()));
}

/// Induction of a class function along H <= G (fusion by class membership).
/// Exactness of the division is asserted; virtual characters always pass.
inline ClassFn induce_classfn(const Group& H, const ClassFn& phi, const Group& G) {
  require(int(phi.size()) == H.num_classes(), "bad_input", "class function length mismatch");
  std::vector<int> fus = class_fusion(H, G);
  ClassFn out(size_t(G.num_classes()));
  for (int k = 0; k < G.num_classes(); ++k) {
    CycInt s;
    for (int c = 0; c < H.num_classes(); ++c)
      if (fus[size_t(c)] == k) s = s + i64(H.class_size(c)) * phi[size_t(c)];
    out[size_t(k)] = (i64(G.centralizer_order(k)) * s).divexact(i64(H.order()));
  }
  return out;
}

inline ClassFn restrict_classfn(const Group& H, const ClassFn& chi, const Group& G) {
  std::vector<int> fus = class_fusion(H, G);
  ClassFn out(size_t(H.num_classes()));
  for (int c = 0; c < H.num_classes(); ++c) out[size_t(c)] = chi[size_t(fus[size_t(c)])];
  return out;
}

inline ClassFn trivial_character(const CharTable& T) {
  return ClassFn(size_t(T.num_classes()), CycInt::integer(1));
}

/// Partition of Irr into p-blocks with defects.
struct BlockPartition {
  int p = 0;
  std::vector<std::vector<int>> blocks;  // irreducible indices, canonical order
  std::vector<int> defects;
  int block_of_irr(int i) const {
    for (size_t b = 0; b < blocks.size(); ++b)
      for (int j : blocks[b])
        if (j == i) return int(b);
    fail("internal", "character not in any block");
  }
};

inline int valuation(i64 n, int p) {
  require(n != 0, "bad_input", "valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Central characters omega_chi(C) = |C| chi(g_C) / chi(1), reduced modulo the
/// canonical place over p; characters land in one block exactly when all
/// their reductions agree.
inline BlockPartition p_blocks(const CharTable& T, int p) {
  const Group& G = T.group();
  int r = T.num_classes();
  std::vector<const Field*> fields(size_t(r), nullptr);
  for (int k = 0; k < r; ++k) fields[size_t(k)] = &place_field(p, G.class_element_order(k));
  std::vector<std::vector<u32>> sig;
  for (int i = 0; i < T.num_irr(); ++i) {
    std::vector<u32> s(size_t(r), 0);
    i64 deg = T.degree(i);
    for (int k = 0; k < r; ++k) {
      CycInt omega = (i64(G.class_size(k)) * T.irr(i)[size_t(k)]).divexact(deg);
      s[size_t(k)] = place_image(omega, *fields[size_t(k)]);
    }
    sig.push_back(std::move(s));
  }
  BlockPartition bp;
  bp.p = p;
  std::vector<int> assigned(size_t(T.num_irr()), -1);
  for (int i = 0; i < T.num_irr(); ++i) {
    if (assigned[size_t(i)] >= 0) continue;
    std::vector<int> blk{i};
    assigned[size_t(i)] = int(bp.blocks.size());
    for (int j = i + 1; j < T.num_irr(); ++j)
      if (assigned[size_t(j)] < 0 && sig[size_t(j)] == sig[size_t(i)]) {
        blk.push_back(j);
        assigned[size_t(j)] = int(bp.blocks.size());
      }
    bp.blocks.push_back(std::move(blk));
  }
  int vg = valuation(i64(G.order()), p);
  for (auto& blk : bp.blocks) {
    int mind = vg;
    for (int i : blk) mind = std::min(mind, valuation(T.degree(i), p));
    bp.defects.push_back(vg - mind);
  }
  return bp;
}

/// Projection of a class function onto the span of a block's irreducibles.
inline ClassFn block_project(const CharTable& T, const ClassFn& phi, const std::vector<int>& block) {
  ClassFn out(size_t(T.num_classes()));
  for (int i : block) {
    CycInt c = inner_product(T, phi, T.irr(i));
    for (int k = 0; k < T.num_classes(); ++k) out[size_t(k)] = out[size_t(k)] + c * T.irr(i)[size_t(k)];
  }
  return out;
}

}  // namespace blockbench
