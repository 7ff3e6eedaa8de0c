#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blockbench/chartab.hpp"
#include "blockbench/linalg.hpp"
#include "blockbench/perm.hpp"

namespace blockbench {

/// A right kG-module given by one action matrix per group generator.
/// Vectors are rows; g acts by v -> v * action[g]. Permutation modules carry
/// their basis action so the Brauer construction can see fixed points.
class GModule {
 public:
  GModule(const Group& G, const Field& F, std::vector<Mat> action)
      : G_(&G), F_(&F), action_(std::move(action)) {
    require(action_.size() == G.gens().size(), "bad_input",
            "need one action matrix per generator");
    dim_ = action_.empty() ? 0 : action_[0].rows();
    for (const Mat& m : action_)
      require(m.rows() == dim_ && m.cols() == dim_, "bad_input", "action matrices must be square");
  }
  GModule(Group&&, const Field&, std::vector<Mat>) = delete;  // keeps a reference

  const Group& group() const { return *G_; }
  const Field& field() const { return *F_; }
  int dim() const { return dim_; }
  const std::vector<Mat>& action() const { return action_; }
  const Mat& gen_action(int i) const { return action_[size_t(i)]; }

  void set_perm_basis(std::vector<Perm> basis_action) { perm_basis_ = std::move(basis_action); }
  bool has_perm_basis() const { return !perm_basis_.empty(); }
  const std::vector<Perm>& perm_basis() const { return perm_basis_; }

  /// rho(g) for an arbitrary element, evaluated along the BFS word tree.
  Mat element_matrix(u32 idx) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(idx);
      if (it != cache_.end()) return it->second;
    }
    Mat m;
    auto [parent, gi] = G_->word_step(idx);
    if (parent < 0) {
      m = Mat::identity(*F_, dim_);
    } else {
      m = element_matrix(u32(parent)) * action_[size_t(gi)];
    }
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(idx, m);
    return m;
  }
  Mat element_matrix(const Perm& g) const {
    i64 idx = G_->index_of(g);
    require(idx >= 0, "bad_input", "element not in the acting group");
    return element_matrix(u32(idx));
  }

  /// Submodule on an echelonized invariant basis (rows), as a fresh module.
  GModule submodule(const Mat& basis) const {
    std::vector<Mat> act;
    CoordBasis cb(*F_, dim_);
    for (int i = 0; i < basis.rows(); ++i) cb.insert(basis.row_vec(i));
    for (const Mat& g : action_) {
      Mat a(*F_, basis.rows(), basis.rows());
      for (int i = 0; i < basis.rows(); ++i) {
        auto coords = cb.coords(vec_mat(*F_, basis.row_vec(i), g));
        require(coords.has_value(), "bad_input", "basis is not invariant");
        for (int j = 0; j < basis.rows(); ++j) a.at(i, j) = (*coords)[size_t(j)];
      }
      act.push_back(std::move(a));
    }
    return GModule(*G_, *F_, std::move(act));
  }

  /// Quotient by the submodule spanned by basis (rows).
  GModule quotient(const Mat& basis) const {
    Echelon e = echelonize(basis);
    std::vector<char> is_pivot(size_t(dim_), 0);
    for (int c : e.pivots) is_pivot[size_t(c)] = 1;
    std::vector<int> comp;  // complement coordinates
    for (int c = 0; c < dim_; ++c)
      if (!is_pivot[size_t(c)]) comp.push_back(c);
    int qd = int(comp.size());
    // reduce a vector mod the submodule, then read complement coordinates
    auto project = [&](Vec v) {
      for (int i = 0; i < e.rank; ++i) {
        u8 c = v[size_t(e.pivots[size_t(i)])];
        if (!c) continue;
        const u8* crow = F_->mul_row(c);
        for (int j = 0; j < dim_; ++j) v[size_t(j)] = u8(F_->sub(v[size_t(j)], crow[e.rref.at(i, j)]));
      }
      Vec out(size_t(qd), 0);
      for (int j = 0; j < qd; ++j) out[size_t(j)] = v[size_t(comp[size_t(j)])];
      return out;
    };
    std::vector<Mat> act;
    for (const Mat& g : action_) {
      Mat a(*F_, qd, qd);
      for (int i = 0; i < qd; ++i) {
        Vec unit(size_t(dim_), 0);
        unit[size_t(comp[size_t(i)])] = 1;
        Vec img = project(vec_mat(*F_, unit, g));
        for (int j = 0; j < qd; ++j) a.at(i, j) = img[size_t(j)];
      }
      act.push_back(std::move(a));
    }
    return GModule(*G_, *F_, std::move(act));
  }

  /// k-dual: g acts by rho(g^{-1})^T.
  GModule dual() const {
    std::vector<Mat> act;
    for (const Mat& g : action_) act.push_back(inverse(g).transpose());
    return GModule(*G_, *F_, std::move(act));
  }

  /// Restriction along H <= G (H elements evaluated through the word tree).
  GModule restrict_to(const Group& H) const {
    std::vector<Mat> act;
    for (const Perm& h : H.gens()) act.push_back(element_matrix(h));
    GModule R(H, *F_, std::move(act));
    if (has_perm_basis()) {
      std::vector<Perm> pb;
      for (const Perm& h : H.gens()) {
        i64 idx = G_->index_of(h);
        pb.push_back(perm_action_of(u32(idx)));
      }
      R.set_perm_basis(std::move(pb));
    }
    return R;
  }

  /// Basis permutation realized by an arbitrary element (perm modules only).
  Perm perm_action_of(u32 idx) const {
    require(has_perm_basis(), "bad_input", "module has no permutation basis");
    auto [parent, gi] = G_->word_step(idx);
    if (parent < 0) return perm_identity(dim_);
    return perm_mul(perm_action_of(u32(parent)), perm_basis_[size_t(gi)]);
  }

 private:
  const Group* G_;
  const Field* F_;
  int dim_;
  std::vector<Mat> action_;
  std::vector<Perm> perm_basis_;
  mutable std::map<u32, Mat> cache_;
  mutable std::mutex mu_;
};

inline Mat perm_to_mat(const Field& F, const Perm& p) {
  Mat m(F, int(p.size()), int(p.size()));
  for (size_t i = 0; i < p.size(); ++i) m.at(int(i), int(p[i])) = 1;
  return m;
}

/// Natural permutation module on the group's points.
inline GModule natural_module(const Group& G, const Field& F) {
  require(u64(G.degree()) <= caps().perm_module_degree, "cap", "permutation degree cap");
  std::vector<Mat> act;
  std::vector<Perm> pb;
  for (const Perm& g : G.gens()) {
    act.push_back(perm_to_mat(F, g));
    pb.push_back(g);
  }
  GModule M(G, F, std::move(act));
  M.set_perm_basis(std::move(pb));
  return M;
}

/// Permutation module on the right cosets of H.
inline GModule coset_module(const Group& G, const Group& H, const Field& F) {
  std::vector<u32> reps = transversal(G, H);
  require(u64(reps.size()) <= caps().perm_module_degree, "cap", "permutation degree cap");
  int n = int(reps.size());
  // coset lookup: element index -> coset number
  std::vector<int> coset_of(G.order(), -1);
  for (int i = 0; i < n; ++i)
    for (const Perm& h : H.elements())
      coset_of[size_t(G.index_of(perm_mul(h, G.element(reps[size_t(i)]))))] = i;
  std::vector<Mat> act;
  std::vector<Perm> pb;
  for (const Perm& g : G.gens()) {
    Perm p(size_t(n), 0);
    for (int i = 0; i < n; ++i) {
      Perm tg = perm_mul(G.element(reps[size_t(i)]), g);
      p[size_t(i)] = u8(coset_of[size_t(G.index_of(tg))]);
    }
    act.push_back(perm_to_mat(F, p));
    pb.push_back(p);
  }
  GModule M(G, F, std::move(act));
  M.set_perm_basis(std::move(pb));
  return M;
}

inline GModule regular_module(const Group& G, const Field& F) {
  Group triv(G.degree(), {}, "1");
  return coset_module(G, triv, F);
}

inline GModule trivial_module(const Group& G, const Field& F) {
  std::vector<Mat> act(G.gens().size(), Mat::identity(F, 1));
  GModule M(G, F, std::move(act));
  M.set_perm_basis(std::vector<Perm>(G.gens().size(), perm_identity(1)));
  return M;
}

inline GModule direct_sum(const GModule& A, const GModule& B) {
  require(&A.group() == &B.group() && &A.field() == &B.field(), "bad_input",
          "direct sum needs one group and one field");
  const Field& F = A.field();
  std::vector<Mat> act;
  for (size_t i = 0; i < A.action().size(); ++i) {
    Mat m(F, A.dim() + B.dim(), A.dim() + B.dim());
    for (int r = 0; r < A.dim(); ++r)
      for (int c = 0; c < A.dim(); ++c) m.at(r, c) = A.gen_action(int(i)).at(r, c);
    for (int r = 0; r < B.dim(); ++r)
      for (int c = 0; c < B.dim(); ++c) m.at(A.dim() + r, A.dim() + c) = B.gen_action(int(i)).at(r, c);
    act.push_back(std::move(m));
  }
  return GModule(A.group(), F, std::move(act));
}

// ---------------------------------------------------------------------------
// Homomorphism spaces by the standard-basis method: a hom out of M is pinned
// down by the images of a few module generators of M, subject to the linear
// relations recorded while spinning them up.

inline std::vector<Mat> hom_space(const GModule& M, const GModule& N) {
  require(&M.group() == &N.group() && &M.field() == &N.field(), "bad_input",
          "hom space needs one group and one field");
  const Field& F = M.field();
  int m = M.dim(), n = N.dim();
  require(u64(m) * u64(n) <= caps().hom_product, "cap", "hom-space solver cap");
  if (m == 0 || n == 0) return {};
  int gcount = int(M.action().size());

  // spin up a basis of M from greedily chosen seeds, recording the tree
  CoordBasis basis(F, m);
  std::vector<int> seed_of, parent_of, gen_of;
  std::vector<int> seeds;
  {
    std::vector<std::pair<int, Vec>> work;  // (basis index, vector)
    for (int e = 0; e < m; ++e) {
      Vec unit(size_t(m), 0);
      unit[size_t(e)] = 1;
      if (!basis.insert(unit)) continue;
      int root = int(seed_of.size());
      seeds.push_back(root);
      seed_of.push_back(int(seeds.size()) - 1);
      parent_of.push_back(-1);
      gen_of.push_back(-1);
      work.push_back({root, unit});
      for (size_t w = 0; w < work.size(); ++w) {
        auto [bi, v] = work[w];
        for (int gi = 0; gi < gcount; ++gi) {
          Vec img = vec_mat(F, v, M.gen_action(gi));
          if (basis.insert(img)) {
            seed_of.push_back(seed_of[size_t(bi)]);
            parent_of.push_back(bi);
            gen_of.push_back(gi);
            work.push_back({int(seed_of.size()) - 1, img});
          }
        }
      }
      work.clear();
      if (basis.dim() == m) break;
    }
  }
  int s = int(seeds.size());

  // symbolic images U_i with u_i = w_{seed(i)} * U_i
  std::vector<Mat> U(size_t(m));
  for (size_t i = 0; i < U.size(); ++i) {
    if (parent_of[i] < 0)
      U[i] = Mat::identity(F, n);
    else
      U[i] = U[size_t(parent_of[i])] * N.gen_action(gen_of[i]);
  }

  // linear constraints on the stacked unknown W in F^{s*n}
  CoordBasis constraints(F, s * n);
  const std::vector<Vec>& brows = basis.original_rows();
  for (int i = 0; i < m; ++i) {
    for (int gi = 0; gi < gcount; ++gi) {
      // tree edges hold by construction
      bool is_tree = false;
      for (int j = 0; j < m; ++j)
        if (parent_of[size_t(j)] == i && gen_of[size_t(j)] == gi) { is_tree = true; break; }
      if (is_tree) continue;
      auto lam = basis.coords(vec_mat(F, brows[size_t(i)], M.gen_action(gi)));
      require(lam.has_value(), "internal", "spun basis is not closed");
      // D = U_i * rho_N(g) placed at block seed(i), minus sum lam_j U_j at block seed(j)
      Mat D(F, s * n, n);
      Mat Ui_g = U[size_t(i)] * N.gen_action(gi);
      int blk = seed_of[size_t(i)] * n;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) D.at(blk + r, c) = Ui_g.at(r, c);
      for (int j = 0; j < m; ++j) {
        u8 l = (*lam)[size_t(j)];
        if (!l) continue;
        const u8* lrow = F.mul_row(l);
        int bj = seed_of[size_t(j)] * n;
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            D.at(bj + r, c) = u8(F.sub(D.at(bj + r, c), lrow[U[size_t(j)].at(r, c)]));
      }
      for (int c = 0; c < n; ++c) {
        Vec row(size_t(s) * size_t(n), 0);
        for (int r = 0; r < s * n; ++r) row[size_t(r)] = D.at(r, c);
        constraints.insert(row);
      }
    }
  }

  // solutions: nullspace of the constraint matrix
  Mat cons = constraints.dim() ? constraints.basis_matrix() : Mat(F, 0, s * n);
  Mat sols = cons.rows() ? right_kernel(cons) : Mat::identity(F, s * n);
  if (!cons.rows()) sols = echelonize(Mat::identity(F, s * n)).rref;

  // coordinates of the standard basis of M over the spun basis
  Mat coord(F, m, m);
  for (int k = 0; k < m; ++k) {
    Vec unit(size_t(m), 0);
    unit[size_t(k)] = 1;
    auto a = basis.coords(unit);
    require(a.has_value(), "internal", "basis incomplete");
    for (int j = 0; j < m; ++j) coord.at(k, j) = (*a)[size_t(j)];
  }

  std::vector<Mat> homs;
  for (int t = 0; t < sols.rows(); ++t) {
    // u-stack: row i = w_{seed(i)} * U_i
    Mat ustack(F, m, n);
    for (int i = 0; i < m; ++i) {
      Vec w(size_t(n), 0);
      int blk = seed_of[size_t(i)] * n;
      for (int c = 0; c < n; ++c) w[size_t(c)] = sols.at(t, blk + c);
      Vec ui = vec_mat(F, w, U[size_t(i)]);
      for (int c = 0; c < n; ++c) ustack.at(i, c) = ui[size_t(c)];
    }
    homs.push_back(coord * ustack);
  }
  return homs;
}

inline int hom_dim(const GModule& M, const GModule& N) { return int(hom_space(M, N).size()); }

/// Random algebra element: a short sum of short products of the generator
/// matrices with coefficients cycling over the prime field.
inline Mat random_word(const GModule& M, Rng& rng) {
  const Field& F = M.field();
  int terms = 2 + int(rng.below(3));
  Mat acc(F, M.dim(), M.dim());
  u32 coeff = 1;
  for (int t = 0; t < terms; ++t) {
    int len = 1 + int(rng.below(4));
    Mat w = Mat::identity(F, M.dim());
    for (int i = 0; i < len; ++i) w = w * M.gen_action(int(rng.below(u32(M.action().size()))));
    acc = acc + w.scaled(coeff);
    coeff = coeff % u32(F.p() - 1) + 1;  // cycle 1..p-1
  }
  return acc;
}

/// An invertible element of the span, if one can be found (seeded search).
inline std::optional<Mat> invertible_in_span(const std::vector<Mat>& homs, Rng& rng, int tries = 64) {
  if (homs.empty()) return std::nullopt;
  const Field& F = homs[0].field();
  auto invertible = [&](const Mat& h) {
    return h.rows() == h.cols() && echelonize(h).rank == h.rows();
  };
  for (const Mat& h : homs)
    if (invertible(h)) return h;
  for (int t = 0; t < tries; ++t) {
    Mat c(F, homs[0].rows(), homs[0].cols());
    for (const Mat& h : homs) c = c + h.scaled(1 + rng.below(F.q() - 1));
    if (invertible(c)) return c;
  }
  return std::nullopt;
}

/// Isomorphism test; returns an explicit intertwiner T with
/// T rho_N(g) = rho_M(g) T on success. Decisive for modules whose nonzero
/// homs are invertible (simples, and conclusively negative whenever dims or
/// hom spaces rule an isomorphism out).
inline std::optional<Mat> find_isomorphism(const GModule& M, const GModule& N, u64 seed = 1) {
  if (M.dim() != N.dim()) return std::nullopt;
  if (M.dim() == 0) return Mat(M.field(), 0, 0);
  std::vector<Mat> homs = hom_space(M, N);
  Rng rng(seed ^ 0x15obe);
  return invertible_in_span(homs, rng);
}

inline bool is_isomorphic(const GModule& M, const GModule& N, u64 seed = 1) {
  return find_isomorphism(M, N, seed).has_value();
}

// ---------------------------------------------------------------------------
// Chop: composition factors by the Norton irreducibility test.

class Category;

namespace chop_detail {

struct SpinOut {
  Mat basis;  // echelonized basis of a proper invariant subspace, or empty
  bool proper = false;
};

inline SpinOut try_split(const GModule& M, const Mat& kernel, bool transposed) {
  const Field& F = M.field();
  std::vector<Mat> mats;
  for (const Mat& g : M.action()) mats.push_back(transposed ? g.transpose() : g);
  for (int r = 0; r < kernel.rows(); ++r) {
    Mat w = spin({kernel.row_vec(r)}, mats);
    if (w.rows() > 0 && w.rows() < M.dim()) {
      if (!transposed) return {w, true};
      // perp of a transposed-invariant subspace is invariant
      return {left_nullspace(w.transpose()), true};
    }
  }
  return {Mat(), false};
}

}  // namespace chop_detail

/// Context for module computations over a fixed (group, field): the registry
/// of discovered simple modules, their canonical labels, the PIMs, and the
/// seeded randomness all live here.
class Category {
 public:
  Category(const Group& G, const Field& F, u64 seed = 0)
      : G_(&G), F_(&F), seed_(seed), rng_(seed * 0x9e3779b97f4a7c15ull + 0x6a09e667) {}
  Category(Group&&, const Field&, u64) = delete;

  const Group& group() const { return *G_; }
  const Field& field() const { return *F_; }
  u64 seed() const { return seed_; }
  Rng& rng() { return rng_; }

  int num_simples() const { return int(simples_.size()); }
  const GModule& simple(int id) const { return simples_[size_t(id)]; }

  /// Composition factors as a sorted flat list of simple ids (with repeats).
  std::vector<int> chop(const GModule& M) {
    std::vector<int> out;
    chop_into(M, out);
    std::sort(out.begin(), out.end());
    i64 total = 0;
    for (int id : out) total += simples_[size_t(id)].dim();
    require(total == M.dim(), "internal", "chop lost dimensions");
    return out;
  }

  int register_simple(const GModule& S) {
    for (int i = 0; i < num_simples(); ++i) {
      if (simples_[size_t(i)].dim() != S.dim()) continue;
      if (!hom_space(simples_[size_t(i)], S).empty()) return i;  // Schur: nonzero hom = iso
    }
    simples_.push_back(S);
    labels_.clear();
    return num_simples() - 1;
  }

  /// Chop the regular module so the registry provably holds every simple.
  void ensure_all_simples() {
    if (all_simples_) return;
    require(G_->order() <= 2000, "cap", "regular-module chop wants |G| <= 2000");
    GModule reg = regular_module(*G_, *F_);
    chop(reg);
    all_simples_ = true;
    labels_.clear();
  }

  /// Canonical labels ("1a", "2b", ...): dimension ascending, self-dual
  /// modules first, then Brauer character descending in the exact
  /// lexicographic order. The dual pair 2b/2c lands so that 2b carries the
  /// +sqrt(-2) Brauer value at the earlier class of order 8.
  const std::vector<std::string>& labels() {
    if (!labels_.empty()) return labels_;
    ensure_all_simples();
    int k = num_simples();
    std::vector<int> order(size_t(k));
    for (int i = 0; i < k; ++i) order[size_t(i)] = i;
    std::vector<ClassFn> bchars;
    std::vector<bool> selfdual;
    for (int i = 0; i < k; ++i) {
      bchars.push_back(brauer_character(simples_[size_t(i)]));
      GModule d = simples_[size_t(i)].dual();
      selfdual.push_back(!hom_space(simples_[size_t(i)], d).empty());
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (simples_[size_t(a)].dim() != simples_[size_t(b)].dim())
        return simples_[size_t(a)].dim() < simples_[size_t(b)].dim();
      if (selfdual[size_t(a)] != selfdual[size_t(b)]) return selfdual[size_t(a)];
      for (size_t c = 0; c < bchars[size_t(a)].size(); ++c)
        if (bchars[size_t(a)][c] != bchars[size_t(b)][c])
          return lex_less(bchars[size_t(b)][c], bchars[size_t(a)][c]);
      return a < b;
    });
    labels_.assign(size_t(k), "");
    int last_dim = -1;
    char letter = 'a';
    for (int i = 0; i < k; ++i) {
      int id = order[size_t(i)];
      int d = simples_[size_t(id)].dim();
      letter = (d == last_dim) ? char(letter + 1) : 'a';
      last_dim = d;
      labels_[size_t(id)] = std::to_string(d) + letter;
    }
    return labels_;
  }
  const std::string& label(int id) {
    labels();
    return labels_[size_t(id)];
  }

  /// Brauer character of a module on the p-regular classes (p = field
  /// characteristic), canonical class order. Eigenvalue multiplicities are
  /// read off as kernel dimensions over a splitting extension.
  ClassFn brauer_character(const GModule& M) {
    int p = F_->p();
    std::vector<int> regs;
    for (int c = 0; c < G_->num_classes(); ++c)
      if (G_->class_element_order(c) % p != 0) regs.push_back(c);
    ClassFn out;
    for (int c : regs) {
      int m = G_->class_element_order(c);
      int kk = std::lcm(F_->k(), mul_order_mod(p, m));
      const Field& E = Field::get(p, kk);
      require(E.q() <= 256, "cap", "Brauer character needs a splitting field with q <= 256");
      Mat A = M.element_matrix(G_->class_rep_index(c));
      Mat AE(E, M.dim(), M.dim());
      for (int i = 0; i < M.dim(); ++i)
        for (int j = 0; j < M.dim(); ++j) AE.at(i, j) = u8(F_->embed_to(E, A.at(i, j)));
      u32 theta = E.exp((E.q() - 1) / u32(m));
      CycInt val;
      int total = 0;
      u32 lam = 1;
      for (int j = 0; j < m; ++j) {
        Mat shifted = AE - Mat::identity(E, M.dim()).scaled(lam);
        int mu = M.dim() - echelonize(shifted).rank;
        total += mu;
        if (mu) val = val + i64(mu) * CycInt::root(m, j);
        lam = E.mul(lam, theta);
      }
      require(total == M.dim(), "internal", "p-regular element failed to diagonalize");
      out.push_back(std::move(val));
    }
    return out;
  }

  /// Indecomposable direct summands (repeats listed separately), by Fitting
  /// splits along random endomorphisms; a module is declared indecomposable
  /// after the endomorphism sweep finds no split.
  std::vector<GModule> decompose(const GModule& M) {
    std::vector<GModule> out;
    if (M.dim() == 0) return out;
    std::vector<Mat> endo = hom_space(M, M);
    if (endo.size() == 1) {
      out.push_back(M);
      return out;
    }
    const Field& F = *F_;
    int tries = 48 + 4 * int(endo.size());
    for (int t = 0; t < int(endo.size()) + tries; ++t) {
      Mat theta(F, M.dim(), M.dim());
      if (t < int(endo.size())) {
        theta = endo[size_t(t)];
      } else {
        for (const Mat& h : endo)
          if (rng_.below(3)) theta = theta + h.scaled(1 + rng_.below(F.q() - 1));
      }
      FPoly cp = char_poly(theta);
      auto factors = factor_poly(cp);
      if (factors.size() < 2) continue;
      // primary decomposition: generalized kernels of each factor
      std::vector<GModule> parts;
      int covered = 0;
      bool ok = true;
      for (auto& [f, mult] : factors) {
        Mat fm = f.eval_mat(theta);
        Mat power = fm.pow(u64(mult));
        Mat ker = left_nullspace(power);
        if (ker.rows() == 0 || ker.rows() == M.dim()) { ok = false; break; }
        covered += ker.rows();
        parts.push_back(M.submodule(echelonize(ker).rref));
      }
      if (!ok || covered != M.dim()) continue;
      for (GModule& part : parts)
        for (GModule& piece : decompose(part)) out.push_back(std::move(piece));
      return out;
    }
    out.push_back(M);  // no split found: indecomposable over this field
    return out;
  }

  /// PIMs: indecomposable summands of the regular module, deduplicated; the
  /// i-th entry is the projective cover of simple i.
  const std::vector<GModule>& pims() {
    if (!pims_.empty()) return pims_;
    ensure_all_simples();
    GModule reg = regular_module(*G_, *F_);
    std::vector<GModule> parts = decompose(reg);
    std::vector<std::optional<GModule>> by_simple(size_t(num_simples()));
    for (GModule& part : parts) {
      int head = head_simple(part);
      if (!by_simple[size_t(head)].has_value()) by_simple[size_t(head)] = std::move(part);
    }
    for (int i = 0; i < num_simples(); ++i) {
      require(by_simple[size_t(i)].has_value(), "internal", "missing projective cover");
      pims_.push_back(std::move(*by_simple[size_t(i)]));
    }
    return pims_;
  }
  const GModule& pim(int simple_id) {
    pims();
    return pims_[size_t(simple_id)];
  }

  /// The simple head of a module with simple head (e.g. a PIM).
  int head_simple(const GModule& M) {
    Mat rad = radical_subspace(M);
    GModule head = M.quotient(rad);
    std::vector<int> f = chop(head);
    require(!f.empty(), "internal", "module has empty head");
    for (size_t i = 1; i < f.size(); ++i)
      require(f[i] == f[0], "bad_input", "head is not simple-isotypic");
    return f[0];
  }

  /// rad(M): intersection of the kernels of all homs to simple modules.
  Mat radical_subspace(const GModule& M) {
    ensure_all_simples();
    const Field& F = *F_;
    std::vector<Mat> cols;
    int total_cols = 0;
    for (int s = 0; s < num_simples(); ++s) {
      for (Mat& h : hom_space(M, simples_[size_t(s)])) {
        total_cols += h.cols();
        cols.push_back(std::move(h));
      }
    }
    if (cols.empty()) return echelonize(Mat::identity(F, M.dim())).rref;
    Mat stacked(F, M.dim(), total_cols);
    int off = 0;
    for (const Mat& h : cols) {
      for (int i = 0; i < M.dim(); ++i)
        for (int j = 0; j < h.cols(); ++j) stacked.at(i, off + j) = h.at(i, j);
      off += h.cols();
    }
    return left_nullspace(stacked);
  }

  /// soc(M): sum of the images of all homs from simple modules.
  Mat socle_subspace(const GModule& M) {
    ensure_all_simples();
    std::vector<Vec> rows;
    for (int s = 0; s < num_simples(); ++s)
      for (const Mat& h : hom_space(simples_[size_t(s)], M))
        for (int r = 0; r < h.rows(); ++r) rows.push_back(h.row_vec(r));
    if (rows.empty()) return Mat(*F_, 0, M.dim());
    return echelonize(Mat::from_rows(*F_, rows, M.dim())).rref;
  }

 private:
  void chop_into(const GModule& M, std::vector<int>& out) {
    if (M.dim() == 0) return;
    if (M.dim() == 1) {
      out.push_back(register_simple(M));
      return;
    }
    for (int attempt = 0; attempt < caps().chop_tries; ++attempt) {
      Mat theta = random_word(M, rng_);
      FPoly cp = char_poly(theta);
      auto factors = factor_poly(cp);
      for (auto& [f, mult] : factors) {
        Mat fm = f.eval_mat(theta);
        Mat ker = left_nullspace(fm);
        if (ker.rows() == 0) continue;
        chop_detail::SpinOut sub = chop_detail::try_split(M, ker, false);
        if (sub.proper) {
          chop_into(M.submodule(sub.basis), out);
          chop_into(M.quotient(sub.basis), out);
          return;
        }
        if (ker.rows() == f.deg()) {
          // Norton: seed vectors span everything; check the transposed side
          Mat kert = left_nullspace(fm.transpose());
          chop_detail::SpinOut subt = chop_detail::try_split(M, kert, true);
          if (subt.proper) {
            chop_into(M.submodule(subt.basis), out);
            chop_into(M.quotient(subt.basis), out);
            return;
          }
          out.push_back(register_simple(M));
          return;
        }
      }
    }
    fail("internal", "chop exhausted its word budget; raise caps().chop_tries");
  }

  const Group* G_;
  const Field* F_;
  u64 seed_;
  Rng rng_;
  std::vector<GModule> simples_;
  std::vector<std::string> labels_;
  std::vector<GModule> pims_;
  bool all_simples_ = false;
};

/// Multiplicity of each simple in the chop of M, indexed by simple id.
inline std::vector<int> chop_multiplicities(Category& cat, const GModule& M) {
  std::vector<int> flat = cat.chop(M);
  std::vector<int> mult(size_t(cat.num_simples()), 0);
  for (int id : flat) ++mult[size_t(id)];
  return mult;
}

// ---------------------------------------------------------------------------
// Loewy machinery.

struct LoewyData {
  std::vector<std::vector<int>> radical_layers;  // sorted simple ids, top first
  std::vector<std::vector<int>> socle_layers;    // sorted simple ids, soc_1 first
  int loewy_length = 0;
};

/// Radical and socle series with layers labeled by chop.
inline LoewyData radical_socle(Category& cat, const GModule& M) {
  LoewyData out;
  // radical series: iterate rad on nested submodules, tracked in M-coords
  {
    GModule cur = M;  // current rad^i as an abstract module
    std::vector<GModule> chain{M};
    while (chain.back().dim() > 0) {
      Mat rad = cat.radical_subspace(chain.back());
      GModule layer = chain.back().quotient(rad);
      out.radical_layers.push_back(cat.chop(layer));
      if (rad.rows() == 0) break;
      chain.push_back(chain.back().submodule(rad));
    }
    out.loewy_length = int(out.radical_layers.size());
    (void)cur;
  }
  // socle series: socles of successive quotients
  {
    GModule cur = M;
    while (cur.dim() > 0) {
      Mat soc = cat.socle_subspace(cur);
      out.socle_layers.push_back(cat.chop(cur.submodule(soc)));
      if (soc.rows() == cur.dim()) break;
      cur = cur.quotient(soc);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relative projectivity, vertices, stable homs.

/// Higman's criterion: M is relatively H-projective iff the identity lies in
/// the image of the relative trace map on End_{kH}(M).
inline bool is_rel_projective(const GModule& M, const Group& H) {
  const Group& G = M.group();
  const Field& F = M.field();
  if (H.order() == G.order()) return true;
  if (M.dim() == 0) return true;
  int n = M.dim();
  std::vector<u32> reps = transversal(G, H);
  std::vector<Mat> t_mats, tinv_mats;
  for (u32 r : reps) {
    t_mats.push_back(M.element_matrix(r));
    tinv_mats.push_back(M.element_matrix(perm_inv(G.element(r))));
  }
  auto rel_trace = [&](const Mat& phi) {
    Mat acc(F, n, n);
    for (size_t t = 0; t < reps.size(); ++t) acc = acc + tinv_mats[t] * phi * t_mats[t];
    return acc;
  };
  CoordBasis image(F, n * n);
  auto add_and_check = [&](const Mat& tr) {
    Vec v(size_t(n) * size_t(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[size_t(i) * size_t(n) + size_t(j)] = tr.at(i, j);
    image.insert(v);
  };
  if (H.order() == 1) {
    // the trace image of the full matrix algebra, built from rank-one maps
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Mat tr(F, n, n);
        for (size_t t = 0; t < reps.size(); ++t) {
          const Mat& ti = tinv_mats[t];
          const Mat& tm = t_mats[t];
          for (int i = 0; i < n; ++i) {
            u8 left = ti.at(i, a);
            if (!left) continue;
            const u8* lrow = F.mul_row(left);
            for (int j = 0; j < n; ++j) tr.at(i, j) = u8(F.add(tr.at(i, j), lrow[tm.at(b, j)]));
          }
        }
        add_and_check(tr);
      }
  } else {
    GModule MH = M.restrict_to(H);
    for (const Mat& phi : hom_space(MH, MH)) add_and_check(rel_trace(phi));
  }
  Vec id(size_t(n) * size_t(n), 0);
  for (int i = 0; i < n; ++i) id[size_t(i) * size_t(n) + size_t(i)] = 1;
  return image.contains(id);
}

/// Vertex of an indecomposable module: a minimal p-subgroup V (up to
/// conjugacy) such that M is relatively V-projective.
inline Group vertex(Category& cat, const GModule& M) {
  require(cat.decompose(M).size() == 1, "bad_input", "vertex needs an indecomposable module");
  const Group& G = M.group();
  int p = M.field().p();
  std::vector<Group> cands = p_subgroups_up_to_conjugacy(G, p);
  for (Group& V : cands)
    if (is_rel_projective(M, V)) return std::move(V);
  fail("internal", "no vertex found (Sylow must always work)");
}

/// dim Hom - dim PHom, with PHom spanned by the maps factoring through the
/// projective cover of N.
inline int stable_hom_dim(Category& cat, const GModule& M, const GModule& N) {
  std::vector<Mat> homs = hom_space(M, N);
  if (homs.empty()) return 0;
  const Field& F = M.field();
  cat.pims();
  CoordBasis phom(F, M.dim() * N.dim());
  for (int s = 0; s < cat.num_simples(); ++s) {
    std::vector<Mat> to_n = hom_space(cat.pim(s), N);
    if (to_n.empty()) continue;
    std::vector<Mat> from_m = hom_space(M, cat.pim(s));
    for (const Mat& a : from_m)
      for (const Mat& b : to_n) {
        Mat c = a * b;
        Vec v(size_t(M.dim()) * size_t(N.dim()), 0);
        for (int i = 0; i < M.dim(); ++i)
          for (int j = 0; j < N.dim(); ++j) v[size_t(i) * size_t(N.dim()) + size_t(j)] = c.at(i, j);
        phom.insert(v);
      }
  }
  return int(homs.size()) - phom.dim();
}

// ---------------------------------------------------------------------------
// Submodule lattices.

struct Lattice {
  struct Node {
    Mat basis;  // echelonized rows
    int dim;
    bool local;  // image of a hom from a PIM
  };
  std::vector<Node> nodes;                 // sorted by (dim, basis bytes)
  std::vector<std::pair<int, int>> edges;  // covering pairs (smaller, larger)
};

/// Full submodule lattice: local submodules are the images of homs from the
/// projective covers (up to scalar), everything else is a sum of those.
inline Lattice submodule_lattice(Category& cat, const GModule& M) {
  const Field& F = M.field();
  std::vector<int> mult = chop_multiplicities(cat, M);
  int comp_len = 0;
  for (int m : mult) {
    comp_len += m;
    require(m <= caps().lattice_mult, "cap", "composition multiplicity above the lattice cap");
  }
  require(comp_len <= caps().lattice_length, "cap", "composition length above the lattice cap");
  cat.pims();

  auto key_of = [&](const Mat& b) {
    std::string s;
    s.reserve(size_t(b.rows()) * size_t(b.cols()));
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) s.push_back(char(b.at(i, j)));
    return s;
  };

  std::map<std::string, int> seen;
  Lattice lat;
  auto add_node = [&](Mat basis, bool local) -> int {
    Mat e = echelonize(std::move(basis)).rref;
    std::string key = key_of(e);
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (local) lat.nodes[size_t(it->second)].local = true;
      return it->second;
    }
    int id = int(lat.nodes.size());
    seen.emplace(std::move(key), id);
    lat.nodes.push_back({e, e.rows(), local});
    return id;
  };

  add_node(Mat(F, 0, M.dim()), false);  // zero
  // local submodules: images of homs P(S) -> M up to scalar
  for (int s = 0; s < cat.num_simples(); ++s) {
    if (mult[size_t(s)] == 0) continue;
    std::vector<Mat> homs = hom_space(cat.pim(s), M);
    int d = int(homs.size());
    if (d == 0) continue;
    // projective enumeration of coefficient tuples: first nonzero coeff = 1
    std::vector<u32> coef(size_t(d), 0);
    std::function<void(int, bool)> rec = [&](int pos, bool started) {
      if (pos == d) {
        if (!started) return;
        Mat img(F, cat.pim(s).dim(), M.dim());
        for (int i = 0; i < d; ++i)
          if (coef[size_t(i)]) img = img + homs[size_t(i)].scaled(coef[size_t(i)]);
        add_node(img, true);
        return;
      }
      if (!started) {
        coef[size_t(pos)] = 0;
        rec(pos + 1, false);
        coef[size_t(pos)] = 1;
        rec(pos + 1, true);
        coef[size_t(pos)] = 0;
      } else {
        for (u32 c = 0; c < F.q(); ++c) {
          coef[size_t(pos)] = c;
          rec(pos + 1, true);
        }
        coef[size_t(pos)] = 0;
      }
    };
    rec(0, false);
  }
  // closure under sums
  for (size_t a = 0; a < lat.nodes.size(); ++a)
    for (size_t b = a + 1; b < lat.nodes.size(); ++b) {
      if (lat.nodes[a].dim == 0 || lat.nodes[b].dim == 0) continue;
      std::vector<Vec> rows;
      for (int i = 0; i < lat.nodes[a].basis.rows(); ++i) rows.push_back(lat.nodes[a].basis.row_vec(i));
      for (int i = 0; i < lat.nodes[b].basis.rows(); ++i) rows.push_back(lat.nodes[b].basis.row_vec(i));
      add_node(Mat::from_rows(F, rows, M.dim()), false);
    }
  // sort nodes canonically and build covering edges
  std::vector<int> order(lat.nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (lat.nodes[size_t(a)].dim != lat.nodes[size_t(b)].dim)
      return lat.nodes[size_t(a)].dim < lat.nodes[size_t(b)].dim;
    return key_of(lat.nodes[size_t(a)].basis) < key_of(lat.nodes[size_t(b)].basis);
  });
  std::vector<Lattice::Node> sorted;
  for (int i : order) sorted.push_back(std::move(lat.nodes[size_t(i)]));
  lat.nodes = std::move(sorted);

  auto leq = [&](int a, int b) {
    if (lat.nodes[size_t(a)].dim > lat.nodes[size_t(b)].dim) return false;
    CoordBasis cb(F, M.dim());
    for (int i = 0; i < lat.nodes[size_t(b)].basis.rows(); ++i)
      cb.insert(lat.nodes[size_t(b)].basis.row_vec(i));
    for (int i = 0; i < lat.nodes[size_t(a)].basis.rows(); ++i)
      if (!cb.contains(lat.nodes[size_t(a)].basis.row_vec(i))) return false;
    return true;
  };
  int n = int(lat.nodes.size());
  std::vector<std::vector<char>> le(size_t(n), std::vector<char>(size_t(n), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && leq(a, b)) le[size_t(a)][size_t(b)] = 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!le[size_t(a)][size_t(b)]) continue;
      bool covering = true;
      for (int c = 0; c < n && covering; ++c)
        if (le[size_t(a)][size_t(c)] && le[size_t(c)][size_t(b)]) covering = false;
      if (covering) lat.edges.push_back({a, b});
    }
  return lat;
}

}  // namespace blockbench
