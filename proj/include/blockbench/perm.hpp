#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "blockbench/base.hpp"

namespace blockbench {

/// Permutation on {0, ..., degree-1}, stored as the image vector.
using Perm = std::vector<u8>;

inline Perm perm_identity(int n) {
  Perm p(size_t(n), 0);
  for (int i = 0; i < n; ++i) p[size_t(i)] = u8(i);
  return p;
}
/// a then b. With right actions throughout, this is the group product a*b.
inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}
inline Perm perm_inv(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = u8(i);
  return r;
}
inline bool perm_is_identity(const Perm& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}
inline int perm_order(const Perm& a) {
  int n = int(a.size());
  std::vector<char> seen(size_t(n), 0);
  i64 ord = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[size_t(i)]) continue;
    int len = 0, j = i;
    while (!seen[size_t(j)]) {
      seen[size_t(j)] = 1;
      j = a[size_t(j)];
      ++len;
    }
    ord = std::lcm(ord, i64(len));
  }
  return int(ord);
}
inline Perm perm_pow(Perm a, i64 e) {
  int ord = perm_order(a);
  e %= ord;
  if (e < 0) e += ord;
  Perm r = perm_identity(int(a.size()));
  while (e) {
    if (e & 1) r = perm_mul(r, a);
    a = perm_mul(a, a);
    e >>= 1;
  }
  return r;
}
inline Perm perm_conj(const Perm& x, const Perm& g) {  // g^-1 x g
  return perm_mul(perm_mul(perm_inv(g), x), g);
}

/// Factoradic (Lehmer) rank; fits u64 for degree <= 20.
inline u64 perm_rank(const Perm& p) {
  int n = int(p.size());
  require(n <= 20, "cap", "permutation ranking needs degree <= 20");
  u64 r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[size_t(j)] < p[size_t(i)]) ++smaller;
    r = r * u64(n - i) + u64(smaller);
  }
  return r;
}

inline u64 factorial_u64(int n) {
  u64 f = 1;
  for (int i = 2; i <= n; ++i) f *= u64(i);
  return f;
}

/// An enumerated permutation group: the full element list in BFS discovery
/// order (identity first), an index, a word tree over the generators, and the
/// conjugacy class data in a canonical order (element order, class size,
/// discovery). Immutable after construction; queries are thread-safe.
class Group {
 public:
  Group(int degree, std::vector<Perm> gens, std::string name = "")
      : degree_(degree), name_(std::move(name)) {
    for (Perm& g : gens) {
      require(int(g.size()) == degree, "bad_input", "generator degree mismatch");
      if (!perm_is_identity(g)) gens_.push_back(std::move(g));
    }
    if (gens_.empty()) gens_.push_back(perm_identity(degree));
    enumerate();
    classify();
  }

  int degree() const { return degree_; }
  const std::string& name() const { return name_; }
  u64 order() const { return elements_.size(); }
  const std::vector<Perm>& gens() const { return gens_; }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& element(u32 i) const { return elements_[i]; }

  i64 index_of(const Perm& p) const {
    u64 r = perm_rank(p);
    if (direct_.size()) {
      u32 v = direct_[r];
      return v == 0 ? -1 : i64(v) - 1;
    }
    auto it = index_.find(r);
    return it == index_.end() ? -1 : i64(it->second);
  }
  bool contains(const Perm& p) const {
    return int(p.size()) == degree_ && index_of(p) >= 0;
  }

  /// Word tree: elements_[i] = elements_[step(i).first] * gens_[step(i).second].
  std::pair<i64, int> word_step(u32 i) const { return {parent_[i], genidx_[i]}; }

  // -- conjugacy classes (canonical order) --
  int num_classes() const { return int(class_order_.size()); }
  int class_of_index(u32 elt_index) const { return canon_of_raw_[size_t(class_of_[elt_index])]; }
  int class_of(const Perm& p) const {
    i64 i = index_of(p);
    require(i >= 0, "bad_input", "element not in group");
    return class_of_index(u32(i));
  }
  u32 class_rep_index(int c) const { return raw_reps_[size_t(class_order_[size_t(c)])]; }
  const Perm& class_rep(int c) const { return elements_[class_rep_index(c)]; }
  u64 class_size(int c) const { return raw_sizes_[size_t(class_order_[size_t(c)])]; }
  int class_element_order(int c) const { return perm_order(class_rep(c)); }
  u64 centralizer_order(int c) const { return order() / class_size(c); }
  int class_of_inverse(int c) const { return class_of(perm_inv(class_rep(c))); }
  int class_of_power(int c, i64 t) const { return class_of(perm_pow(class_rep(c), t)); }
  int exponent() const {
    i64 e = 1;
    for (int c = 0; c < num_classes(); ++c) e = std::lcm(e, i64(class_element_order(c)));
    return int(e);
  }
  std::vector<u32> class_members(int c) const {
    std::vector<u32> out;
    int raw = class_order_[size_t(c)];
    for (u32 i = 0; i < order(); ++i)
      if (class_of_[i] == raw) out.push_back(i);
    return out;
  }

 private:
  void enumerate() {
    u64 cap = caps().group_order;
    bool direct_ok = degree_ <= 10;
    if (direct_ok) direct_.assign(size_t(factorial_u64(degree_)), 0);
    auto note = [&](const Perm& p, i64 parent, int gi) -> bool {
      u64 r = perm_rank(p);
      if (direct_ok) {
        if (direct_[r]) return false;
        direct_[r] = u32(elements_.size()) + 1;
      } else {
        if (index_.count(r)) return false;
        index_.emplace(r, u32(elements_.size()));
      }
      elements_.push_back(p);
      parent_.push_back(parent);
      genidx_.push_back(gi);
      require(elements_.size() <= cap, "cap",
              "group order exceeds the enumeration cap of " + std::to_string(cap));
      return true;
    };
    note(perm_identity(degree_), -1, -1);
    for (size_t i = 0; i < elements_.size(); ++i) {
      Perm cur = elements_[i];  // copy: elements_ may reallocate
      for (size_t gi = 0; gi < gens_.size(); ++gi)
        note(perm_mul(cur, gens_[gi]), i64(i), int(gi));
    }
  }

  void classify() {
    u32 n = u32(order());
    class_of_.assign(n, -1);
    for (u32 i = 0; i < n; ++i) {
      if (class_of_[i] >= 0) continue;
      int cls = int(raw_reps_.size());
      raw_reps_.push_back(i);
      std::vector<u32> orbit{i};
      class_of_[i] = cls;
      for (size_t w = 0; w < orbit.size(); ++w) {
        Perm x = elements_[orbit[w]];
        for (const Perm& g : gens_) {
          Perm y = perm_conj(x, g);
          i64 j = index_of(y);
          if (class_of_[u32(j)] < 0) {
            class_of_[u32(j)] = cls;
            orbit.push_back(u32(j));
          }
        }
      }
      raw_sizes_.push_back(orbit.size());
    }
    int k = int(raw_reps_.size());
    class_order_.resize(size_t(k));
    for (int i = 0; i < k; ++i) class_order_[size_t(i)] = i;
    std::sort(class_order_.begin(), class_order_.end(), [&](int a, int b) {
      int oa = perm_order(elements_[raw_reps_[size_t(a)]]);
      int ob = perm_order(elements_[raw_reps_[size_t(b)]]);
      if (oa != ob) return oa < ob;
      if (raw_sizes_[size_t(a)] != raw_sizes_[size_t(b)]) return raw_sizes_[size_t(a)] < raw_sizes_[size_t(b)];
      return a < b;
    });
    canon_of_raw_.assign(size_t(k), 0);
    for (int c = 0; c < k; ++c) canon_of_raw_[size_t(class_order_[size_t(c)])] = c;
  }

  int degree_;
  std::string name_;
  std::vector<Perm> gens_;
  std::vector<Perm> elements_;
  std::vector<i64> parent_;
  std::vector<int> genidx_;
  std::vector<u32> direct_;  // rank -> index+1 when degree <= 10
  std::unordered_map<u64, u32> index_;
  std::vector<int> class_of_;      // raw class id per element
  std::vector<u32> raw_reps_;      // first element of each raw class
  std::vector<u64> raw_sizes_;
  std::vector<int> class_order_;   // canonical -> raw
  std::vector<int> canon_of_raw_;  // raw -> canonical
};

/// Enumerate the subgroup generated by gens inside the universe of G
/// (same degree; containment in G is the caller's claim, checked here).
inline Group subgroup(const Group& G, std::vector<Perm> gens, std::string name = "") {
  for (const Perm& g : gens)
    require(G.contains(g), "bad_input", "subgroup generator not inside the group");
  if (gens.empty()) gens.push_back(perm_identity(G.degree()));
  return Group(G.degree(), std::move(gens), std::move(name));
}

/// Greedy small generating set for a set of elements forming a subgroup.
inline Group group_from_elements(int degree, const std::vector<Perm>& elts, std::string name = "") {
  std::vector<Perm> gens;
  std::unique_ptr<Group> cur;
  for (const Perm& e : elts) {
    if (perm_is_identity(e)) continue;
    if (cur && cur->contains(e)) continue;
    gens.push_back(e);
    cur = std::make_unique<Group>(degree, gens, name);
    if (cur->order() == elts.size()) break;
  }
  if (!cur) return Group(degree, {}, std::move(name));
  require(cur->order() == elts.size(), "internal", "element set is not closed");
  return Group(degree, gens, std::move(name));
}

/// Right-coset representatives of H in G, identity first, in element order.
inline std::vector<u32> transversal(const Group& G, const Group& H) {
  require(H.degree() == G.degree(), "bad_input", "degree mismatch");
  for (const Perm& h : H.gens())
    require(G.contains(h), "bad_input", "H is not a subgroup of G");
  require(G.order() % H.order() == 0, "internal", "subgroup order does not divide");
  std::vector<char> covered(G.order(), 0);
  std::vector<u32> reps;
  for (u32 i = 0; i < G.order(); ++i) {
    if (covered[i]) continue;
    reps.push_back(i);
    const Perm& g = G.element(i);
    for (const Perm& h : H.elements()) {
      i64 j = G.index_of(perm_mul(h, g));
      require(j >= 0, "internal", "coset left the group");
      covered[size_t(j)] = 1;
    }
  }
  require(reps.size() == G.order() / H.order(), "internal", "bad transversal size");
  return reps;
}

inline Group normalizer(const Group& G, const Group& S, std::string name = "") {
  std::vector<Perm> members;
  for (const Perm& g : G.elements()) {
    bool ok = true;
    for (const Perm& s : S.gens())
      if (!S.contains(perm_conj(s, g))) { ok = false; break; }
    if (ok) members.push_back(g);
  }
  return group_from_elements(G.degree(), members, std::move(name));
}

inline Group centralizer(const Group& G, const Perm& x, std::string name = "") {
  std::vector<Perm> members;
  for (const Perm& g : G.elements())
    if (perm_mul(g, x) == perm_mul(x, g)) members.push_back(g);
  return group_from_elements(G.degree(), members, std::move(name));
}

inline u64 p_part(u64 n, int p) {
  u64 r = 1;
  while (n % u64(p) == 0) {
    n /= u64(p);
    r *= u64(p);
  }
  return r;
}

/// A Sylow p-subgroup, grown by normalize-and-extend from a p-element.
inline Group sylow(const Group& G, int p, std::string name = "") {
  u64 target = p_part(G.order(), p);
  if (target == 1) return Group(G.degree(), {}, std::move(name));
  // first element of order divisible by p, powered down to order p
  Perm start;
  for (const Perm& g : G.elements()) {
    int o = perm_order(g);
    if (o % p == 0) {
      start = perm_pow(g, o / p);
      break;
    }
  }
  Group S(G.degree(), {start});
  std::vector<Perm> sgens{start};
  while (S.order() < target) {
    Group N = normalizer(G, S);
    bool grown = false;
    for (const Perm& y : N.elements()) {
      if (S.contains(y)) continue;
      std::vector<Perm> tg = sgens;
      tg.push_back(y);
      Group T(G.degree(), tg);
      if (T.order() == S.order() * u64(p) && p_part(T.order(), p) == T.order()) {
        sgens = std::move(tg);
        S = std::move(T);
        grown = true;
        break;
      }
    }
    require(grown, "internal", "sylow growth stalled");
  }
  return Group(G.degree(), sgens, std::move(name));
}

/// Number of H-K double cosets in G.
inline u64 count_double_cosets(const Group& G, const Group& H, const Group& K) {
  std::vector<char> covered(G.order(), 0);
  u64 count = 0;
  for (u32 i = 0; i < G.order(); ++i) {
    if (covered[i]) continue;
    ++count;
    const Perm& x = G.element(i);
    for (const Perm& h : H.elements()) {
      Perm hx = perm_mul(h, x);
      for (const Perm& k : K.elements()) {
        i64 j = G.index_of(perm_mul(hx, k));
        require(j >= 0, "bad_input", "double coset left the group");
        covered[size_t(j)] = 1;
      }
    }
  }
  return count;
}

/// All subgroups of a (small) group, as sorted element-rank keys.
inline std::vector<std::vector<Perm>> all_subgroups_elements(const Group& S) {
  require(S.order() <= 512, "cap", "subgroup enumeration wants |S| <= 512");
  auto key_of = [&](const std::vector<Perm>& elts) {
    std::vector<u64> key;
    for (const Perm& e : elts) key.push_back(perm_rank(e));
    std::sort(key.begin(), key.end());
    return key;
  };
  std::set<std::vector<u64>> seen;
  std::vector<std::vector<Perm>> out;
  std::vector<std::vector<Perm>> gen_sets;
  // singletons (plus the trivial group) first, then extend by one generator
  std::vector<Perm> trivial{perm_identity(S.degree())};
  seen.insert(key_of(trivial));
  out.push_back(trivial);
  gen_sets.push_back({});
  for (size_t w = 0; w < out.size(); ++w) {
    std::vector<Perm> base_gens = gen_sets[w];
    for (const Perm& x : S.elements()) {
      if (perm_is_identity(x)) continue;
      std::vector<Perm> g2 = base_gens;
      g2.push_back(x);
      Group T(S.degree(), g2);
      auto key = key_of(T.elements());
      if (seen.insert(key).second) {
        out.push_back(T.elements());
        gen_sets.push_back(g2);
      }
    }
  }
  return out;
}

inline bool subgroups_conjugate(const Group& G, const Group& A, const Group& B) {
  if (A.order() != B.order()) return false;
  for (const Perm& g : G.elements()) {
    bool ok = true;
    for (const Perm& a : A.gens())
      if (!B.contains(perm_conj(a, g))) { ok = false; break; }
    if (ok) return true;
  }
  return false;
}

/// Representatives of the conjugacy classes of p-subgroups of G, ascending
/// order; starts with the trivial subgroup and ends with a Sylow p-subgroup.
inline std::vector<Group> p_subgroups_up_to_conjugacy(const Group& G, int p) {
  Group S = sylow(G, p);
  std::vector<Group> reps;
  for (auto& elts : all_subgroups_elements(S)) {
    Group candidate = group_from_elements(G.degree(), elts);
    bool fresh = true;
    for (const Group& r : reps)
      if (subgroups_conjugate(G, r, candidate)) { fresh = false; break; }
    if (fresh) reps.push_back(std::move(candidate));
  }
  std::sort(reps.begin(), reps.end(), [](const Group& a, const Group& b) { return a.order() < b.order(); });
  return reps;
}

/// Class fusion: canonical H-class index -> canonical G-class index.
inline std::vector<int> class_fusion(const Group& H, const Group& G) {
  std::vector<int> fus(size_t(H.num_classes()));
  for (int c = 0; c < H.num_classes(); ++c) fus[size_t(c)] = G.class_of(H.class_rep(c));
  return fus;
}

}  // namespace blockbench
