#ifndef CBC_GROUP_HPP
#define CBC_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cbc/action.hpp"
#include "cbc/bitset.hpp"
#include "cbc/errors.hpp"

namespace cbc {

struct BuildOptions {
  int order_cap = 20000;
  // At or below this order the full multiplication table is materialized;
  // above it, multiplication composes the concrete actions and resolves
  // indices through the encoding dictionary.
  int table_threshold = 4096;
};

// A fully materialized finite p-group. Element indices are canonical:
// index 0 is the identity, the rest follow BFS closure order over the
// generators in input order, so identical specs give identical indices.
class GroupTable {
 public:
  static GroupTable from_generators(const GroupSpec& spec,
                                    const BuildOptions& opt = {});
  static GroupTable from_table(int prime, std::vector<std::uint16_t> table,
                               std::vector<int> gen_indices,
                               std::string label);

  int prime() const { return prime_; }
  int order() const { return order_; }
  int p_exponent() const { return exp_; }
  int identity() const { return 0; }
  const std::string& label() const { return label_; }
  const std::vector<int>& generator_indices() const { return gens_; }
  bool has_actions() const { return !repr_.empty(); }
  const Action& element_repr(int i) const { return repr_[i]; }

  int mul(int a, int b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    return index_of_.at(repr_[a].compose(repr_[b]).encode());
  }

  int inv(int a) const { return inv_[a]; }

  int commutator(int x, int y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }

  int conjugate(int g, int x) const {  // g^-1 x g
    return mul(mul(inv(g), x), g);
  }

  int power(int x, int k) const {
    int r = 0, b = x;
    while (k > 0) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }

  int element_order(int x) const {
    int k = 1, y = x;
    while (y != 0) {
      y = mul(y, x);
      ++k;
    }
    return k;
  }

  int log_p_index(int numerator_order, int denominator_order) const {
    int q = numerator_order / denominator_order;
    int e = 0;
    while (q > 1) {
      q /= prime_;
      ++e;
    }
    return e;
  }

 private:
  void finish(const BuildOptions& opt);
  void sanity_check() const;

  int prime_ = 0;
  int order_ = 0;
  int exp_ = 0;
  std::string label_;
  std::vector<int> gens_;
  std::vector<Action> repr_;
  std::unordered_map<std::string, int> index_of_;
  std::vector<std::uint16_t> table_;
  std::vector<int> inv_;
};

// An element-index set over a GroupTable, known to be a subgroup.
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup trivial(const GroupTable& G) {
    Bitset b(G.order());
    b.set(G.identity());
    return Subgroup(&G, std::move(b));
  }

  static Subgroup full(const GroupTable& G) {
    Bitset b(G.order());
    for (int i = 0; i < G.order(); ++i) b.set(i);
    Subgroup s(&G, std::move(b));
    s.normal_ = true;
    return s;
  }

  // Validates closure; use unchecked() for sets produced by closure code.
  static Subgroup from_members(const GroupTable& G, const Bitset& members) {
    if (!members.test(G.identity()))
      throw PreconditionViolated("member set does not contain the identity");
    auto m = members.members();
    for (int a : m)
      for (int b : m)
        if (!members.test(G.mul(a, b)))
          throw PreconditionViolated("member set is not closed under multiplication");
    return Subgroup(&G, members);
  }

  static Subgroup unchecked(const GroupTable& G, Bitset members) {
    return Subgroup(&G, std::move(members));
  }

  const GroupTable& group() const { return *parent_; }
  const Bitset& bits() const { return members_; }
  int order() const { return order_; }
  bool contains(int x) const { return members_.test(x); }
  std::vector<int> members() const { return members_.members(); }
  bool is_trivial() const { return order_ == 1; }
  bool is_full() const { return order_ == parent_->order(); }

  bool operator==(const Subgroup& o) const { return members_ == o.members_; }
  bool operator!=(const Subgroup& o) const { return members_ != o.members_; }
  bool subset_of(const Subgroup& o) const { return members_.is_subset_of(o.members_); }

  Subgroup intersect(const Subgroup& o) const {
    return Subgroup(parent_, members_ & o.members_);
  }

  std::optional<bool> normal_cache() const { return normal_; }
  void cache_normal(bool v) const {
    if (!normal_) normal_ = v;
  }

  // Greedy minimal generating sequence, deterministic: smallest members
  // that enlarge the span. Used for certificate descriptors.
  std::vector<int> generator_indices() const;

 private:
  Subgroup(const GroupTable* g, Bitset b)
      : parent_(g), members_(std::move(b)), order_(members_.count()) {}

  const GroupTable* parent_ = nullptr;
  Bitset members_;
  int order_ = 0;
  mutable std::optional<bool> normal_;  // write-once
};

// ---- closure primitives ----

inline Bitset closure_bits(const GroupTable& G, const std::vector<int>& seed) {
  Bitset in(G.order());
  in.set(G.identity());
  std::vector<int> work{G.identity()};
  for (int x : seed)
    if (!in.test(x)) {
      in.set(x);
      work.push_back(x);
    }
  // worklist closure under multiplication by current members
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j < work.size(); ++j) {
      int a = work[i], b = work[j];
      int m = G.mul(a, b);
      if (!in.test(m)) {
        in.set(m);
        work.push_back(m);
      }
      m = G.mul(b, a);
      if (!in.test(m)) {
        in.set(m);
        work.push_back(m);
      }
    }
  return in;
}

inline Subgroup generated_subgroup(const GroupTable& G, const std::vector<int>& X) {
  return Subgroup::unchecked(G, closure_bits(G, X));
}

inline Subgroup generated_subgroup(const GroupTable& G, const Bitset& X) {
  return Subgroup::unchecked(G, closure_bits(G, X.members()));
}

// [g, H] as a set of elements, not a subgroup.
inline Bitset commutator_set(const GroupTable& G, int g, const Subgroup& H) {
  Bitset out(G.order());
  for (int h : H.members()) out.set(G.commutator(g, h));
  return out;
}

inline Subgroup commutator_subgroup(const GroupTable& G, const Subgroup& A,
                                    const Subgroup& B) {
  Bitset seed(G.order());
  seed.set(G.identity());
  for (int a : A.members())
    for (int b : B.members()) seed.set(G.commutator(a, b));
  return generated_subgroup(G, seed);
}

inline Subgroup centralizer(const GroupTable& G, int g) {
  Bitset b(G.order());
  for (int x = 0; x < G.order(); ++x)
    if (G.mul(x, g) == G.mul(g, x)) b.set(x);
  return Subgroup::unchecked(G, std::move(b));
}

inline Subgroup centralizer(const GroupTable& G, const Subgroup& H) {
  Bitset b(G.order());
  auto hs = H.members();
  for (int x = 0; x < G.order(); ++x) {
    bool ok = true;
    for (int h : hs)
      if (G.mul(x, h) != G.mul(h, x)) {
        ok = false;
        break;
      }
    if (ok) b.set(x);
  }
  return Subgroup::unchecked(G, std::move(b));
}

inline Subgroup center(const GroupTable& G) {
  return centralizer(G, Subgroup::full(G));
}

inline bool is_normal(const GroupTable& G, const Subgroup& H) {
  if (auto c = H.normal_cache()) return *c;
  bool ok = true;
  const auto& gens = G.generator_indices();
  auto hs = H.members();
  // conjugation by generators suffices: conjugation by a product is the
  // composite of conjugations
  if (!gens.empty()) {
    for (int g : gens) {
      for (int h : hs)
        if (!H.contains(G.conjugate(g, h))) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
  } else {
    for (int g = 0; g < G.order() && ok; ++g)
      for (int h : hs)
        if (!H.contains(G.conjugate(g, h))) {
          ok = false;
          break;
        }
  }
  H.cache_normal(ok);
  return ok;
}

inline std::vector<std::vector<int>> conjugacy_classes(const GroupTable& G) {
  std::vector<std::vector<int>> classes;
  std::vector<bool> done(G.order(), false);
  std::vector<int> gens = G.generator_indices();
  if (gens.empty())
    for (int i = 0; i < G.order(); ++i) gens.push_back(i);
  for (int x = 0; x < G.order(); ++x) {
    if (done[x]) continue;
    std::vector<int> orbit{x};
    done[x] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (int g : gens) {
        int y = G.conjugate(g, orbit[i]);
        if (!done[y]) {
          done[y] = true;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  // BFS above already yields classes ordered by minimal member, with the
  // identity's class first
  return classes;
}

inline int index_log(const Subgroup& K, const Subgroup& H) {
  if (!H.bits().is_subset_of(K.bits()))
    throw NotContained("index_log: H is not contained in K");
  return K.group().log_p_index(K.order(), H.order());
}

inline Subgroup product_of_normals(const GroupTable& G,
                                   const std::vector<Subgroup>& Ns) {
  Bitset seed(G.order());
  seed.set(G.identity());
  for (const auto& N : Ns) {
    if (!is_normal(G, N)) throw NotNormal("product_of_normals: factor not normal");
    seed = seed | N.bits();
  }
  Subgroup r = generated_subgroup(G, seed);
  r.cache_normal(true);
  return r;
}

// All normal subgroups as the join-closure of subgroups generated by single
// conjugacy classes (every normal subgroup is a union of classes, hence the
// join of the class-generated atoms it contains).
inline std::vector<Subgroup> normal_subgroups(const GroupTable& G, int cap) {
  if (cap < 1) throw PreconditionViolated("normal_subgroups: cap must be >= 1");
  std::vector<Bitset> atoms;
  {
    std::unordered_set<Bitset, BitsetHash> seen;
    for (const auto& cls : conjugacy_classes(G)) {
      Bitset b = closure_bits(G, cls);
      if (seen.insert(b).second) atoms.push_back(std::move(b));
    }
  }
  std::unordered_set<Bitset, BitsetHash> found;
  std::vector<Bitset> frontier;
  Bitset triv(G.order());
  triv.set(G.identity());
  found.insert(triv);
  frontier.push_back(triv);
  while (!frontier.empty()) {
    std::vector<Bitset> next;
    for (const auto& s : frontier)
      for (const auto& a : atoms) {
        if (a.is_subset_of(s)) continue;
        Bitset j = closure_bits(G, (s | a).members());
        if (found.insert(j).second) {
          next.push_back(std::move(j));
          if (static_cast<int>(found.size()) > cap)
            throw EnumerationCapExceeded("normal subgroup count exceeds cap " +
                                         std::to_string(cap));
        }
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& b : found) {
    Subgroup s = Subgroup::unchecked(G, b);
    s.cache_normal(true);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.bits().lex_less(b.bits());
  });
  return out;
}

// ---- quotients ----

struct Projection {
  const GroupTable* source = nullptr;
  std::shared_ptr<GroupTable> target;
  Subgroup kernel;
  std::vector<int> map;      // source element -> target index
  std::vector<int> section;  // target index -> minimal coset representative

  Subgroup image(const Subgroup& S) const {
    Bitset b(target->order());
    for (int x : S.members()) b.set(map[x]);
    return Subgroup::unchecked(*target, std::move(b));
  }
};

inline Projection quotient(const GroupTable& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw NotNormal("quotient: kernel is not normal");
  int n = G.order();
  std::vector<int> rep(n, -1);
  auto nm = N.members();
  for (int x = 0; x < n; ++x) {
    if (rep[x] >= 0) continue;
    int r = n;
    std::vector<int> coset;
    coset.reserve(nm.size());
    for (int k : nm) {
      int y = G.mul(x, k);
      coset.push_back(y);
      r = std::min(r, y);
    }
    for (int y : coset) rep[y] = r;
  }
  std::vector<int> section;
  for (int x = 0; x < n; ++x)
    if (rep[x] == x) section.push_back(x);
  std::sort(section.begin(), section.end());  // identity coset ends up at index 0
  std::unordered_map<int, int> idx;
  for (std::size_t i = 0; i < section.size(); ++i) idx[section[i]] = static_cast<int>(i);
  std::vector<int> map(n);
  for (int x = 0; x < n; ++x) map[x] = idx[rep[x]];
  int q = static_cast<int>(section.size());
  if (static_cast<std::size_t>(q) * q > std::size_t{1} << 26)
    throw OrderCapExceeded("quotient target too large to materialize");
  std::vector<std::uint16_t> table(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      table[static_cast<std::size_t>(i) * q + j] =
          static_cast<std::uint16_t>(map[G.mul(section[i], section[j])]);
  std::vector<int> gens;
  for (int g : G.generator_indices())
    if (map[g] != 0 &&
        std::find(gens.begin(), gens.end(), map[g]) == gens.end())
      gens.push_back(map[g]);
  Projection pi;
  pi.source = &G;
  pi.target = std::make_shared<GroupTable>(GroupTable::from_table(
      G.prime(), std::move(table), std::move(gens), G.label() + "/N"));
  pi.kernel = N;
  pi.map = std::move(map);
  pi.section = std::move(section);
  return pi;
}

inline Subgroup preimage(const Projection& pi, const Subgroup& S) {
  Bitset b(pi.source->order());
  for (int x = 0; x < pi.source->order(); ++x)
    if (S.contains(pi.map[x])) b.set(x);
  return Subgroup::unchecked(*pi.source, std::move(b));
}

// ---- GroupTable construction ----

inline GroupTable GroupTable::from_generators(const GroupSpec& spec,
                                              const BuildOptions& opt) {
  require_odd_prime(spec.prime);
  GroupTable G;
  G.prime_ = spec.prime;
  G.label_ = spec.label;

  std::vector<Action> gens = spec.generators;
  if (gens.empty())
    throw PreconditionViolated("build_group: no generators");
  if (spec.kind == ActionKind::Perm) {
    // unify degrees across generators
    int deg = 0;
    for (const auto& g : gens) deg = std::max(deg, g.degree());
    for (auto& g : gens) {
      if (g.degree() < deg) {
        std::vector<std::uint16_t> im(g.data().begin(), g.data().end());
        for (int x = g.degree(); x < deg; ++x) im.push_back(static_cast<std::uint16_t>(x));
        g = Action::perm(std::move(im));
      }
    }
  }
  // generator orders must be p-powers
  for (const auto& g : gens) {
    Action y = g;
    int ord = 1;
    while (!y.is_identity()) {
      y = y.compose(g);
      ++ord;
      if (ord > opt.order_cap) throw OrderCapExceeded("generator order exceeds cap");
    }
    int o = ord;
    while (o > 1 && o % spec.prime == 0) o /= spec.prime;
    if (o != 1)
      throw NotAPGroup("generator order " + std::to_string(ord) +
                       " is not a power of " + std::to_string(spec.prime));
  }

  Action ident = spec.kind == ActionKind::Perm
                     ? Action::perm_identity(gens[0].degree())
                     : Action::matrix_identity(spec.matrix_dim, spec.prime);
  G.repr_.push_back(ident);
  G.index_of_[ident.encode()] = 0;
  // BFS closure: elements in discovery order, multiplying on the right by
  // the generators in input order
  for (std::size_t i = 0; i < G.repr_.size(); ++i)
    for (const auto& g : gens) {
      Action y = G.repr_[i].compose(g);
      std::string key = y.encode();
      if (!G.index_of_.count(key)) {
        if (static_cast<int>(G.repr_.size()) >= opt.order_cap)
          throw OrderCapExceeded("closure exceeds order cap " +
                                 std::to_string(opt.order_cap));
        G.index_of_[key] = static_cast<int>(G.repr_.size());
        G.repr_.push_back(std::move(y));
      }
    }
  G.order_ = static_cast<int>(G.repr_.size());
  for (const auto& g : gens)
    G.gens_.push_back(G.index_of_.at(g.encode()));

  int o = G.order_, e = 0;
  while (o > 1 && o % spec.prime == 0) {
    o /= spec.prime;
    ++e;
  }
  if (o != 1)
    throw NotAPGroup("closure order " + std::to_string(G.order_) +
                     " is not a power of " + std::to_string(spec.prime));
  G.exp_ = e;
  G.finish(opt);
  return G;
}

inline GroupTable GroupTable::from_table(int prime,
                                         std::vector<std::uint16_t> table,
                                         std::vector<int> gen_indices,
                                         std::string label) {
  GroupTable G;
  G.prime_ = prime;
  G.label_ = std::move(label);
  G.table_ = std::move(table);
  G.gens_ = std::move(gen_indices);
  int n = 1;
  while (static_cast<std::size_t>(n) * n < G.table_.size()) ++n;
  G.order_ = n;
  int o = n, e = 0;
  while (o > 1 && o % prime == 0) {
    o /= prime;
    ++e;
  }
  if (o != 1) throw NotAPGroup("table order is not a power of p");
  G.exp_ = e;
  G.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.table_[static_cast<std::size_t>(a) * n + b] == 0) {
        G.inv_[a] = b;
        break;
      }
  G.sanity_check();
  return G;
}

inline void GroupTable::finish(const BuildOptions& opt) {
  if (order_ <= opt.table_threshold) {
    table_.resize(static_cast<std::size_t>(order_) * order_);
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        table_[static_cast<std::size_t>(a) * order_ + b] = static_cast<std::uint16_t>(
            index_of_.at(repr_[a].compose(repr_[b]).encode()));
  }
  inv_.resize(order_);
  for (int a = 0; a < order_; ++a)
    inv_[a] = index_of_.at(repr_[a].inverse().encode());
  sanity_check();
}

inline void GroupTable::sanity_check() const {
  for (int a = 0; a < order_; ++a) {
    if (mul(a, 0) != a || mul(0, a) != a)
      throw InternalContradiction("identity is not two-sided neutral");
    if (mul(a, inv_[a]) != 0 || mul(inv_[a], a) != 0)
      throw InternalContradiction("inverse is not two-sided");
  }
  if (order_ <= 2000 && !table_.empty()) {
    // exhaustive associativity over the materialized table
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b) {
        int ab = mul(a, b);
        for (int c = 0; c < order_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c)))
            throw InternalContradiction("associativity violated");
      }
  } else {
    std::mt19937 rng(0xcbc);
    std::uniform_int_distribution<int> d(0, order_ - 1);
    for (int t = 0; t < 100000; ++t) {
      int a = d(rng), b = d(rng), c = d(rng);
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw InternalContradiction("associativity violated (random triple)");
    }
  }
}

inline std::vector<int> Subgroup::generator_indices() const {
  std::vector<int> gens;
  Bitset span(parent_->order());
  span.set(parent_->identity());
  for (int x : members()) {
    if (span.test(x)) continue;
    gens.push_back(x);
    auto seed = span.members();
    seed.push_back(x);
    span = closure_bits(*parent_, seed);
    if (span == members_) break;
  }
  return gens;
}

}  // namespace cbc

#endif
