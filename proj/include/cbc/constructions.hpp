#ifndef CBC_CONSTRUCTIONS_HPP
#define CBC_CONSTRUCTIONS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "cbc/breadth.hpp"
#include "cbc/group.hpp"

namespace cbc {

// P = { g in N : [g, C2] <= [C1, N] }. Requires C1 <= C2, all normal.
// The three conclusions of the lemma are asserted on every call.
inline Subgroup lemma1_P(const GroupTable& G, const Subgroup& N,
                         const Subgroup& C1, const Subgroup& C2) {
  if (!is_normal(G, N) || !is_normal(G, C1) || !is_normal(G, C2))
    throw PreconditionViolated("lemma1_P: inputs must be normal in G");
  if (!C1.subset_of(C2))
    throw PreconditionViolated("lemma1_P: C1 must be contained in C2");
  Subgroup T = commutator_subgroup(G, C1, N);
  Bitset pb(G.order());
  auto c2 = C2.members();
  for (int g : N.members()) {
    bool in = true;
    for (int c : c2)
      if (!T.contains(G.commutator(g, c))) {
        in = false;
        break;
      }
    if (in) pb.set(g);
  }
  Subgroup P = Subgroup::from_members(G, pb);
  // claim 1: elements of N with b_{C1}(g) >= b_{C2}(g) lie in P
  for (int g : N.members())
    if (breadth_rel(G, g, C1) >= breadth_rel(G, g, C2) && !P.contains(g))
      throw InternalContradiction("lemma1_P: claim 1 failed");
  // claim 2
  if (!is_normal(G, P)) throw InternalContradiction("lemma1_P: P not normal");
  // claim 3
  if (P == N && !(commutator_subgroup(G, C2, N) == T))
    throw InternalContradiction("lemma1_P: claim 3 failed");
  return P;
}

// All subgroups of index p in C2 that contain V, where C2/V is elementary
// abelian: preimages of the hyperplanes of the F_p-space C2/V. Coordinates
// are ordered by the BFS index of the coset representatives; the output is
// sorted by lexicographic member set. Count: (p^d - 1)/(p - 1).
inline std::vector<Subgroup> maximal_subgroups_through(const GroupTable& G,
                                                       const Subgroup& C2,
                                                       const Subgroup& V) {
  if (!is_normal(G, V)) throw PreconditionViolated("maximal_subgroups_through: V not normal");
  if (!V.subset_of(C2))
    throw PreconditionViolated("maximal_subgroups_through: V not contained in C2");
  const int p = G.prime();
  // elementary abelian check: commutators and p-th powers land in V
  for (int a : C2.members()) {
    if (!V.contains(G.power(a, p)))
      throw NotElementaryAbelian("C2/V has an element of order > p");
    for (int b : C2.members())
      if (!V.contains(G.commutator(a, b)))
        throw NotElementaryAbelian("C2/V is not abelian");
  }
  Projection pi = quotient(G, V);
  Subgroup W = pi.image(C2);
  // basis of W by ascending target index (= ascending minimal coset rep)
  std::vector<int> basis;
  Bitset span(pi.target->order());
  span.set(0);
  for (int w : W.members()) {
    if (span.test(w)) continue;
    basis.push_back(w);
    auto seed = span.members();
    seed.push_back(w);
    span = closure_bits(*pi.target, seed);
  }
  int d = static_cast<int>(basis.size());
  // coordinates of every element of W
  std::vector<std::vector<int>> coord(pi.target->order());
  {
    // enumerate all F_p^d tuples; product basis[0]^c0 * ... gives the element
    std::vector<int> c(d, 0);
    for (;;) {
      int x = 0;
      for (int k = 0; k < d; ++k) x = pi.target->mul(x, pi.target->power(basis[k], c[k]));
      coord[x] = c;
      int k = d - 1;
      while (k >= 0 && c[k] == p - 1) c[k--] = 0;
      if (k < 0) break;
      ++c[k];
    }
  }
  // hyperplanes = kernels of dual vectors with first nonzero entry 1,
  // enumerated in lexicographic order
  std::vector<Subgroup> out;
  std::vector<int> phi(d, 0);
  auto next_dual = [&]() {
    int k = d - 1;
    while (k >= 0 && phi[k] == p - 1) phi[k--] = 0;
    if (k < 0) return false;
    ++phi[k];
    return true;
  };
  while (next_dual()) {
    int lead = 0;
    while (phi[lead] == 0) ++lead;
    if (phi[lead] != 1) continue;  // one representative per line of duals
    Bitset kb(pi.target->order());
    for (int w : W.members()) {
      int s = 0;
      for (int k = 0; k < d; ++k) s += phi[k] * coord[w][k];
      if (s % p == 0) kb.set(w);
    }
    Subgroup K = preimage(pi, Subgroup::unchecked(*pi.target, kb));
    if (is_normal(G, C2) && !is_normal(G, K))
      throw InternalContradiction("maximal_subgroups_through: hyperplane preimage not normal");
    out.push_back(std::move(K));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.bits().lex_less(b.bits());
  });
  return out;
}

// Given C1 < C2 normal in G, produce a normal C3 with C1 <= C3 <= C2 and
// |C2 : C3| = p. Mechanism: K = C1 [C2, G] is proper in C2; adding p-th
// powers makes C2/V elementary abelian, so the maximal subgroups of C2
// above V are exactly the hyperplane preimages; take the first.
inline Subgroup lemma2_refine(const GroupTable& G, const Subgroup& C1,
                              const Subgroup& C2) {
  if (!is_normal(G, C1) || !is_normal(G, C2))
    throw PreconditionViolated("lemma2_refine: inputs must be normal");
  if (!C1.subset_of(C2) || C1 == C2)
    throw PreconditionViolated("lemma2_refine: need C1 strictly below C2");
  Subgroup K = product_of_normals(G, {C1, commutator_subgroup(G, C2, Subgroup::full(G))});
  if (K == C2) throw InternalContradiction("lemma2_refine: C1 [C2,G] is all of C2");
  Bitset seed = K.bits();
  for (int x : C2.members()) seed.set(G.power(x, G.prime()));
  Subgroup V = generated_subgroup(G, seed);
  if (V == C2) throw InternalContradiction("lemma2_refine: Frattini-type subgroup not proper");
  auto maxes = maximal_subgroups_through(G, C2, V);
  Subgroup C3 = maxes.front();
  // re-verify the lemma's conclusion clauses with the independent primitives
  if (!C1.subset_of(C3) || !C3.subset_of(C2) || index_log(C2, C3) != 1 ||
      !is_normal(G, C3))
    throw InternalContradiction("lemma2_refine: conclusion clauses failed");
  return C3;
}

// Given distinct index-p normal subgroups D1, D2 of H, pick an index-p
// subgroup D of H with D n D1 = D n D2 = D1 n D2 that is contained in no
// avoid member. Normality in G comes for free (every subgroup between
// [H, G] H^p and H is normal in G) and is
// still checked. The counting argument needs |avoid| <= p - 2.
inline Subgroup lemma4_select(const GroupTable& G, const Subgroup& H,
                              const Subgroup& D1, const Subgroup& D2,
                              const std::vector<Subgroup>& avoid) {
  const int p = G.prime();
  if (!is_normal(G, H) || !is_normal(G, D1) || !is_normal(G, D2))
    throw PreconditionViolated("lemma4_select: inputs must be normal");
  if (D1 == D2) throw PreconditionViolated("lemma4_select: D1 = D2");
  if (!D1.subset_of(H) || !D2.subset_of(H) || index_log(H, D1) != 1 ||
      index_log(H, D2) != 1)
    throw PreconditionViolated("lemma4_select: D1, D2 must have index p in H");
  if (static_cast<int>(avoid.size()) > p - 2)
    throw PreconditionViolated("lemma4_select: at most p - 2 avoid subgroups");
  for (const auto& A : avoid)
    if (!A.bits().is_subset_of(H.bits()) || A == H)
      throw PreconditionViolated("lemma4_select: avoid members must be proper subgroups of H");
  Subgroup M = D1.intersect(D2);
  auto candidates = maximal_subgroups_through(G, H, M);  // p + 1 of them
  if (static_cast<int>(candidates.size()) != p + 1)
    throw InternalContradiction("lemma4_select: expected p + 1 candidates");
  for (const auto& D : candidates) {
    if (D == D1 || D == D2) continue;
    bool blocked = false;
    for (const auto& A : avoid)
      if (D.bits().is_subset_of(A.bits())) {
        blocked = true;
        break;
      }
    if (blocked) continue;
    // re-verify every conclusion clause
    if (index_log(H, D) != 1 || !(D.intersect(D1) == M) ||
        !(D.intersect(D2) == M) || !is_normal(G, D))
      throw InternalContradiction("lemma4_select: conclusion clauses failed");
    return D;
  }
  throw SelectionExhausted("lemma4_select: no admissible candidate (impossible under preconditions)");
}

}  // namespace cbc

#endif
