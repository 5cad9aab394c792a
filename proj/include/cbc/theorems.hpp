#ifndef CBC_THEOREMS_HPP
#define CBC_THEOREMS_HPP

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbc/breadth.hpp"
#include "cbc/constructions.hpp"
#include "cbc/group.hpp"

namespace cbc {

enum class StepCase { Base, Central, CaseA, CaseB };

inline const char* step_case_name(StepCase c) {
  switch (c) {
    case StepCase::Base: return "BASE";
    case StepCase::Central: return "CENTRAL";
    case StepCase::CaseA: return "CASE_A";
    case StepCase::CaseB: return "CASE_B";
  }
  return "?";
}

struct StepRecord {
  StepCase kase;
  int n, m;
  Subgroup H;
  std::vector<Subgroup> Cs;
  std::optional<Subgroup> P;
  std::optional<Subgroup> C12;  // CASE_A join
  std::optional<Subgroup> D1, D2, D;
};

// Full recursion trace of the theorem1 run: cases taken, subgroups
// built, postconditions recomputed. Replayable without trusting the run
// that produced it.
struct TheoremOneCertificate {
  int n = 0, m = 0;
  Subgroup H;
  std::vector<Subgroup> Cs;
  std::vector<StepRecord> steps;
  Subgroup result;
  bool B1 = false, B2 = false, B3 = false, B4 = false;
  int index_log_value = 0;
  int cl_f_value = 0;
  int witness_element = -1;
};

namespace detail {

inline Bitset union_bits(const GroupTable& G, const std::vector<Subgroup>& Cs) {
  Bitset u(G.order());
  for (const auto& C : Cs) u = u | C.bits();
  return u;
}

inline int interior_breadth_max(const GroupTable& G, const Subgroup& H,
                                const std::vector<Subgroup>& Cs,
                                const Subgroup& rel) {
  Bitset interior = H.bits() - union_bits(G, Cs);
  int mx = 0;
  for (int g : interior.members()) mx = std::max(mx, breadth_rel(G, g, rel));
  return mx;
}

inline Subgroup theorem1_recurse(int n, int m, const GroupTable& G,
                                 const FFunction& f, const Subgroup& H,
                                 const std::vector<Subgroup>& Cs, bool root,
                                 std::vector<StepRecord>& steps) {
  auto fail = [&](const std::string& msg) -> void {
    if (root) throw PreconditionViolated("theorem1: " + msg);
    throw InternalContradiction("theorem1 (recursive level): " + msg);
  };
  if (G.prime() == 2) fail("p = 2 not supported");
  if (static_cast<int>(Cs.size()) != G.prime() - 1)
    fail("C-list must have exactly p - 1 entries");
  if (!is_normal(G, H)) fail("H not normal in G");
  for (const auto& C : Cs) {
    if (!is_normal(G, C)) fail("C_i not normal in G");
    if (!C.subset_of(H) || C == H) fail("C_i must be a proper subgroup of H");
  }
  // breadth hypothesis, verified eagerly at every level
  Subgroup fm = f(H, m);
  if (detail::interior_breadth_max(G, H, Cs, fm) > n)
    fail("hypothesis max breadth over H minus the C-union exceeds n");

  StepRecord rec;
  rec.n = n;
  rec.m = m;
  rec.H = H;
  rec.Cs = Cs;

  if (n == 0) {
    rec.kase = StepCase::Base;
    steps.push_back(std::move(rec));
    return H;
  }
  if (fm.subset_of(centralizer(G, H))) {
    rec.kase = StepCase::Central;
    steps.push_back(std::move(rec));
    return H;
  }
  Subgroup fm1 = f(H, m + 1);
  Subgroup P = lemma1_P(G, H, fm1, fm);
  if (P == H)
    throw InternalContradiction(
        "theorem1: P = H although f(H, m) is not central, contradicting f membership");
  rec.P = P;
  Subgroup C12 = generated_subgroup(G, Cs[0].bits() | Cs[1].bits());
  C12.cache_normal(true);
  if (C12 != H) {
    rec.kase = StepCase::CaseA;
    rec.C12 = C12;
    steps.push_back(rec);
    std::vector<Subgroup> next{P, C12};
    for (std::size_t i = 2; i < Cs.size(); ++i) next.push_back(Cs[i]);
    return theorem1_recurse(n - 1, m + 1, G, f, H, next, false, steps);
  }
  rec.kase = StepCase::CaseB;
  Subgroup D1 = lemma2_refine(G, Cs[0], H);
  Subgroup D2 = lemma2_refine(G, Cs[1], H);
  if (D1 == D2)
    throw InternalContradiction("theorem1: D1 = D2 although <C1 u C2> = H");
  std::vector<Subgroup> avoid{P};
  for (std::size_t i = 2; i < Cs.size(); ++i) avoid.push_back(Cs[i]);
  Subgroup D = lemma4_select(G, H, D1, D2, avoid);
  rec.D1 = D1;
  rec.D2 = D2;
  rec.D = D;
  steps.push_back(rec);
  std::vector<Subgroup> next{P.intersect(D), D1.intersect(D2)};
  for (std::size_t i = 2; i < Cs.size(); ++i) next.push_back(Cs[i].intersect(D));
  for (auto& s : next) s.cache_normal(true);
  return theorem1_recurse(n - 1, m + 1, G, f, D, next, false, steps);
}

}  // namespace detail

inline TheoremOneCertificate theorem1(int n, int m, const GroupTable& G,
                                      const FFunction& f, const Subgroup& H,
                                      const std::vector<Subgroup>& Cs) {
  if (n < 0 || m < 1)
    throw PreconditionViolated("theorem1: need n >= 0 and m >= 1");
  TheoremOneCertificate cert;
  cert.n = n;
  cert.m = m;
  cert.H = H;
  cert.Cs = Cs;
  cert.result = detail::theorem1_recurse(n, m, G, f, H, Cs, true, cert.steps);
  // postconditions (B1)-(B4), recomputed from scratch
  cert.B1 = cert.result.subset_of(H);
  cert.index_log_value = index_log(H, cert.result);
  cert.B2 = cert.index_log_value <= n;
  cert.cl_f_value = cl_f(f, cert.result);
  cert.B3 = cert.cl_f_value <= n + m;
  Bitset outside = cert.result.bits() - detail::union_bits(G, Cs);
  cert.witness_element = outside.min_member();
  cert.B4 = outside.any();
  if (!(cert.B1 && cert.B2 && cert.B3 && cert.B4))
    throw InternalContradiction("theorem1: a postcondition failed");
  return cert;
}

struct AuditReport {
  bool pass = true;
  std::string detail;
};

// Replays each step's case predicate and constructions from the recorded
// inputs and checks they reproduce the record bit-identically, then
// re-verifies the postconditions. check_strict_decrease additionally
// verifies b_{f(H,m+1)}(x) < b_{f(H,m)}(x) for all x in H minus P at
// every CASE_A / CASE_B step.
inline AuditReport audit_certificate(const GroupTable& G, const FFunction& f,
                                     const TheoremOneCertificate& cert,
                                     bool check_strict_decrease = true) {
  AuditReport rep;
  auto fail = [&](const std::string& d) {
    rep.pass = false;
    rep.detail = d;
    return rep;
  };
  int n = cert.n, m = cert.m;
  Subgroup H = cert.H;
  std::vector<Subgroup> Cs = cert.Cs;
  for (std::size_t si = 0; si < cert.steps.size(); ++si) {
    const StepRecord& st = cert.steps[si];
    if (st.n != n || st.m != m) return fail("step n/m drift");
    if (st.H != H) return fail("step H mismatch");
    if (st.Cs.size() != Cs.size()) return fail("step C-list size mismatch");
    for (std::size_t i = 0; i < Cs.size(); ++i)
      if (st.Cs[i] != Cs[i]) return fail("step C-list mismatch");
    Subgroup fm = f(H, m);
    if (detail::interior_breadth_max(G, H, Cs, fm) > n)
      return fail("hypothesis fails at replay");
    StepCase expect;
    if (n == 0)
      expect = StepCase::Base;
    else if (fm.subset_of(centralizer(G, H)))
      expect = StepCase::Central;
    else {
      Subgroup P = lemma1_P(G, H, f(H, m + 1), fm);
      if (!st.P || *st.P != P) return fail("recorded P mismatch");
      if (check_strict_decrease) {
        Subgroup fm1 = f(H, m + 1);
        for (int x : (H.bits() - P.bits()).members())
          if (!(breadth_rel(G, x, fm1) < breadth_rel(G, x, fm)))
            return fail("strict-decrease law fails at replay");
      }
      Subgroup C12 = generated_subgroup(G, Cs[0].bits() | Cs[1].bits());
      expect = (C12 != H) ? StepCase::CaseA : StepCase::CaseB;
      if (expect == StepCase::CaseA) {
        if (!st.C12 || *st.C12 != C12) return fail("recorded <C1 u C2> mismatch");
        std::vector<Subgroup> next{P, C12};
        for (std::size_t i = 2; i < Cs.size(); ++i) next.push_back(Cs[i]);
        Cs = std::move(next);
      } else {
        Subgroup D1 = lemma2_refine(G, Cs[0], H);
        Subgroup D2 = lemma2_refine(G, Cs[1], H);
        std::vector<Subgroup> avoid{P};
        for (std::size_t i = 2; i < Cs.size(); ++i) avoid.push_back(Cs[i]);
        Subgroup D = lemma4_select(G, H, D1, D2, avoid);
        if (!st.D1 || *st.D1 != D1 || !st.D2 || *st.D2 != D2 || !st.D || *st.D != D)
          return fail("recorded D1/D2/D mismatch");
        std::vector<Subgroup> next{P.intersect(D), D1.intersect(D2)};
        for (std::size_t i = 2; i < Cs.size(); ++i) next.push_back(Cs[i].intersect(D));
        Cs = std::move(next);
        H = D;
      }
      --n;
      ++m;
    }
    if (st.kase != expect) return fail("case predicate mismatch at replay");
    if (expect == StepCase::Base || expect == StepCase::Central) {
      if (si + 1 != cert.steps.size()) return fail("terminal step is not last");
      if (cert.result != H) return fail("result differs from terminal H");
    }
  }
  if (cert.steps.empty()) return fail("certificate has no steps");
  // postconditions, independently
  if (!cert.result.subset_of(cert.H)) return fail("B1 fails");
  if (index_log(cert.H, cert.result) != cert.index_log_value ||
      cert.index_log_value > cert.n)
    return fail("B2 fails");
  if (cl_f(f, cert.result) != cert.cl_f_value ||
      cert.cl_f_value > cert.n + cert.m)
    return fail("B3 fails");
  Bitset outside = cert.result.bits() - detail::union_bits(G, cert.Cs);
  if (!outside.any() || outside.min_member() != cert.witness_element)
    return fail("B4 fails");
  if (!(cert.B1 && cert.B2 && cert.B3 && cert.B4))
    return fail("recorded postcondition flags are not all true");
  return rep;
}

inline TheoremOneCertificate theorem2(const GroupTable& G) {
  if (G.order() == 1) throw TrivialGroup("theorem2: G must be nontrivial");
  int b = breadth_profile(G).max;
  FFunction f = lower_central_ffunction(G);
  std::vector<Subgroup> Cs(G.prime() - 1, Subgroup::trivial(G));
  TheoremOneCertificate cert =
      theorem1(b, 1, G, f, Subgroup::full(G), Cs);
  // class bound re-derived: cl(N) <= cl_f(N) for the lower central f
  if (index_log(Subgroup::full(G), cert.result) > b ||
      nilpotency_class(G, cert.result) > b + 1)
    throw InternalContradiction("theorem2: conclusion fails independent recomputation");
  return cert;
}

struct Theorem3Result {
  Subgroup N;
  std::vector<TheoremOneCertificate> certs;
  std::vector<int> interior_max;  // per N_k, k = 0..l+1
  int l = 0;
};

inline Theorem3Result theorem3(const GroupTable& G,
                               const std::vector<Subgroup>& Cs, int n) {
  if (static_cast<int>(Cs.size()) != G.prime() - 1)
    throw PreconditionViolated("theorem3: C-list must have exactly p - 1 entries");
  Subgroup full = Subgroup::full(G);
  for (const auto& C : Cs)
    if (!is_normal(G, C) || C == full)
      throw PreconditionViolated("theorem3: C_i must be proper normal subgroups");
  if (detail::interior_breadth_max(G, full, Cs, full) > n)
    throw PreconditionViolated("theorem3: hypothesis max breadth exceeds n");

  FFunction f = lower_central_ffunction(G);
  Theorem3Result res;
  Subgroup Nk = full;
  int maxk = detail::interior_breadth_max(G, Nk, Cs, Nk);
  res.interior_max.push_back(maxk);
  for (int k = 0;; ++k) {
    std::vector<Subgroup> cut;
    for (const auto& C : Cs) cut.push_back(C.intersect(Nk));
    for (auto& s : cut) s.cache_normal(true);
    TheoremOneCertificate cert = theorem1(maxk, 1, G, f, Nk, cut);
    Subgroup Nk1 = cert.result;
    int maxk1 = detail::interior_breadth_max(G, Nk1, Cs, Nk1);
    res.certs.push_back(std::move(cert));
    res.interior_max.push_back(maxk1);
    if (maxk1 == maxk) {
      res.l = k;
      res.N = Nk1;
      break;
    }
    Nk = std::move(Nk1);
    maxk = maxk1;
    if (k > n + 1)
      throw InternalContradiction("theorem3: fixpoint did not arrive within n + 1 steps");
  }
  if (res.l > n + 1)
    throw InternalContradiction("theorem3: l exceeds n + 1");
  // three conclusions, independently recomputed
  if (index_log(full, res.N) > n * (n + 2))
    throw InternalContradiction("theorem3: index bound fails");
  if (!(res.N.bits() - detail::union_bits(G, Cs)).any())
    throw InternalContradiction("theorem3: N is covered by the C-union");
  if (nilpotency_class(G, res.N) > 1 + res.interior_max.back())
    throw InternalContradiction("theorem3: class bound fails");
  return res;
}

struct CoveringReport {
  int family_size = 0;
  bool sampled = false;
  bool clauses_hold = true;   // (1)-(3) for every N_C
  bool product_is_G = false;
  bool intersection_in_center = false;
  Subgroup intersection;      // L = n f(N_C, b(G) + 1)
};

namespace detail {
// Partial normal-subgroup enumeration: stops growing once cap is reached
// and reports completeness instead of throwing.
inline std::pair<std::vector<Subgroup>, bool> normal_subgroups_partial(
    const GroupTable& G, int cap) {
  try {
    return {normal_subgroups(G, cap), true};
  } catch (const EnumerationCapExceeded&) {
    // re-run keeping the first cap subgroups found
    std::vector<Bitset> atoms;
    std::unordered_set<Bitset, BitsetHash> seenA;
    for (const auto& cls : conjugacy_classes(G)) {
      Bitset b = closure_bits(G, cls);
      if (seenA.insert(b).second) atoms.push_back(std::move(b));
    }
    std::unordered_set<Bitset, BitsetHash> found;
    std::vector<Bitset> frontier;
    Bitset triv(G.order());
    triv.set(G.identity());
    found.insert(triv);
    frontier.push_back(triv);
    bool full_bs_done = false;
    while (!frontier.empty() && static_cast<int>(found.size()) < cap) {
      std::vector<Bitset> next;
      for (const auto& s : frontier) {
        for (const auto& a : atoms) {
          if (a.is_subset_of(s)) continue;
          Bitset j = closure_bits(G, (s | a).members());
          if (found.insert(j).second) next.push_back(std::move(j));
          if (static_cast<int>(found.size()) >= cap) break;
        }
        if (static_cast<int>(found.size()) >= cap) break;
      }
      frontier = std::move(next);
    }
    (void)full_bs_done;
    // always include G itself so callers see the top of the lattice
    Bitset all(G.order());
    for (int i = 0; i < G.order(); ++i) all.set(i);
    found.insert(all);
    std::vector<Subgroup> out;
    for (const auto& b : found) {
      Subgroup s = Subgroup::unchecked(G, b);
      s.cache_normal(true);
      out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
      if (a.order() != b.order()) return a.order() < b.order();
      return a.bits().lex_less(b.bits());
    });
    return {std::move(out), false};
  }
}
}  // namespace detail

// Proposition 1 mechanism: a covering family N_C over the proper normal
// subgroups C, whose product is G and whose f-values at level b(G) + 1
// intersect inside the center.
inline CoveringReport prop1_covering(const GroupTable& G, const FFunction& f,
                                     int cap) {
  if (G.order() == 1) throw PreconditionViolated("prop1_covering: G must be nontrivial");
  auto [normals, complete] = detail::normal_subgroups_partial(G, cap);
  CoveringReport rep;
  rep.sampled = !complete;
  int b = breadth_profile(G).max;
  Subgroup full = Subgroup::full(G);
  std::vector<Subgroup> family;
  Bitset inter;
  bool first = true;
  for (const auto& C : normals) {
    if (C == full) continue;
    std::vector<Subgroup> Cs{C};
    for (int i = 1; i < G.prime() - 1; ++i) Cs.push_back(Subgroup::trivial(G));
    TheoremOneCertificate cert = theorem1(b, 1, G, f, full, Cs);
    const Subgroup& NC = cert.result;
    if (index_log(full, NC) > b || cl_f(f, NC) > b + 1 || NC.subset_of(C))
      rep.clauses_hold = false;
    Subgroup fv = f(NC, b + 1);
    inter = first ? fv.bits() : (inter & fv.bits());
    first = false;
    family.push_back(NC);
  }
  rep.family_size = static_cast<int>(family.size());
  if (family.empty()) {
    // G trivial has no proper normal subgroups; nontrivial G always has {e}
    throw InternalContradiction("prop1_covering: empty covering family");
  }
  rep.product_is_G = product_of_normals(G, family) == full;
  rep.intersection = Subgroup::unchecked(G, inter);
  rep.intersection_in_center = rep.intersection.subset_of(center(G));
  return rep;
}

// Restricted covering level: quantifies over the single supplied
// f only. Taking the product of all qualifying subgroups decides sequence
// existence exactly for this f, since products of normal subgroups are
// monotone under adding factors.
inline int cl_restricted(const GroupTable& G, const FFunction& f,
                         int cap = 100000) {
  auto normals = normal_subgroups(G, cap);
  Subgroup full = Subgroup::full(G);
  int b = breadth_profile(G).max;
  std::vector<int> ilog, clf;
  for (const auto& N : normals) {
    ilog.push_back(index_log(full, N));
    clf.push_back(cl_f(f, N));
  }
  for (int n = 1; n <= b + 1; ++n) {
    std::vector<Subgroup> q;
    for (std::size_t i = 0; i < normals.size(); ++i)
      if (ilog[i] <= n - 1 && clf[i] <= n) q.push_back(normals[i]);
    if (!q.empty() && product_of_normals(G, q) == full) return n;
  }
  throw InternalContradiction(
      "cl_restricted: no level up to b(G) + 1 works, contradicting Proposition 1");
}

struct KRestrictedBounds {
  Subgroup lower;                  // one valid sequence's contribution
  std::optional<Subgroup> exact;   // join over all qualifying sequences
  int qualifying_count = 0;
  int cl_restricted_value = 0;
};

inline KRestrictedBounds k_restricted_bounds(const GroupTable& G,
                                             const FFunction& f,
                                             int subset_cap = 15,
                                             int cap = 100000) {
  int nstar = cl_restricted(G, f, cap);
  auto normals = normal_subgroups(G, cap);
  Subgroup full = Subgroup::full(G);
  std::vector<Subgroup> Q;
  for (const auto& N : normals)
    if (index_log(full, N) <= nstar - 1 && cl_f(f, N) <= nstar) Q.push_back(N);
  KRestrictedBounds out;
  out.cl_restricted_value = nstar;
  out.qualifying_count = static_cast<int>(Q.size());
  Bitset inter;
  std::vector<Subgroup> fvals;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    fvals.push_back(f(Q[i], nstar));
    inter = (i == 0) ? fvals.back().bits() : (inter & fvals.back().bits());
  }
  out.lower = Subgroup::unchecked(G, inter);
  Subgroup Z = center(G);
  if (!out.lower.subset_of(Z))
    throw InternalContradiction("k_restricted_bounds: lower bound escapes the center");
  if (out.qualifying_count <= subset_cap) {
    Bitset join(G.order());
    join.set(G.identity());
    int k = out.qualifying_count;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      Bitset u(G.order());
      u.set(G.identity());
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) u = u | Q[i].bits();
      if (!(closure_bits(G, u.members()) ==
            full.bits()))
        continue;
      Bitset s;
      bool first = true;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) {
          s = first ? fvals[i].bits() : (s & fvals[i].bits());
          first = false;
        }
      join = join | s;
    }
    Subgroup ex = generated_subgroup(G, join);
    if (!ex.subset_of(Z))
      throw InternalContradiction("k_restricted_bounds: exact value escapes the center");
    out.exact = std::move(ex);
  }
  return out;
}

inline const char* kRestrictedCaveat =
    "restricted evidence -- neither a proof nor a refutation of the conjecture over all of F_G";

struct ConjectureReport {
  int cl = 0;
  int cl_restricted_value = 0;
  bool cl_le_restricted = false;          // cl(G) <= restricted covering level
  bool gamma_in_lower = false;            // gamma_{Cl+1}(G) vs the lower bound
  std::optional<bool> gamma_in_exact;     // vs the exact restricted K, when computed
  std::string caveat = kRestrictedCaveat;
};

inline ConjectureReport conjecture_report(const GroupTable& G, const FFunction& f,
                                          int subset_cap = 15, int cap = 100000) {
  ConjectureReport rep;
  rep.cl = nilpotency_class(G, Subgroup::full(G));
  KRestrictedBounds kb = k_restricted_bounds(G, f, subset_cap, cap);
  rep.cl_restricted_value = kb.cl_restricted_value;
  rep.cl_le_restricted = rep.cl <= rep.cl_restricted_value;
  FFunction lc = lower_central_ffunction(G);
  Subgroup gamma = lc(Subgroup::full(G), rep.cl_restricted_value + 1);
  rep.gamma_in_lower = gamma.subset_of(kb.lower);
  if (kb.exact) rep.gamma_in_exact = gamma.subset_of(*kb.exact);
  return rep;
}

struct SurveyRow {
  std::string label;
  int p = 0;
  int order = 0;
  int breadth = 0;
  int cl = 0;
  bool status = false;  // cl <= b + 1
  int t2_index = 0;
  int t2_class = 0;
  long long ms = 0;
};

// cl(G) and b(G) by exhaustive scans with no recursive machinery, then
// the theorem2 run cross-checked against its certificate.
inline SurveyRow class_breadth_check(const GroupTable& G) {
  auto t0 = std::chrono::steady_clock::now();
  SurveyRow row;
  row.label = G.label();
  row.p = G.prime();
  row.order = G.order();
  row.breadth = breadth_profile(G).max;
  row.cl = nilpotency_class(G, Subgroup::full(G));
  row.status = row.cl <= row.breadth + 1;
  if (G.order() > 1) {
    TheoremOneCertificate cert = theorem2(G);
    FFunction f = lower_central_ffunction(G);
    AuditReport audit = audit_certificate(G, f, cert);
    if (!audit.pass)
      throw InternalContradiction("class_breadth_check: theorem2 certificate fails audit: " +
                                  audit.detail);
    row.t2_index = cert.index_log_value;
    row.t2_class = nilpotency_class(G, cert.result);
  }
  row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
               .count();
  return row;
}

}  // namespace cbc

#endif
