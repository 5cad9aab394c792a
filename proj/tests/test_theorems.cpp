#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"

using namespace cbc;
using namespace cbc_test;

TEST_CASE("theorem2 on heis3 reproduces the hand trace") {
  const GroupTable& G = heis3();
  TheoremOneCertificate cert = theorem2(G);
  REQUIRE(cert.steps.size() == 2);
  CHECK(cert.n == 1);
  CHECK(cert.m == 1);
  CHECK(cert.steps[0].kase == StepCase::CaseA);
  REQUIRE(cert.steps[0].P.has_value());
  CHECK(*cert.steps[0].P == center(G));
  CHECK(cert.steps[1].kase == StepCase::Base);
  CHECK(cert.steps[1].n == 0);
  CHECK(cert.steps[1].m == 2);
  CHECK(cert.result == Subgroup::full(G));
  CHECK(cert.B1);
  CHECK(cert.B2);
  CHECK(cert.B3);
  CHECK(cert.B4);
  CHECK(cert.index_log_value == 0);
  CHECK(cert.cl_f_value == 2);
  CHECK(cert.witness_element >= 0);
}

TEST_CASE("theorem2 across the corpus with audits") {
  for (const GroupTable* Gp : {&heis3(), &wreath33(), &ea32(), &ut43()}) {
    const GroupTable& G = *Gp;
    TheoremOneCertificate cert = theorem2(G);
    CHECK(cert.B1);
    CHECK(cert.B2);
    CHECK(cert.B3);
    CHECK(cert.B4);
    int b = breadth_profile(G).max;
    CHECK(cert.index_log_value <= b);
    CHECK(nilpotency_class(G, cert.result) <= b + 1);
    FFunction f = lower_central_ffunction(G);
    AuditReport rep = audit_certificate(G, f, cert);
    INFO(G.label() << ": " << rep.detail);
    CHECK(rep.pass);
  }
}

TEST_CASE("theorem2 rejects the trivial group") {
  auto t = GroupTable::from_generators(
      parse_group_file("p: 3\nkind: perm\ngen e: ()\n"));
  CHECK_THROWS_AS(theorem2(t), TrivialGroup);
}

TEST_CASE("theorem1 precondition failures throw at the root") {
  const GroupTable& G = heis3();
  FFunction f = lower_central_ffunction(G);
  Subgroup full = Subgroup::full(G);
  Subgroup triv = Subgroup::trivial(G);
  std::vector<Subgroup> Cs{triv, triv};
  CHECK_THROWS_AS(theorem1(-1, 1, G, f, full, Cs), PreconditionViolated);
  CHECK_THROWS_AS(theorem1(1, 0, G, f, full, Cs), PreconditionViolated);
  // wrong C-list length (p - 1 = 2 required)
  CHECK_THROWS_AS(theorem1(1, 1, G, f, full, {triv}), PreconditionViolated);
  // C_i = H is not proper
  CHECK_THROWS_AS(theorem1(1, 1, G, f, full, {full, triv}), PreconditionViolated);
  // non-normal H
  Subgroup a = generated_subgroup(G, std::vector<int>{G.generator_indices()[0]});
  CHECK_THROWS_AS(theorem1(1, 1, G, f, a, Cs), PreconditionViolated);
  // hypothesis fails: heis3 has breadth 1, so n = 0 with trivial C-list is out
  CHECK_THROWS_AS(theorem1(0, 1, G, f, full, Cs), PreconditionViolated);
}

TEST_CASE("audit_certificate detects tampering") {
  const GroupTable& G = heis3();
  FFunction f = lower_central_ffunction(G);
  TheoremOneCertificate good = theorem2(G);
  REQUIRE(audit_certificate(G, f, good).pass);

  TheoremOneCertificate bad = good;
  bad.steps[0].P = Subgroup::trivial(G);
  CHECK_FALSE(audit_certificate(G, f, bad).pass);

  bad = good;
  bad.steps[0].n = 5;
  CHECK_FALSE(audit_certificate(G, f, bad).pass);

  bad = good;
  bad.result = center(G);
  CHECK_FALSE(audit_certificate(G, f, bad).pass);

  bad = good;
  bad.witness_element = (good.witness_element + 1) % G.order();
  CHECK_FALSE(audit_certificate(G, f, bad).pass);

  bad = good;
  bad.steps.clear();
  CHECK_FALSE(audit_certificate(G, f, bad).pass);

  bad = good;
  bad.cl_f_value = 0;
  CHECK_FALSE(audit_certificate(G, f, bad).pass);
}

TEST_CASE("theorem1 randomized draws with audits") {
  std::mt19937 rng(101);
  for (const GroupTable* Gp : {&heis3(), &wreath33()}) {
    const GroupTable& G = *Gp;
    FFunction f = lower_central_ffunction(G);
    auto ns = normal_subgroups(G, 1000);
    std::uniform_int_distribution<std::size_t> pick(0, ns.size() - 1);
    int done = 0;
    while (done < 25) {
      const Subgroup& H = ns[pick(rng)];
      if (H.order() == 1) continue;
      Subgroup c1 = ns[pick(rng)].intersect(H);
      Subgroup c2 = ns[pick(rng)].intersect(H);
      if (c1 == H || c2 == H) continue;
      c1.cache_normal(true);
      c2.cache_normal(true);
      std::vector<Subgroup> Cs{c1, c2};
      int n = cbc::detail::interior_breadth_max(G, H, Cs, H);
      TheoremOneCertificate cert = theorem1(n, 1, G, f, H, Cs);
      AuditReport rep = audit_certificate(G, f, cert);
      INFO(G.label() << " draw " << done << ": " << rep.detail);
      REQUIRE(rep.pass);
      ++done;
    }
  }
}

TEST_CASE("theorem3 with the trivial C-list") {
  for (const GroupTable* Gp : {&heis3(), &wreath33(), &ut43()}) {
    const GroupTable& G = *Gp;
    int n = breadth_profile(G).max;
    std::vector<Subgroup> Cs(G.prime() - 1, Subgroup::trivial(G));
    Theorem3Result res = theorem3(G, Cs, n);
    CHECK(res.l <= n + 1);
    CHECK(static_cast<int>(res.certs.size()) == res.l + 1);
    CHECK(res.interior_max.size() == res.certs.size() + 1);
    CHECK(index_log(Subgroup::full(G), res.N) <= n * (n + 2));
    CHECK((res.N.bits() - cbc::detail::union_bits(G, Cs)).any());
    CHECK(nilpotency_class(G, res.N) <= 1 + res.interior_max.back());
    // the stop rule really is equality of consecutive interior maxima
    int sz = static_cast<int>(res.interior_max.size());
    CHECK(res.interior_max[sz - 1] == res.interior_max[sz - 2]);
    for (int k = 0; k + 2 < sz; ++k)
      CHECK(res.interior_max[k + 1] < res.interior_max[k]);
  }
}

TEST_CASE("theorem3 with a nontrivial C-list") {
  const GroupTable& G = wreath33();
  Subgroup Z = center(G);
  std::vector<Subgroup> Cs{Z, Subgroup::trivial(G)};
  int n = cbc::detail::interior_breadth_max(G, Subgroup::full(G), Cs,
                                            Subgroup::full(G));
  Theorem3Result res = theorem3(G, Cs, n);
  CHECK((res.N.bits() - cbc::detail::union_bits(G, Cs)).any());
  CHECK(nilpotency_class(G, res.N) <= 1 + res.interior_max.back());
}

TEST_CASE("theorem3 precondition failures") {
  const GroupTable& G = heis3();
  Subgroup full = Subgroup::full(G);
  Subgroup triv = Subgroup::trivial(G);
  CHECK_THROWS_AS(theorem3(G, {triv}, 1), PreconditionViolated);
  CHECK_THROWS_AS(theorem3(G, {full, triv}, 1), PreconditionViolated);
  CHECK_THROWS_AS(theorem3(G, {triv, triv}, 0), PreconditionViolated);
}

TEST_CASE("prop1_covering on the small corpus") {
  for (const GroupTable* Gp : {&heis3(), &wreath33(), &ea32()}) {
    const GroupTable& G = *Gp;
    FFunction f = lower_central_ffunction(G);
    CoveringReport rep = prop1_covering(G, f, 100000);
    CHECK_FALSE(rep.sampled);
    CHECK(rep.clauses_hold);
    CHECK(rep.product_is_G);
    CHECK(rep.intersection_in_center);
    CHECK(rep.intersection.subset_of(center(G)));
  }
  // heis3 has 6 proper normal subgroups
  FFunction f = lower_central_ffunction(heis3());
  CHECK(prop1_covering(heis3(), f, 100000).family_size == 6);
}

TEST_CASE("prop1_covering under a tight cap reports sampling") {
  const GroupTable& G = wreath33();
  FFunction f = lower_central_ffunction(G);
  CoveringReport rep = prop1_covering(G, f, 5);
  CHECK(rep.sampled);
  CHECK(rep.product_is_G);
  CHECK(rep.intersection_in_center);
}

TEST_CASE("cl_restricted") {
  FFunction fe = lower_central_ffunction(ea32());
  CHECK(cl_restricted(ea32(), fe) == 1);
  FFunction fh = lower_central_ffunction(heis3());
  CHECK(cl_restricted(heis3(), fh) == 2);
  for (const GroupTable* Gp : {&heis3(), &wreath33(), &ea32()}) {
    FFunction f = lower_central_ffunction(*Gp);
    CHECK(cl_restricted(*Gp, f) <= breadth_profile(*Gp).max + 1);
  }
}

TEST_CASE("k_restricted_bounds on heis3") {
  const GroupTable& G = heis3();
  FFunction f = lower_central_ffunction(G);
  KRestrictedBounds kb = k_restricted_bounds(G, f);
  CHECK(kb.cl_restricted_value == 2);
  CHECK(kb.qualifying_count == 5);
  CHECK(kb.lower.order() == 1);
  REQUIRE(kb.exact.has_value());
  CHECK(kb.exact->order() == 3);
  CHECK(kb.exact->subset_of(center(G)));
  CHECK(kb.lower.subset_of(*kb.exact));
}

TEST_CASE("k_restricted_bounds skips the exact join above the subset cap") {
  const GroupTable& G = heis3();
  FFunction f = lower_central_ffunction(G);
  KRestrictedBounds kb = k_restricted_bounds(G, f, 2);
  CHECK_FALSE(kb.exact.has_value());
  CHECK(kb.lower.subset_of(center(G)));
}

TEST_CASE("conjecture_report") {
  // evidence only: the booleans must be internally consistent, and may
  // legitimately be false since restricted Cl <= Cl(G)
  for (const GroupTable* Gp : {&heis3(), &wreath33(), &ea32()}) {
    const GroupTable& G = *Gp;
    FFunction f = lower_central_ffunction(G);
    ConjectureReport rep = conjecture_report(G, f);
    CHECK(rep.cl == nilpotency_class(G, Subgroup::full(G)));
    CHECK(rep.cl_le_restricted == (rep.cl <= rep.cl_restricted_value));
    CHECK(rep.cl_restricted_value <= breadth_profile(G).max + 1);
    CHECK(rep.caveat == std::string(kRestrictedCaveat));
  }
  // frozen: heis3 and ea32 come out consistent with the conjectures
  for (const GroupTable* Gp : {&heis3(), &ea32()}) {
    FFunction f = lower_central_ffunction(*Gp);
    ConjectureReport rep = conjecture_report(*Gp, f);
    CHECK(rep.cl_le_restricted);
    CHECK(rep.gamma_in_lower);
    if (rep.gamma_in_exact) CHECK(*rep.gamma_in_exact);
  }
}

TEST_CASE("class_breadth_check frozen rows") {
  SurveyRow h = class_breadth_check(heis3());
  CHECK(h.p == 3);
  CHECK(h.order == 27);
  CHECK(h.breadth == 1);
  CHECK(h.cl == 2);
  CHECK(h.status);

  SurveyRow w = class_breadth_check(wreath33());
  CHECK(w.order == 81);
  CHECK(w.breadth == 2);
  CHECK(w.cl == 3);
  CHECK(w.status);

  SurveyRow u = class_breadth_check(ut43());
  CHECK(u.order == 729);
  CHECK(u.breadth == 3);
  CHECK(u.cl == 3);
  CHECK(u.status);
  CHECK(u.t2_class <= u.breadth + 1);

  SurveyRow e = class_breadth_check(ea32());
  CHECK(e.breadth == 0);
  CHECK(e.cl == 1);
  CHECK(e.status);
}

TEST_CASE("heisenberg(5) frozen values") {
  auto G5 = GroupTable::from_generators(heisenberg(5));
  CHECK(G5.order() == 125);
  CHECK(breadth_profile(G5).max == 1);
  CHECK(nilpotency_class(G5, Subgroup::full(G5)) == 2);
  CHECK(conjugacy_classes(G5).size() == 29);
  SurveyRow r = class_breadth_check(G5);
  CHECK(r.status);
}

TEST_CASE("extraspecial exponent p^2 frozen values") {
  auto M = GroupTable::from_generators(extraspecial(3, 9));
  CHECK(M.order() == 27);
  CHECK(breadth_profile(M).max == 1);
  CHECK(nilpotency_class(M, Subgroup::full(M)) == 2);
  int mx = 0;
  for (int g = 0; g < M.order(); ++g) mx = std::max(mx, M.element_order(g));
  CHECK(mx == 9);
  CHECK(normal_subgroups(M, 100).size() == 7);
  CHECK(class_breadth_check(M).status);
}
