#ifndef CBC_BREADTH_HPP
#define CBC_BREADTH_HPP

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cbc/group.hpp"

namespace cbc {

// b_H(g) = log_p |H : H n Z_G(g)|
inline int breadth_rel(const GroupTable& G, int g, const Subgroup& H) {
  int c = 0;
  for (int h : H.members())
    if (G.mul(h, g) == G.mul(g, h)) ++c;
  return G.log_p_index(H.order(), c);
}

struct BreadthProfile {
  std::vector<int> per_element;
  int max = 0;
};

inline BreadthProfile breadth_profile(const GroupTable& G) {
  BreadthProfile bp;
  bp.per_element.resize(G.order());
  for (int g = 0; g < G.order(); ++g) {
    int c = 0;
    for (int x = 0; x < G.order(); ++x)
      if (G.mul(x, g) == G.mul(g, x)) ++c;
    bp.per_element[g] = G.log_p_index(G.order(), c);
    bp.max = std::max(bp.max, bp.per_element[g]);
  }
  return bp;
}

// gamma_1 = H, gamma_{i+1} = [gamma_i, H]; strictly decreasing chain ending
// at the stable term (trivial, for subgroups of a p-group).
inline std::vector<Subgroup> lower_central_series(const GroupTable& G,
                                                  const Subgroup& H) {
  std::vector<Subgroup> series{H};
  for (;;) {
    Subgroup next = commutator_subgroup(G, series.back(), H);
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline int nilpotency_class(const GroupTable& G, const Subgroup& H) {
  auto s = lower_central_series(G, H);
  // last term is trivial for p-groups; cl = number of strict steps
  return static_cast<int>(s.size()) - 1;
}

// A member of the admissible function class: (normal subgroup, level) ->
// normal subgroup, monotone in the subgroup, antitone in the level, with
// strict commutator decrease off the centralizer. Memoized on the member
// bit set, since the same subgroup reappears along different recursion
// paths.
class FFunction {
 public:
  using Eval = std::function<Subgroup(const GroupTable&, const Subgroup&, int)>;

  FFunction(const GroupTable& G, std::string name, Eval eval)
      : G_(&G), name_(std::move(name)), eval_(std::move(eval)) {}

  const std::string& name() const { return name_; }
  const GroupTable& group() const { return *G_; }

  Subgroup operator()(const Subgroup& N, int i) const {
    std::pair<std::size_t, int> key{N.bits().hash(), i};
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end() && it->second.first == N.bits())
        return it->second.second;
    }
    Subgroup r = eval_(*G_, N, i);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(key, std::make_pair(N.bits(), r));
    return r;
  }

 private:
  const GroupTable* G_;
  std::string name_;
  Eval eval_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, int>, std::pair<Bitset, Subgroup>> memo_;
};

inline FFunction lower_central_ffunction(const GroupTable& G) {
  return FFunction(G, "lower-central",
                   [](const GroupTable& g, const Subgroup& N, int i) {
                     Subgroup cur = N;
                     for (int k = 1; k < i; ++k) {
                       Subgroup next = commutator_subgroup(g, cur, N);
                       if (next == cur) break;
                       cur = std::move(next);
                     }
                     return cur;
                   });
}

// cl_f(N) = min{ n >= 1 : f(N, n) <= Z_G(N) }, capped so that functions
// outside the class surface as ClFDiverged instead of looping.
inline int cl_f(const FFunction& f, const Subgroup& N) {
  const GroupTable& G = f.group();
  Subgroup Z = centralizer(G, N);
  int cap = G.p_exponent() + 2;
  for (int n = 1; n <= cap; ++n)
    if (f(N, n).subset_of(Z)) return n;
  throw ClFDiverged("cl_f did not stabilize within " + std::to_string(cap) +
                    " levels; f is outside the function class or buggy");
}

struct FMembershipReport {
  bool pass = true;
  std::string first_violation;  // empty when pass
  int sample_size = 0;
};

// Partial verifier for the two defining conditions, on a finite sample of
// normal subgroups and levels 1..depth. Definition quantifies over all
// normal subgroups; no finite certificate exists for arbitrary f.
inline FMembershipReport check_F_membership(const FFunction& f,
                                            const std::vector<Subgroup>& normals,
                                            int depth) {
  const GroupTable& G = f.group();
  FMembershipReport rep;
  rep.sample_size = static_cast<int>(normals.size());
  for (const auto& N : normals)
    if (!is_normal(G, N))
      throw PreconditionViolated("check_F_membership: sample member not normal");
  // condition 1: N <= M, j <= i  =>  f(N, i) <= f(M, j)
  for (const auto& N : normals)
    for (const auto& M : normals) {
      if (!N.subset_of(M)) continue;
      for (int i = 1; i <= depth; ++i)
        for (int j = 1; j <= i; ++j)
          if (!f(N, i).subset_of(f(M, j))) {
            rep.pass = false;
            rep.first_violation =
                "condition 1 at |N|=" + std::to_string(N.order()) +
                " |M|=" + std::to_string(M.order()) + " i=" + std::to_string(i) +
                " j=" + std::to_string(j);
            return rep;
          }
    }
  // condition 2: f(N, i) not <= Z_G(N)  =>  [N, f(N,i)] != [N, f(N,i+1)]
  for (const auto& N : normals) {
    Subgroup Z = centralizer(G, N);
    for (int i = 1; i < depth; ++i) {
      Subgroup fi = f(N, i);
      if (fi.subset_of(Z)) continue;
      if (commutator_subgroup(G, N, fi) == commutator_subgroup(G, N, f(N, i + 1))) {
        rep.pass = false;
        rep.first_violation = "condition 2 at |N|=" + std::to_string(N.order()) +
                              " i=" + std::to_string(i);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace cbc

#endif
