#ifndef CBC_FAMILIES_HPP
#define CBC_FAMILIES_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "cbc/action.hpp"
#include "cbc/errors.hpp"

namespace cbc {

namespace detail {
inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline void check_family_order(long long order, int cap = 20000) {
  if (order > cap)
    throw OrderCapExceeded("family order " + std::to_string(order) +
                           " exceeds cap " + std::to_string(cap));
}

inline Action unitriangular_gen(int n, int p, int i) {
  std::vector<std::uint16_t> e(n * n, 0);
  for (int k = 0; k < n; ++k) e[k * n + k] = 1;
  e[i * n + (i + 1)] = 1;
  return Action::matrix(n, p, std::move(e));
}
}  // namespace detail

// Full upper unitriangular group UT(n, p), order p^(n(n-1)/2).
inline GroupSpec unitriangular(int n, int p) {
  require_odd_prime(p);
  if (n < 2) throw PreconditionViolated("unitriangular: need n >= 2");
  detail::check_family_order(detail::ipow(p, n * (n - 1) / 2));
  GroupSpec s;
  s.prime = p;
  s.kind = ActionKind::Matrix;
  s.matrix_dim = n;
  s.label = "UT(" + std::to_string(n) + "," + std::to_string(p) + ")";
  for (int i = 0; i < n - 1; ++i) {
    s.names.push_back(std::string(1, static_cast<char>('a' + i)));
    s.generators.push_back(detail::unitriangular_gen(n, p, i));
  }
  return s;
}

// 3x3 upper unitriangular matrices over F_p: order p^3, class 2.
inline GroupSpec heisenberg(int p) {
  GroupSpec s = unitriangular(3, p);
  s.label = "heisenberg(" + std::to_string(p) + ")";
  return s;
}

// Extraspecial of order p^3. exponent must be p (Heisenberg realization) or
// p^2 (the modular group, realized by permutations of Z_{p^2}: x -> x + 1
// and x -> (1 + p) x, the latter of order p since (1+p)^p = 1 mod p^2).
inline GroupSpec extraspecial(int p, int exponent) {
  require_odd_prime(p);
  if (exponent == p) {
    GroupSpec s = heisenberg(p);
    s.label = "extraspecial(" + std::to_string(p) + ",exp_p)";
    return s;
  }
  if (exponent != p * p)
    throw PreconditionViolated("extraspecial: exponent must be p or p^2");
  detail::check_family_order(detail::ipow(p, 3));
  int n = p * p;
  std::vector<std::uint16_t> a(n), b(n);
  for (int x = 0; x < n; ++x) {
    a[x] = static_cast<std::uint16_t>((x + 1) % n);
    b[x] = static_cast<std::uint16_t>(((1 + p) * x) % n);
  }
  GroupSpec s;
  s.prime = p;
  s.kind = ActionKind::Perm;
  s.names = {"a", "b"};
  s.generators = {Action::perm(std::move(a)), Action::perm(std::move(b))};
  s.label = "extraspecial(" + std::to_string(p) + ",exp_p2)";
  return s;
}

// Z_p wr Z_p on p^2 points (base coordinates plus the top cycle): order
// p^(p+1), maximal class.
inline GroupSpec wreath_cyclic(int p) {
  require_odd_prime(p);
  detail::check_family_order(detail::ipow(p, p + 1));
  int n = p * p;
  std::vector<std::uint16_t> a(n), t(n);
  for (int x = 0; x < n; ++x) a[x] = static_cast<std::uint16_t>(x);
  for (int j = 0; j < p; ++j) a[j] = static_cast<std::uint16_t>((j + 1) % p);
  for (int blk = 0; blk < p; ++blk)
    for (int off = 0; off < p; ++off)
      t[blk * p + off] = static_cast<std::uint16_t>(((blk + 1) % p) * p + off);
  GroupSpec s;
  s.prime = p;
  s.kind = ActionKind::Perm;
  s.names = {"a", "t"};
  s.generators = {Action::perm(std::move(a)), Action::perm(std::move(t))};
  s.label = "wreath_cyclic(" + std::to_string(p) + ")";
  return s;
}

inline GroupSpec elementary_abelian(int p, int k) {
  require_odd_prime(p);
  if (k < 1) throw PreconditionViolated("elementary_abelian: need k >= 1");
  detail::check_family_order(detail::ipow(p, k));
  GroupSpec s;
  s.prime = p;
  s.kind = ActionKind::Perm;
  s.label = "elementary_abelian(" + std::to_string(p) + "," + std::to_string(k) + ")";
  for (int i = 0; i < k; ++i) {
    std::vector<std::uint16_t> g(p * k);
    for (int x = 0; x < p * k; ++x) g[x] = static_cast<std::uint16_t>(x);
    for (int j = 0; j < p; ++j) g[i * p + j] = static_cast<std::uint16_t>(i * p + (j + 1) % p);
    s.names.push_back("g" + std::to_string(i + 1));
    s.generators.push_back(Action::perm(std::move(g)));
  }
  return s;
}

// Faithful permutation realization of a matrix spec: the action on the
// p^dim column vectors, enumerated lexicographically (first coordinate
// most significant).
inline GroupSpec matrix_spec_to_perm(const GroupSpec& ms) {
  if (ms.kind != ActionKind::Matrix) return ms;
  int p = ms.prime, d = ms.matrix_dim;
  long long npts = detail::ipow(p, d);
  if (npts > 20000)
    throw OrderCapExceeded("matrix_spec_to_perm: too many points");
  GroupSpec s;
  s.prime = p;
  s.kind = ActionKind::Perm;
  s.names = ms.names;
  s.label = ms.label;
  for (const auto& M : ms.generators) {
    std::vector<std::uint16_t> img(npts);
    std::vector<int> v(d, 0);
    for (long long idx = 0; idx < npts; ++idx) {
      long long widx = 0;
      for (int i = 0; i < d; ++i) {
        int s2 = 0;
        for (int j = 0; j < d; ++j) s2 += M.data()[i * d + j] * v[j];
        widx = widx * p + (s2 % p);
      }
      img[idx] = static_cast<std::uint16_t>(widx);
      int k = d - 1;
      while (k >= 0 && v[k] == p - 1) v[k--] = 0;
      if (k >= 0) ++v[k];
    }
    s.generators.push_back(Action::perm(std::move(img)));
  }
  return s;
}

inline GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b) {
  if (a.prime != b.prime)
    throw PreconditionViolated("direct_product: factors must share p");
  GroupSpec pa = matrix_spec_to_perm(a);
  GroupSpec pb = matrix_spec_to_perm(b);
  int da = 0;
  for (const auto& g : pa.generators) da = std::max(da, g.degree());
  int db = 0;
  for (const auto& g : pb.generators) db = std::max(db, g.degree());
  GroupSpec s;
  s.prime = a.prime;
  s.kind = ActionKind::Perm;
  s.label = a.label + " x " + b.label;
  for (std::size_t i = 0; i < pa.generators.size(); ++i) {
    std::vector<std::uint16_t> img(da + db);
    for (int x = 0; x < da; ++x)
      img[x] = (x < pa.generators[i].degree()) ? pa.generators[i].data()[x]
                                               : static_cast<std::uint16_t>(x);
    for (int x = 0; x < db; ++x) img[da + x] = static_cast<std::uint16_t>(da + x);
    s.names.push_back("l" + std::to_string(i + 1));
    s.generators.push_back(Action::perm(std::move(img)));
  }
  for (std::size_t i = 0; i < pb.generators.size(); ++i) {
    std::vector<std::uint16_t> img(da + db);
    for (int x = 0; x < da; ++x) img[x] = static_cast<std::uint16_t>(x);
    for (int x = 0; x < db; ++x)
      img[da + x] = static_cast<std::uint16_t>(
          da + ((x < pb.generators[i].degree()) ? pb.generators[i].data()[x] : x));
    s.names.push_back("r" + std::to_string(i + 1));
    s.generators.push_back(Action::perm(std::move(img)));
  }
  return s;
}

// Family members for a survey run: every group of the named family with the
// given p and order within the bound.
inline std::vector<GroupSpec> survey_specs(const std::string& family, int p,
                                           long long max_order) {
  std::vector<GroupSpec> out;
  auto fits = [&](long long o) { return o <= max_order; };
  if (family == "heisenberg") {
    if (fits(detail::ipow(p, 3))) out.push_back(heisenberg(p));
  } else if (family == "unitriangular") {
    for (int n = 2;; ++n) {
      long long o = detail::ipow(p, n * (n - 1) / 2);
      if (!fits(o) || o > 20000) break;
      out.push_back(unitriangular(n, p));
    }
  } else if (family == "extraspecial") {
    if (fits(detail::ipow(p, 3))) {
      out.push_back(extraspecial(p, p));
      out.push_back(extraspecial(p, p * p));
    }
  } else if (family == "wreath_cyclic") {
    if (fits(detail::ipow(p, p + 1)) && detail::ipow(p, p + 1) <= 20000)
      out.push_back(wreath_cyclic(p));
  } else if (family == "elementary_abelian") {
    for (int k = 1;; ++k) {
      long long o = detail::ipow(p, k);
      if (!fits(o) || o > 20000) break;
      out.push_back(elementary_abelian(p, k));
    }
  } else {
    throw PreconditionViolated("unknown family: " + family);
  }
  return out;
}

}  // namespace cbc

#endif
