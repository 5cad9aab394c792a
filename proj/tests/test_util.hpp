#ifndef CBC_TEST_UTIL_HPP
#define CBC_TEST_UTIL_HPP

// Shared fixtures and independent brute-force oracles. The oracles here
// deliberately avoid the library's subgroup machinery: naive loops over
// raw indices only, so they stay an independent route.

#include <algorithm>
#include <set>
#include <vector>

#include "cbc/cbc.hpp"

namespace cbc_test {

inline const cbc::GroupTable& heis3() {
  static cbc::GroupTable G = cbc::GroupTable::from_generators(cbc::heisenberg(3));
  return G;
}

inline const cbc::GroupTable& wreath33() {
  static cbc::GroupTable G = cbc::GroupTable::from_generators(cbc::wreath_cyclic(3));
  return G;
}

inline const cbc::GroupTable& ea32() {
  static cbc::GroupTable G =
      cbc::GroupTable::from_generators(cbc::elementary_abelian(3, 2));
  return G;
}

inline const cbc::GroupTable& ut43() {
  static cbc::GroupTable G = cbc::GroupTable::from_generators(cbc::unitriangular(4, 3));
  return G;
}

// naive set closure under the group multiplication
inline std::set<int> naive_closure(const cbc::GroupTable& G, std::set<int> s) {
  s.insert(G.identity());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int b : cur)
        if (s.insert(G.mul(a, b)).second) grew = true;
  }
  return s;
}

// every subgroup, by breadth-first single-element extensions; only sane for
// small orders
inline std::vector<std::set<int>> naive_all_subgroups(const cbc::GroupTable& G) {
  std::set<std::set<int>> found;
  std::vector<std::set<int>> frontier;
  std::set<int> triv{G.identity()};
  found.insert(triv);
  frontier.push_back(triv);
  while (!frontier.empty()) {
    std::vector<std::set<int>> next;
    for (const auto& s : frontier)
      for (int x = 0; x < G.order(); ++x) {
        if (s.count(x)) continue;
        std::set<int> t = s;
        t.insert(x);
        t = naive_closure(G, t);
        if (found.insert(t).second) next.push_back(std::move(t));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

inline bool naive_is_normal(const cbc::GroupTable& G, const std::set<int>& s) {
  for (int g = 0; g < G.order(); ++g)
    for (int h : s)
      if (!s.count(G.mul(G.mul(G.inv(g), h), g))) return false;
  return true;
}

// 3x3 unitriangular matrices over F_p as flat arrays; an arithmetic route
// that never touches GroupTable
struct Mat3 {
  int p;
  int e[9];
  Mat3 mul(const Mat3& o) const {
    Mat3 r{p, {}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int s = 0;
        for (int k = 0; k < 3; ++k) s += e[i * 3 + k] * o.e[k * 3 + j];
        r.e[i * 3 + j] = s % p;
      }
    return r;
  }
  bool operator<(const Mat3& o) const {
    for (int i = 0; i < 9; ++i)
      if (e[i] != o.e[i]) return e[i] < o.e[i];
    return false;
  }
  bool operator==(const Mat3& o) const {
    return !(*this < o) && !(o < *this);
  }
};

inline Mat3 mat3_id(int p) { return Mat3{p, {1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

inline std::set<Mat3> mat3_closure(int p, std::vector<Mat3> gens) {
  std::set<Mat3> s{mat3_id(p)};
  for (const auto& g : gens) s.insert(g);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mat3> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (s.insert(a.mul(b)).second) grew = true;
  }
  return s;
}

}  // namespace cbc_test

#endif
