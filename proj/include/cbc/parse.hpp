#ifndef CBC_PARSE_HPP
#define CBC_PARSE_HPP

#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cbc/action.hpp"
#include "cbc/errors.hpp"

namespace cbc {

namespace detail {
inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

// Line-oriented group definition format:
//   # comment
//   p: 3
//   kind: perm | matrix
//   n: 3                      (matrix kind only, before the generators)
//   gen a: (1 2 3)(4 5)       (perm: 1-based points, disjoint cycles)
//   gen b: 1 1 0; 0 1 0; 0 0 1   (matrix: rows separated by ';')
inline GroupSpec parse_group_file(const std::string& text) {
  GroupSpec spec;
  bool have_p = false, have_kind = false;
  int dim = 0;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError(lineno, "expected 'key: value'");
    std::string key = detail::trim(line.substr(0, colon));
    std::string val = detail::trim(line.substr(colon + 1));
    if (key == "p") {
      int p = 0;
      try {
        p = std::stoi(val);
      } catch (...) {
        throw ParseError(lineno, "p is not an integer");
      }
      require_odd_prime(p);
      spec.prime = p;
      have_p = true;
    } else if (key == "kind") {
      if (val == "perm")
        spec.kind = ActionKind::Perm;
      else if (val == "matrix")
        spec.kind = ActionKind::Matrix;
      else
        throw ParseError(lineno, "kind must be 'perm' or 'matrix'");
      have_kind = true;
    } else if (key == "n") {
      try {
        dim = std::stoi(val);
      } catch (...) {
        throw ParseError(lineno, "n is not an integer");
      }
      if (dim < 1) throw ParseError(lineno, "n must be positive");
      spec.matrix_dim = dim;
    } else if (key.rfind("gen ", 0) == 0 || key == "gen") {
      if (!have_p || !have_kind)
        throw ParseError(lineno, "p and kind must precede generators");
      std::string name = detail::trim(key.size() > 3 ? key.substr(4) : "");
      if (name.empty()) throw ParseError(lineno, "generator needs a name");
      if (spec.kind == ActionKind::Perm) {
        // parse disjoint cycles of 1-based points
        std::vector<std::vector<int>> cycles;
        std::set<int> used;
        std::size_t i = 0;
        int maxpt = 0;
        while (i < val.size()) {
          if (std::isspace(static_cast<unsigned char>(val[i]))) {
            ++i;
            continue;
          }
          if (val[i] != '(') throw ParseError(lineno, "expected '(' in cycle list");
          std::size_t close = val.find(')', i);
          if (close == std::string::npos) throw ParseError(lineno, "unclosed cycle");
          std::istringstream cs(val.substr(i + 1, close - i - 1));
          std::vector<int> cyc;
          int pt;
          while (cs >> pt) {
            if (pt < 1) throw ParseError(lineno, "points are 1-based positive integers");
            if (!used.insert(pt).second)
              throw ParseError(lineno, "repeated point " + std::to_string(pt));
            cyc.push_back(pt - 1);
            maxpt = std::max(maxpt, pt);
          }
          if (!cs.eof()) throw ParseError(lineno, "bad cycle entry");
          if (!cyc.empty()) cycles.push_back(std::move(cyc));
          i = close + 1;
        }
        std::vector<std::uint16_t> img(maxpt > 0 ? maxpt : 1);
        for (std::size_t x = 0; x < img.size(); ++x) img[x] = static_cast<std::uint16_t>(x);
        for (const auto& cyc : cycles)
          for (std::size_t k = 0; k < cyc.size(); ++k)
            img[cyc[k]] = static_cast<std::uint16_t>(cyc[(k + 1) % cyc.size()]);
        spec.names.push_back(name);
        spec.generators.push_back(Action::perm(std::move(img)));
      } else {
        if (dim == 0) throw ParseError(lineno, "matrix kind needs 'n:' before generators");
        std::vector<std::uint16_t> entries;
        std::istringstream rows(val);
        std::string row;
        int nrows = 0;
        while (std::getline(rows, row, ';')) {
          std::istringstream rs(row);
          int v, ncols = 0;
          while (rs >> v) {
            int r = v % spec.prime;
            if (r < 0) r += spec.prime;
            entries.push_back(static_cast<std::uint16_t>(r));
            ++ncols;
          }
          if (!rs.eof()) throw ParseError(lineno, "bad matrix entry");
          if (ncols != dim) throw ParseError(lineno, "row has wrong number of entries");
          ++nrows;
        }
        if (nrows != dim) throw ParseError(lineno, "wrong number of matrix rows");
        spec.names.push_back(name);
        try {
          spec.generators.push_back(Action::matrix(dim, spec.prime, std::move(entries)));
        } catch (const NotUnitriangular&) {
          throw;
        }
      }
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_p) throw ParseError(lineno, "missing 'p:'");
  if (!have_kind) throw ParseError(lineno, "missing 'kind:'");
  if (spec.generators.empty()) throw ParseError(lineno, "no generators");
  return spec;
}

inline std::string serialize_group_spec(const GroupSpec& spec) {
  std::string out;
  out += "p: " + std::to_string(spec.prime) + "\n";
  out += std::string("kind: ") + (spec.kind == ActionKind::Perm ? "perm" : "matrix") + "\n";
  if (spec.kind == ActionKind::Matrix)
    out += "n: " + std::to_string(spec.matrix_dim) + "\n";
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    std::string name = i < spec.names.size() ? spec.names[i] : "g" + std::to_string(i + 1);
    out += "gen " + name + ": " + spec.generators[i].display() + "\n";
  }
  return out;
}

}  // namespace cbc

#endif
