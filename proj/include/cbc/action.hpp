#ifndef CBC_ACTION_HPP
#define CBC_ACTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbc/errors.hpp"

namespace cbc {

enum class ActionKind { Perm, Matrix };

// A concrete group element: either a permutation of {0..deg-1} or an upper
// unitriangular matrix over F_p (row-major). This is the object the BFS
// closure composes; the GroupTable hashes its encoding to assign indices.
class Action {
 public:
  static Action perm(std::vector<std::uint16_t> image) {
    Action a;
    a.kind_ = ActionKind::Perm;
    a.data_ = std::move(image);
    return a;
  }

  static Action matrix(int dim, int p, std::vector<std::uint16_t> entries) {
    Action a;
    a.kind_ = ActionKind::Matrix;
    a.dim_ = dim;
    a.p_ = p;
    a.data_ = std::move(entries);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        int v = a.data_[i * dim + j] % p;
        a.data_[i * dim + j] = static_cast<std::uint16_t>(v);
        if (i == j && v != 1)
          throw NotUnitriangular("diagonal entry is not 1");
        if (i > j && v != 0)
          throw NotUnitriangular("nonzero entry below the diagonal");
      }
    return a;
  }

  static Action perm_identity(int degree) {
    std::vector<std::uint16_t> im(degree);
    for (int i = 0; i < degree; ++i) im[i] = static_cast<std::uint16_t>(i);
    return perm(std::move(im));
  }

  static Action matrix_identity(int dim, int p) {
    std::vector<std::uint16_t> e(dim * dim, 0);
    for (int i = 0; i < dim; ++i) e[i * dim + i] = 1;
    return matrix(dim, p, std::move(e));
  }

  ActionKind kind() const { return kind_; }
  int degree() const { return static_cast<int>(data_.size()); }
  int dim() const { return dim_; }
  int prime() const { return p_; }
  const std::vector<std::uint16_t>& data() const { return data_; }

  // Composition convention: (a * b) means "apply b, then a" for matrices
  // acting on column vectors; for permutations (a * b)(x) = a(b(x)).
  Action compose(const Action& o) const {
    Action r = *this;
    if (kind_ == ActionKind::Perm) {
      for (std::size_t x = 0; x < data_.size(); ++x) r.data_[x] = data_[o.data_[x]];
    } else {
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
          int s = 0;
          for (int k = 0; k < dim_; ++k)
            s += data_[i * dim_ + k] * o.data_[k * dim_ + j];
          r.data_[i * dim_ + j] = static_cast<std::uint16_t>(s % p_);
        }
    }
    return r;
  }

  Action inverse() const {
    Action r = *this;
    if (kind_ == ActionKind::Perm) {
      for (std::size_t x = 0; x < data_.size(); ++x) r.data_[data_[x]] = static_cast<std::uint16_t>(x);
    } else {
      // unitriangular inverse by back substitution: solve M * R = I columnwise
      for (int j = 0; j < dim_; ++j)
        for (int i = dim_ - 1; i >= 0; --i) {
          int s = (i == j) ? 1 : 0;
          for (int k = i + 1; k < dim_; ++k)
            s -= data_[i * dim_ + k] * r.data_[k * dim_ + j];
          s %= p_;
          if (s < 0) s += p_;
          r.data_[i * dim_ + j] = static_cast<std::uint16_t>(s);
        }
    }
    return r;
  }

  bool is_identity() const {
    if (kind_ == ActionKind::Perm) {
      for (std::size_t x = 0; x < data_.size(); ++x)
        if (data_[x] != x) return false;
      return true;
    }
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (data_[i * dim_ + j] != (i == j ? 1 : 0)) return false;
    return true;
  }

  std::string encode() const {
    std::string s;
    s.reserve(data_.size() * 2);
    for (auto v : data_) {
      s.push_back(static_cast<char>(v & 0xff));
      s.push_back(static_cast<char>(v >> 8));
    }
    return s;
  }

  std::string display() const;

 private:
  ActionKind kind_ = ActionKind::Perm;
  int dim_ = 0;
  int p_ = 0;
  std::vector<std::uint16_t> data_;
};

inline std::string Action::display() const {
  std::string s;
  if (kind_ == ActionKind::Perm) {
    std::vector<bool> seen(data_.size(), false);
    bool wrote = false;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (seen[i] || data_[i] == i) continue;
      s.push_back('(');
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) s.push_back(' ');
        s += std::to_string(j + 1);  // 1-based in the file format
        first = false;
        j = data_[j];
      }
      s.push_back(')');
      wrote = true;
    }
    if (!wrote) s = "()";
  } else {
    for (int i = 0; i < dim_; ++i) {
      if (i) s += "; ";
      for (int j = 0; j < dim_; ++j) {
        if (j) s.push_back(' ');
        s += std::to_string(data_[i * dim_ + j]);
      }
    }
  }
  return s;
}

// Parsed generator description: what the file format and the family
// builders produce, and what build_group consumes.
struct GroupSpec {
  int prime = 0;
  ActionKind kind = ActionKind::Perm;
  int matrix_dim = 0;  // matrix kind only
  std::vector<std::string> names;
  std::vector<Action> generators;
  std::string label;  // family label or file stem, for reports
};

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_odd_prime(int p) {
  if (!is_prime(p)) throw InvalidPrime("p = " + std::to_string(p) + " is not prime");
  if (p == 2) throw InvalidPrime("p = 2 is rejected; results hold for odd primes only");
}

}  // namespace cbc

#endif
