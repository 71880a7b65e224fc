#pragma once

#include "geu/error.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace geu {

/// A set of ordered pairs over a list of act names, stored as a matrix.
/// No order properties are imposed.
class PreferenceRelation {
 public:
  explicit PreferenceRelation(std::vector<std::string> universe)
      : universe_(std::move(universe)), m_(universe_.size() * universe_.size(), 0) {}

  const std::vector<std::string>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }

  bool holds(std::size_t i, std::size_t j) const { return m_[i * size() + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v = true) { m_[i * size() + j] = v; }

  std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < universe_.size(); ++i)
      if (universe_[i] == name) return i;
    throw Error(Errc::UnknownAct, name);
  }
  bool holds(const std::string& a, const std::string& b) const { return holds(index(a), index(b)); }

  bool strictly(std::size_t i, std::size_t j) const { return holds(i, j) && !holds(j, i); }
  bool tied(std::size_t i, std::size_t j) const { return holds(i, j) && holds(j, i); }

  std::vector<std::pair<std::string, std::string>> pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (holds(i, j)) out.emplace_back(universe_[i], universe_[j]);
    return out;
  }

  bool reflexive() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (!holds(i, i)) return false;
    return true;
  }
  bool complete() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (!holds(i, j) && !holds(j, i)) return false;
    return true;
  }
  bool transitive() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (!holds(i, j)) continue;
        for (std::size_t k = 0; k < size(); ++k)
          if (holds(j, k) && !holds(i, k)) return false;
      }
    return true;
  }
  bool total_preorder() const { return reflexive() && transitive() && complete(); }

 private:
  std::vector<std::string> universe_;
  std::vector<char> m_;
};

/// Set equality of pairs; the universes must hold the same names.
inline bool relation_equal(const PreferenceRelation& a, const PreferenceRelation& b) {
  std::set<std::string> ua(a.universe().begin(), a.universe().end());
  std::set<std::string> ub(b.universe().begin(), b.universe().end());
  if (ua != ub) throw Error(Errc::UniverseMismatch, "relations over different act sets");
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto bi = b.index(a.universe()[i]);
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.holds(i, j) != b.holds(bi, b.index(a.universe()[j]))) return false;
  }
  return true;
}

}  // namespace geu
