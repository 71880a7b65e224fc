#pragma once

#include "geu/domain.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace geu {

/// Subset of an indexed finite set, bit i standing for element i.
using Subset = std::uint64_t;

inline constexpr std::size_t kMaxStates = 16;

inline Subset full_set(std::size_t n) { return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1; }

inline std::vector<std::size_t> members(Subset x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; x; ++i, x >>= 1)
    if (x & 1u) out.push_back(i);
  return out;
}

inline std::string subset_str(Subset x, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (auto i : members(x)) {
    if (!first) out += ", ";
    out += labels[i];
    first = false;
  }
  return out + "}";
}

/// Monotone map from subsets of a finite state list into a bounded
/// domain, stored as a full powerset table indexed by bitmask.
class PlausibilityMeasure {
 public:
  /// Validates Pl1-Pl3 over the whole powerset.
  PlausibilityMeasure(std::vector<std::string> states, DomainPtr domain, std::vector<Value> table)
      : states_(std::move(states)), domain_(std::move(domain)), table_(std::move(table)) {
    validate();
  }

  const std::vector<std::string>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  Subset full() const { return full_set(states_.size()); }
  const DomainPtr& domain() const { return domain_; }
  const std::vector<Value>& table() const { return table_; }
  const Value& operator()(Subset x) const { return table_.at(x); }

  friend bool operator==(const PlausibilityMeasure& a, const PlausibilityMeasure& b) {
    return a.states_ == b.states_ && same_domain(a.domain_, b.domain_) && a.table_ == b.table_;
  }

  /// Pl1-Pl3 over the whole powerset; the constructor runs this.
  void validate() const {
    if (states_.size() > kMaxStates)
      throw Error(Errc::TooLarge, "more than " + std::to_string(kMaxStates) + " states");
    if (!domain_ || !domain_->bounded())
      throw Error(Errc::InvalidInput, "plausibility domain needs bottom and top");
    if (!domain_->transitive())
      throw Error(Errc::InvalidInput, "plausibility domain '" + domain_->name() + "' is not transitive");
    const std::size_t n = std::size_t{1} << states_.size();
    if (table_.size() != n)
      throw Error(Errc::InvalidInput, "assignment must cover all " + std::to_string(n) + " subsets");
    for (Subset x = 0; x < n; ++x)
      if (!domain_->contains(table_[x]))
        throw Error(Errc::InvalidInput, "value outside plausibility domain",
                    {subset_str(x, states_), table_[x].str()});
    if (table_[0] != *domain_->bottom())
      throw Error(Errc::AxiomViolation, "Pl1", {"{}", table_[0].str()});
    if (table_[n - 1] != *domain_->top())
      throw Error(Errc::AxiomViolation, "Pl2", {subset_str(n - 1, states_), table_[n - 1].str()});
    // The order is transitive, so monotonicity along single-element
    // extensions covers every pair X subset of Y.
    for (Subset x = 0; x < n; ++x)
      for (std::size_t i = 0; i < states_.size(); ++i) {
        Subset y = x | (Subset{1} << i);
        if (y == x) continue;
        if (!domain_->leq(table_[x], table_[y]))
          throw Error(Errc::AxiomViolation, "Pl3", {subset_str(x, states_), subset_str(y, states_)});
      }
  }

 private:
  std::vector<std::string> states_;
  DomainPtr domain_;
  std::vector<Value> table_;
};

inline PlausibilityMeasure make_plausibility_measure(std::vector<std::string> states, DomainPtr domain,
                                                     std::vector<Value> table) {
  return PlausibilityMeasure(std::move(states), std::move(domain), std::move(table));
}

/// Powerset table of the additive measure with the given atoms.
inline std::vector<Value> additive_table(const std::vector<Rational>& atoms) {
  const std::size_t n = std::size_t{1} << atoms.size();
  std::vector<Rational> sums(n);
  for (Subset x = 1; x < n; ++x) {
    auto low = static_cast<std::size_t>(__builtin_ctzll(x));
    sums[x] = sums[x & (x - 1)] + atoms[low];
  }
  return {sums.begin(), sums.end()};
}

inline bool is_probability_atoms(const std::vector<Rational>& atoms) {
  Rational total = 0;
  for (const auto& a : atoms) {
    if (a < 0) return false;
    total += a;
  }
  return total == 1;
}

inline PlausibilityMeasure make_probability_measure(std::vector<std::string> states,
                                                    const std::vector<Rational>& atoms) {
  if (atoms.size() != states.size() || !is_probability_atoms(atoms))
    throw Error(Errc::NotAProbability, "atoms must be nonnegative and sum to 1");
  return PlausibilityMeasure(std::move(states), unit_interval_domain(), additive_table(atoms));
}

/// Atoms of `pl` if it is an additive rational measure on [0,1].
inline std::optional<std::vector<Rational>> probability_atoms(const PlausibilityMeasure& pl) {
  if (pl.domain()->kind() != DomainKind::UnitInterval) return std::nullopt;
  std::vector<Rational> atoms;
  for (std::size_t i = 0; i < pl.size(); ++i) {
    const auto& v = pl(Subset{1} << i);
    if (!v.is_rational()) return std::nullopt;
    atoms.push_back(v.as_rational());
  }
  auto expected = additive_table(atoms);
  for (Subset x = 0; x < expected.size(); ++x)
    if (pl(x) != expected[x]) return std::nullopt;
  return atoms;
}

struct NamedMeasure {
  std::string name;
  std::vector<Rational> atoms;  // one per state
};

struct CredalPlausibility {
  DomainPtr domain;
  PlausibilityMeasure measure;
};

/// Represents a finite set of probability measures as one plausibility
/// measure into [0,1]^names, ordered pointwise.
inline CredalPlausibility make_pl_from_probability_set(const std::vector<std::string>& states,
                                                       const std::vector<NamedMeasure>& measures) {
  if (measures.empty()) throw Error(Errc::InvalidInput, "empty set of probability measures");
  std::vector<std::string> names;
  for (const auto& m : measures) {
    if (m.atoms.size() != states.size() || !is_probability_atoms(m.atoms))
      throw Error(Errc::NotAProbability, m.name);
    names.push_back(m.name);
  }
  auto domain = vectors_over_index_domain(names, true);
  std::vector<std::vector<Value>> tables;
  for (const auto& m : measures) tables.push_back(additive_table(m.atoms));
  const std::size_t n = std::size_t{1} << states.size();
  std::vector<Value> table;
  table.reserve(n);
  for (Subset x = 0; x < n; ++x) {
    std::vector<std::pair<std::string, Value>> es;
    for (std::size_t k = 0; k < measures.size(); ++k) es.emplace_back(measures[k].name, tables[k][x]);
    table.push_back(Value::indexed(std::move(es)));
  }
  return {domain, PlausibilityMeasure(states, domain, std::move(table))};
}

/// Recovers the named measures from a plausibility measure into a unit
/// vector domain, if every component is additive.
inline std::optional<std::vector<NamedMeasure>> credal_components(const PlausibilityMeasure& pl) {
  const auto& d = *pl.domain();
  if (d.kind() != DomainKind::VectorsOverIndex || !d.bounded()) return std::nullopt;
  std::vector<NamedMeasure> out;
  for (const auto& name : d.index()) {
    NamedMeasure m{name, {}};
    for (std::size_t i = 0; i < pl.size(); ++i) {
      const auto& v = pl(Subset{1} << i).at(name);
      if (!v.is_rational()) return std::nullopt;
      m.atoms.push_back(v.as_rational());
    }
    auto expected = additive_table(m.atoms);
    for (Subset x = 0; x < expected.size(); ++x)
      if (pl(x).at(name) != expected[x]) return std::nullopt;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace geu
