#pragma once

#include "geu/expectation.hpp"
#include "geu/plausibility.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geu {

/// A total map from states to consequences, by index.
struct Act {
  std::string name;
  std::vector<std::size_t> outcome;  // outcome[s] indexes the consequence list

  bool constant() const {
    return std::adjacent_find(outcome.begin(), outcome.end(), std::not_equal_to<>()) == outcome.end();
  }
};

namespace detail {

inline void require_unique(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error(Errc::InvalidInput, std::string("duplicate ") + what + " '" + l + "'");
}

}  // namespace detail

/// (A, S, C): acts over finite states and consequences.
class DecisionSituation {
 public:
  DecisionSituation(std::vector<std::string> states, std::vector<std::string> consequences,
                    std::vector<Act> acts)
      : states_(std::move(states)), consequences_(std::move(consequences)), acts_(std::move(acts)) {
    if (states_.empty()) throw Error(Errc::InvalidInput, "no states");
    if (consequences_.empty()) throw Error(Errc::InvalidInput, "no consequences");
    if (acts_.empty()) throw Error(Errc::InvalidInput, "no acts");
    detail::require_unique(states_, "state");
    detail::require_unique(consequences_, "consequence");
    std::vector<std::string> names;
    for (const auto& a : acts_) {
      names.push_back(a.name);
      if (a.outcome.size() != states_.size())
        throw Error(Errc::InvalidInput, "act '" + a.name + "' is not total on the states");
      for (auto c : a.outcome)
        if (c >= consequences_.size()) throw Error(Errc::InvalidInput, "act '" + a.name + "' leaves C");
    }
    detail::require_unique(names, "act");
  }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& consequences() const { return consequences_; }
  const std::vector<Act>& acts() const { return acts_; }
  std::vector<std::string> act_names() const {
    std::vector<std::string> out;
    for (const auto& a : acts_) out.push_back(a.name);
    return out;
  }

  std::size_t act_index(const std::string& name) const {
    for (std::size_t i = 0; i < acts_.size(); ++i)
      if (acts_[i].name == name) return i;
    throw Error(Errc::UnknownAct, name);
  }
  const Act& act(const std::string& name) const { return acts_[act_index(name)]; }

  /// a^{-1}(Y) for a set Y of consequence indices.
  Subset preimage(const Act& a, const std::set<std::size_t>& ys) const {
    Subset x = 0;
    for (std::size_t s = 0; s < states_.size(); ++s)
      if (ys.count(a.outcome[s])) x |= Subset{1} << s;
    return x;
  }

  friend bool operator==(const DecisionSituation& a, const DecisionSituation& b) {
    if (a.states_ != b.states_ || a.consequences_ != b.consequences_ || a.acts_.size() != b.acts_.size())
      return false;
    for (std::size_t i = 0; i < a.acts_.size(); ++i)
      if (a.acts_[i].name != b.acts_[i].name || a.acts_[i].outcome != b.acts_[i].outcome) return false;
    return true;
  }

 private:
  std::vector<std::string> states_;
  std::vector<std::string> consequences_;
  std::vector<Act> acts_;
};

using SituationPtr = std::shared_ptr<const DecisionSituation>;

struct PlausibilisticPart {
  ExpectationPtr expectation;
  PlausibilityMeasure measure;
};

/// Nonplausibilistic (situation, U, u) or plausibilistic
/// (situation, E, u, Pl).
class DecisionProblem {
 public:
  DecisionProblem(SituationPtr situation, DomainPtr u_domain, std::vector<Value> utility,
                  std::optional<PlausibilisticPart> plausibilistic = std::nullopt)
      : situation_(std::move(situation)),
        u_domain_(std::move(u_domain)),
        utility_(std::move(utility)),
        plaus_(std::move(plausibilistic)) {
    if (!situation_) throw Error(Errc::InvalidInput, "missing situation");
    if (utility_.size() != situation_->consequences().size())
      throw Error(Errc::InvalidInput, "utility must be total on the consequences");
    for (std::size_t c = 0; c < utility_.size(); ++c)
      if (!u_domain_->contains(utility_[c]))
        throw Error(Errc::InvalidInput, "utility of '" + situation_->consequences()[c] + "' outside U",
                    {utility_[c].str()});
    if (plaus_) {
      if (!same_domain(plaus_->expectation->u, u_domain_))
        throw Error(Errc::DomainMismatch, "utility domain differs from the expectation domain's U");
      if (plaus_->measure.states() != situation_->states())
        throw Error(Errc::DomainMismatch, "measure states differ from the situation's states");
      if (!same_domain(plaus_->measure.domain(), plaus_->expectation->p))
        throw Error(Errc::DomainMismatch, "measure values are not in the expectation domain's P");
    }
  }

  const SituationPtr& situation_ptr() const { return situation_; }
  const DecisionSituation& situation() const { return *situation_; }
  const DomainPtr& u_domain() const { return u_domain_; }
  const std::vector<Value>& utility() const { return utility_; }
  const Value& utility(std::size_t consequence) const { return utility_[consequence]; }
  bool plausibilistic() const { return plaus_.has_value(); }
  const std::optional<PlausibilisticPart>& plausibilistic_part() const { return plaus_; }

  const ExpectationDomain& expectation() const {
    if (!plaus_) throw Error(Errc::NotPlausibilistic, "problem has no expectation domain");
    return *plaus_->expectation;
  }
  const PlausibilityMeasure& measure() const {
    if (!plaus_) throw Error(Errc::NotPlausibilistic, "problem has no plausibility measure");
    return plaus_->measure;
  }

  /// The same situation and tastes without beliefs.
  DecisionProblem without_beliefs() const { return DecisionProblem(situation_, u_domain_, utility_); }

  /// Utility domain is the rationals and, if plausibilistic, the
  /// expectation domain is the standard one and Pl is a probability.
  bool standard() const {
    if (u_domain_->kind() != DomainKind::Rationals) return false;
    if (!plaus_) return true;
    return plaus_->expectation->standard && probability_atoms(plaus_->measure).has_value();
  }

 private:
  SituationPtr situation_;
  DomainPtr u_domain_;
  std::vector<Value> utility_;
  std::optional<PlausibilisticPart> plaus_;
};

using UtilityRandomVariable = std::vector<Value>;  // indexed by state

/// Utility level paired with its plausibility, ascending by level.
using UtilityLottery = std::vector<std::pair<Value, Value>>;

inline UtilityRandomVariable utility_rv(const DecisionProblem& d, const Act& a) {
  UtilityRandomVariable rv;
  rv.reserve(a.outcome.size());
  for (auto c : a.outcome) rv.push_back(d.utility(c));
  return rv;
}

inline UtilityRandomVariable utility_rv(const DecisionProblem& d, const std::string& act) {
  return utility_rv(d, d.situation().act(act));
}

/// ran(u_a) with the preimage of each level, ascending by level.
inline std::vector<std::pair<Value, Subset>> utility_levels(const UtilityRandomVariable& rv) {
  std::map<Value, Subset> levels;
  for (std::size_t s = 0; s < rv.size(); ++s) levels[rv[s]] |= Subset{1} << s;
  return {levels.begin(), levels.end()};
}

inline UtilityLottery utility_lottery(const DecisionProblem& d, const Act& a) {
  const auto& pl = d.measure();
  UtilityLottery out;
  for (const auto& [u, x] : utility_levels(utility_rv(d, a))) out.emplace_back(u, pl(x));
  return out;
}

inline UtilityLottery utility_lottery(const DecisionProblem& d, const std::string& act) {
  return utility_lottery(d, d.situation().act(act));
}

/// Generalized expected utility: the oplus-fold, in ascending order of
/// utility level, of Pl(u_a^{-1}(x)) (x) x over x in ran(u_a).
inline Value geu(const DecisionProblem& d, const Act& a) {
  const auto& e = d.expectation();
  const auto& pl = d.measure();
  std::optional<Value> acc;
  for (const auto& [u, x] : utility_levels(utility_rv(d, a))) {
    auto term = e.otimes(pl(x), u);
    acc = acc ? e.oplus(*acc, term) : std::move(term);
  }
  return *acc;
}

inline Value geu(const DecisionProblem& d, const std::string& act) { return geu(d, d.situation().act(act)); }

/// Sum over ran(u_a) of Pr(u_a^{-1}(x)) * x, exactly.
inline Value standard_eu(const DecisionProblem& d, const Act& a) {
  if (!d.plausibilistic() || !d.standard()) throw Error(Errc::NotStandard, "expected utility needs a standard problem");
  const auto& pl = d.measure();
  Rational sum = 0;
  for (const auto& [u, x] : utility_levels(utility_rv(d, a))) sum += pl(x).as_rational() * u.as_rational();
  return Value(sum);
}

inline Value standard_eu(const DecisionProblem& d, const std::string& act) {
  return standard_eu(d, d.situation().act(act));
}

/// Expected value of a rational utility vector under rational atoms.
inline Rational expectation_under(const std::vector<Rational>& atoms, const UtilityRandomVariable& rv) {
  Rational sum = 0;
  for (std::size_t s = 0; s < rv.size(); ++s) sum += atoms[s] * rv[s].as_rational();
  return sum;
}

}  // namespace geu
