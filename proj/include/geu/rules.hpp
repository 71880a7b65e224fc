#pragma once

#include "geu/decision.hpp"
#include "geu/relation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geu {

/// Orders acts by per-act scores under `leq`.
inline PreferenceRelation relation_from_scores(const DecisionProblem& d, const std::vector<Value>& scores,
                                               const std::function<bool(const Value&, const Value&)>& leq) {
  PreferenceRelation r(d.situation().act_names());
  for (std::size_t i = 0; i < scores.size(); ++i)
    for (std::size_t j = 0; j < scores.size(); ++j) r.set(i, j, leq(scores[i], scores[j]));
  return r;
}

// ---------------------------------------------------------------- GEU / EU

inline void require_plausibilistic(const DecisionProblem& d) {
  if (!d.plausibilistic()) throw Error(Errc::NotPlausibilistic, "rule needs a plausibilistic problem");
}

inline std::vector<Value> geu_values(const DecisionProblem& d) {
  require_plausibilistic(d);
  std::vector<Value> out;
  for (const auto& a : d.situation().acts()) out.push_back(geu(d, a));
  return out;
}

inline PreferenceRelation rule_geu(const DecisionProblem& d) {
  auto vs = geu_values(d);
  const auto& v = *d.expectation().v;
  return relation_from_scores(d, vs, [&](const Value& x, const Value& y) { return v.leq(x, y); });
}

inline void require_standard(const DecisionProblem& d) {
  if (!d.plausibilistic() || !d.standard())
    throw Error(Errc::NotStandard, "rule needs the standard domain with a probability measure");
}

inline std::vector<Value> eu_values(const DecisionProblem& d) {
  require_standard(d);
  std::vector<Value> out;
  for (const auto& a : d.situation().acts()) out.push_back(standard_eu(d, a));
  return out;
}

inline PreferenceRelation rule_eu(const DecisionProblem& d) { return relation_from_scores(d, eu_values(d), numeric_leq); }

// ---------------------------------------------------------------- Maximin

/// w_u(a), the least utility a reaches. Plausibilities are ignored.
inline std::vector<Value> maximin_values(const DecisionProblem& d) {
  const auto& u = *d.u_domain();
  std::set<Value> used;
  for (const auto& a : d.situation().acts())
    for (auto c : a.outcome) used.insert(d.utility(c));
  for (const auto& x : used)
    for (const auto& y : used)
      if (!u.leq(x, y) && !u.leq(y, x))
        throw Error(Errc::NotTotallyOrdered, "utilities are incomparable", {x.str(), y.str()});
  std::vector<Value> out;
  for (const auto& a : d.situation().acts()) {
    auto rv = utility_rv(d, a);
    auto least = std::find_if(rv.begin(), rv.end(), [&](const Value& m) {
      return std::all_of(rv.begin(), rv.end(), [&](const Value& x) { return u.leq(m, x); });
    });
    if (least == rv.end()) throw Error(Errc::NotTotallyOrdered, "no least utility for '" + a.name + "'");
    out.push_back(*least);
  }
  return out;
}

inline PreferenceRelation rule_maximin(const DecisionProblem& d) {
  auto vs = maximin_values(d);
  const auto& u = *d.u_domain();
  return relation_from_scores(d, vs, [&](const Value& x, const Value& y) { return u.leq(x, y); });
}

// ---------------------------------------------------------------- Regret

inline void require_numeric_utilities(const DecisionProblem& d) {
  for (const auto& a : d.situation().acts())
    for (auto c : a.outcome)
      if (!d.utility(c).is_rational())
        throw Error(Errc::NonNumericUtility, "regret needs rational utilities", {d.utility(c).str()});
}

/// Per-state best utility over all acts.
inline std::vector<Rational> best_utility_by_state(const DecisionProblem& d) {
  require_numeric_utilities(d);
  const auto& sit = d.situation();
  std::vector<Rational> best;
  for (std::size_t s = 0; s < sit.states().size(); ++s) {
    Rational m = d.utility(sit.acts()[0].outcome[s]).as_rational();
    for (const auto& a : sit.acts()) m = std::max(m, d.utility(a.outcome[s]).as_rational());
    best.push_back(m);
  }
  return best;
}

/// Maximal regret of each act.
inline std::vector<Value> regret_values(const DecisionProblem& d) {
  auto best = best_utility_by_state(d);
  std::vector<Value> out;
  for (const auto& a : d.situation().acts()) {
    Rational worst = 0;
    for (std::size_t s = 0; s < best.size(); ++s)
      worst = std::max(worst, Rational(best[s] - d.utility(a.outcome[s]).as_rational()));
    out.emplace_back(worst);
  }
  return out;
}

/// a1 <= a2 iff maximal regret of a1 >= that of a2.
inline PreferenceRelation rule_regret(const DecisionProblem& d) {
  return relation_from_scores(d, regret_values(d), [](const Value& x, const Value& y) { return numeric_leq(y, x); });
}

// ---------------------------------------------------------------- MMEU

inline std::vector<NamedMeasure> require_credal(const DecisionProblem& d) {
  if (!d.plausibilistic()) throw Error(Errc::NotCredalProblem, "problem has no plausibility measure");
  if (d.u_domain()->kind() != DomainKind::Rationals)
    throw Error(Errc::NotCredalProblem, "utilities must be rational");
  auto comps = credal_components(d.measure());
  if (!comps) throw Error(Errc::NotCredalProblem, "measure is not a set of probability measures");
  return *comps;
}

/// Worst-case expected utility over the credal set.
inline std::vector<Value> mmeu_values(const DecisionProblem& d) {
  auto measures = require_credal(d);
  std::vector<Value> out;
  for (const auto& a : d.situation().acts()) {
    auto rv = utility_rv(d, a);
    std::optional<Rational> low;
    for (const auto& m : measures) {
      auto eu = expectation_under(m.atoms, rv);
      if (!low || eu < *low) low = eu;
    }
    out.emplace_back(*low);
  }
  return out;
}

inline PreferenceRelation rule_mmeu(const DecisionProblem& d) {
  return relation_from_scores(d, mmeu_values(d), numeric_leq);
}

// ---------------------------------------------------------------- Choquet

/// True if `nu` takes rational values in [0,1] with nu({}) = 0, nu(S) = 1.
inline bool is_nonadditive_probability(const PlausibilityMeasure& nu) {
  if (nu.domain()->kind() != DomainKind::UnitInterval) return false;
  return std::all_of(nu.table().begin(), nu.table().end(), [](const Value& v) { return v.is_rational(); });
}

/// Choquet integral u_1 + sum_i nu(X_i) (u_i - u_{i-1}) over the distinct
/// levels u_1 < ... < u_n of `rv`, with X_i the states reaching u_i or more.
inline Value choquet_expectation(const PlausibilityMeasure& nu, const UtilityRandomVariable& rv) {
  if (!is_nonadditive_probability(nu))
    throw Error(Errc::NotStandardDomain, "Choquet expectation needs rational values in [0,1]");
  for (const auto& x : rv)
    if (!x.is_rational()) throw Error(Errc::NonNumericUtility, "Choquet expectation needs rational utilities");
  auto levels = utility_levels(rv);
  Rational result = levels.front().first.as_rational();
  Subset upper = nu.full();
  for (std::size_t i = 1; i < levels.size(); ++i) {
    upper &= ~levels[i - 1].second;
    result += nu(upper).as_rational() * (levels[i].first.as_rational() - levels[i - 1].first.as_rational());
  }
  return Value(result);
}

inline void require_ceu_domain(const DecisionProblem& d) {
  require_plausibilistic(d);
  if (!d.expectation().standard || d.u_domain()->kind() != DomainKind::Rationals ||
      !is_nonadditive_probability(d.measure()))
    throw Error(Errc::NotStandardDomain, "CEU needs the standard domain and a nonadditive probability");
}

inline std::vector<Value> ceu_values(const DecisionProblem& d) {
  require_ceu_domain(d);
  std::vector<Value> out;
  for (const auto& a : d.situation().acts()) out.push_back(choquet_expectation(d.measure(), utility_rv(d, a)));
  return out;
}

inline PreferenceRelation rule_ceu(const DecisionProblem& d) { return relation_from_scores(d, ceu_values(d), numeric_leq); }

// ---------------------------------------------------------------- Belief functions

inline constexpr std::size_t kMaxCoreStates = 8;

/// Marginal vectors of `bel` along every ordering of the states, without
/// duplicates, sorted in descending lexicographic order.
inline std::vector<std::vector<Rational>> core_extreme_points(const PlausibilityMeasure& bel) {
  if (!is_nonadditive_probability(bel))
    throw Error(Errc::NotABeliefFunction, "values must be rationals in [0,1]");
  const std::size_t n = bel.size();
  if (n > kMaxCoreStates) throw Error(Errc::TooLarge, "core enumeration is capped at 8 states");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::set<std::vector<Rational>, std::greater<>> points;
  do {
    std::vector<Rational> pr(n);
    Subset prefix = 0;
    for (auto s : order) {
      Subset next = prefix | (Subset{1} << s);
      pr[s] = bel(next).as_rational() - bel(prefix).as_rational();
      if (pr[s] < 0) {
        std::vector<std::string> w;
        for (auto t : order) w.push_back(bel.states()[t]);
        throw Error(Errc::NotABeliefFunction, "negative marginal mass", w);
      }
      prefix = next;
    }
    points.insert(std::move(pr));
  } while (std::next_permutation(order.begin(), order.end()));
  return {points.begin(), points.end()};
}

/// Bel(X) = sum of masses of subsets of X. Masses are keyed by bitmask.
inline PlausibilityMeasure belief_from_masses(std::vector<std::string> states,
                                              const std::vector<std::pair<Subset, Rational>>& masses) {
  const std::size_t n = std::size_t{1} << states.size();
  std::vector<Rational> m(n);
  Rational total = 0;
  for (const auto& [x, mass] : masses) {
    if (x == 0 || x >= n || mass < 0) throw Error(Errc::NotABeliefFunction, "bad focal set or mass");
    m[x] += mass;
    total += mass;
  }
  if (total != 1) throw Error(Errc::NotABeliefFunction, "masses must sum to 1");
  std::vector<Value> table(n);
  for (Subset x = 0; x < n; ++x) {
    Rational sum = 0;
    for (Subset b = x; b; b = (b - 1) & x) sum += m[b];
    table[x] = Value(sum);
  }
  return PlausibilityMeasure(std::move(states), unit_interval_domain(), std::move(table));
}

/// k-monotonicity for k = 2 or 3:
/// nu(X1 u ... u Xk) >= sum over nonempty I of (-1)^{|I|+1} nu(meet of X_I).
inline bool is_k_monotone(const PlausibilityMeasure& nu, int k) {
  if (k < 2 || k > 3) throw Error(Errc::InvalidInput, "monotonicity order must be 2 or 3");
  if (!is_nonadditive_probability(nu)) return false;
  if (nu.size() > kMaxCoreStates) throw Error(Errc::TooLarge, "monotonicity check is capped at 8 states");
  const std::size_t n = std::size_t{1} << nu.size();
  // Scale to a common denominator so the inner loops stay in machine integers.
  Integer den = 1;
  for (const auto& v : nu.table()) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v.as_rational()));
  if (den > Integer(1) << 40) throw Error(Errc::TooLarge, "denominators too large for the monotonicity check");
  std::vector<long long> f(n);
  for (Subset x = 0; x < n; ++x) {
    Rational scaled = nu(x).as_rational() * Rational(den);
    f[x] = static_cast<long long>(boost::multiprecision::numerator(scaled));
  }
  for (Subset a = 0; a < n; ++a)
    for (Subset b = 0; b < n; ++b) {
      if (k == 2) {
        if (f[a | b] < f[a] + f[b] - f[a & b]) return false;
        continue;
      }
      for (Subset c = 0; c < n; ++c) {
        long long rhs = f[a] + f[b] + f[c] - f[a & b] - f[a & c] - f[b & c] + f[a & b & c];
        if (f[a | b | c] < rhs) return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------- Registry

struct DecisionRule {
  std::string name;
  std::function<PreferenceRelation(const DecisionProblem&)> evaluate;
  /// Per-act scores the relation is read from.
  std::function<std::vector<Value>(const DecisionProblem&)> scores;

  /// Reason the rule does not apply, if it does not.
  std::optional<std::string> why_not(const DecisionProblem& d) const {
    try {
      scores(d);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::nullopt;
  }
};

inline const std::vector<DecisionRule>& rule_registry() {
  static const std::vector<DecisionRule> rules{
      {"geu", rule_geu, geu_values},         {"eu", rule_eu, eu_values},
      {"maximin", rule_maximin, maximin_values}, {"regret", rule_regret, regret_values},
      {"mmeu", rule_mmeu, mmeu_values},      {"ceu", rule_ceu, ceu_values},
  };
  return rules;
}

inline const DecisionRule& find_rule(const std::string& name) {
  for (const auto& r : rule_registry())
    if (r.name == name) return r;
  throw Error(Errc::InvalidInput, "unknown rule '" + name + "'");
}

}  // namespace geu
