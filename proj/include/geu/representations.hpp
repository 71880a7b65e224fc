#pragma once

#include "geu/rules.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace geu {

/// Random samples used when verifying the axioms of a constructed
/// expectation domain, on top of the exhaustive heads.
inline constexpr std::size_t kConstructedProbeSamples = 200;
inline constexpr std::size_t kConstructedProbeHead = 24;

// ---------------------------------------------------------------- Comparisons

/// Equal utility random variables (nonplausibilistic) or equal utility
/// lotteries (plausibilistic).
inline bool indistinguishable(const DecisionProblem& d, const Act& a, const Act& b) {
  if (!d.plausibilistic()) return utility_rv(d, a) == utility_rv(d, b);
  return utility_lottery(d, a) == utility_lottery(d, b);
}

inline bool indistinguishable(const DecisionProblem& d, const std::string& a, const std::string& b) {
  return indistinguishable(d, d.situation().act(a), d.situation().act(b));
}

/// Same situation, utility domain and utility function, and when both are
/// plausibilistic the same plausibility domain and measure.
inline bool congruent(const DecisionProblem& d1, const DecisionProblem& d2) {
  if (!(d1.situation() == d2.situation())) return false;
  if (!same_domain(d1.u_domain(), d2.u_domain()) || d1.utility() != d2.utility()) return false;
  if (d1.plausibilistic() && d2.plausibilistic())
    return same_domain(d1.expectation().p, d2.expectation().p) && d1.measure() == d2.measure();
  return true;
}

/// Same situation, and the utilities and plausibilities induce the same
/// orders on consequences and on subsets of states.
inline bool similar(const DecisionProblem& d1, const DecisionProblem& d2) {
  if (!(d1.situation() == d2.situation())) return false;
  const auto& u1 = *d1.u_domain();
  const auto& u2 = *d2.u_domain();
  const std::size_t nc = d1.utility().size();
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      if (u1.leq(d1.utility(i), d1.utility(j)) != u2.leq(d2.utility(i), d2.utility(j))) return false;
  if (d1.plausibilistic() && d2.plausibilistic()) {
    const auto& p1 = d1.measure();
    const auto& p2 = d2.measure();
    const auto& o1 = *p1.domain();
    const auto& o2 = *p2.domain();
    const std::size_t n = p1.table().size();
    for (Subset x = 0; x < n; ++x)
      for (Subset y = 0; y < n; ++y)
        if (o1.leq(p1(x), p1(y)) != o2.leq(p2(x), p2(y))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Rule properties

/// Acts whose utility random variable is constant.
inline bool constant_utility(const DecisionProblem& d, const Act& a) {
  auto rv = utility_rv(d, a);
  return std::all_of(rv.begin(), rv.end(), [&](const Value& x) { return x == rv.front(); });
}

using ActPair = std::pair<std::string, std::string>;

namespace detail {

inline std::optional<ActPair> utility_order_violation(const PreferenceRelation& r, const DecisionProblem& d,
                                                      bool weak) {
  const auto& acts = d.situation().acts();
  const auto& u = *d.u_domain();
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j) {
      const auto& a = acts[i];
      const auto& b = acts[j];
      bool eligible = weak ? a.constant() && b.constant() : constant_utility(d, a) && constant_utility(d, b);
      if (!eligible) continue;
      bool expected = u.leq(d.utility(a.outcome[0]), d.utility(b.outcome[0]));
      if (r.holds(r.index(a.name), r.index(b.name)) != expected) return ActPair{a.name, b.name};
    }
  return std::nullopt;
}

}  // namespace detail

/// First pair of constant-utility acts ordered against their utilities.
inline std::optional<ActPair> respects_utility_witness(const PreferenceRelation& r, const DecisionProblem& d) {
  return detail::utility_order_violation(r, d, false);
}

/// First pair of constant acts ordered against their utilities.
inline std::optional<ActPair> weakly_respects_utility_witness(const PreferenceRelation& r,
                                                              const DecisionProblem& d) {
  return detail::utility_order_violation(r, d, true);
}

inline bool respects_utility(const PreferenceRelation& r, const DecisionProblem& d) {
  return !respects_utility_witness(r, d);
}
inline bool weakly_respects_utility(const PreferenceRelation& r, const DecisionProblem& d) {
  return !weakly_respects_utility_witness(r, d);
}

/// a1 ~ b1 and a2 ~ b2, yet the relation treats (a1, a2) and (b1, b2)
/// differently.
struct UniformityWitness {
  std::string a1, a2, b1, b2;

  std::vector<std::string> names() const { return {a1, a2, b1, b2}; }
};

/// Representative act index of each indistinguishability class.
inline std::vector<std::size_t> indistinguishability_classes(const DecisionProblem& d) {
  const auto& acts = d.situation().acts();
  std::vector<std::size_t> rep(acts.size());
  for (std::size_t i = 0; i < acts.size(); ++i) {
    rep[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (rep[j] == j && indistinguishable(d, acts[i], acts[j])) {
        rep[i] = j;
        break;
      }
  }
  return rep;
}

inline std::optional<UniformityWitness> uniformity_witness(const PreferenceRelation& r, const DecisionProblem& d) {
  const auto& acts = d.situation().acts();
  auto rep = indistinguishability_classes(d);
  std::vector<std::size_t> ri(acts.size());
  for (std::size_t i = 0; i < acts.size(); ++i) ri[i] = r.index(acts[i].name);
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j)
      if (r.holds(ri[i], ri[j]) != r.holds(ri[rep[i]], ri[rep[j]]))
        return UniformityWitness{acts[i].name, acts[j].name, acts[rep[i]].name, acts[rep[j]].name};
  return std::nullopt;
}

inline bool is_uniform(const PreferenceRelation& r, const DecisionProblem& d) { return !uniformity_witness(r, d); }

// ---------------------------------------------------------------- Example transformations

enum class TransformationMode { Congruent, Ordinal };

/// EU is its own GEU representation.
inline DecisionProblem tau_identity_eu(const DecisionProblem& d) {
  require_standard(d);
  return d;
}

/// Plausibility 0 on the empty set and 1 elsewhere, paired with E_max.
inline DecisionProblem tau_maximin(const DecisionProblem& d) {
  if (d.u_domain()->kind() != DomainKind::Rationals)
    throw Error(Errc::DomainMismatch, "maximin transformation needs rational utilities");
  auto e = max_expectation();
  const auto& states = d.situation().states();
  std::vector<Value> table(std::size_t{1} << states.size(), Value(1));
  table[0] = Value(0);
  PlausibilityMeasure pl(states, e->p, std::move(table));
  return DecisionProblem(d.situation_ptr(), e->u, d.utility(), PlausibilisticPart{e, std::move(pl)});
}

/// Plausibility exp(M_X - M_S), with M_X the best utility reachable in X,
/// paired with E_reg.
inline DecisionProblem tau_regret(const DecisionProblem& d) {
  if (d.u_domain()->kind() != DomainKind::Rationals)
    throw Error(Errc::DomainMismatch, "regret transformation needs rational utilities");
  auto best = best_utility_by_state(d);
  auto e = regret_expectation();
  const auto& states = d.situation().states();
  const std::size_t n = std::size_t{1} << states.size();
  std::vector<Rational> m(n);
  for (Subset x = 1; x < n; ++x) {
    auto low = static_cast<std::size_t>(__builtin_ctzll(x));
    Subset rest = x & (x - 1);
    m[x] = rest ? std::max(m[rest], best[low]) : best[low];
  }
  std::vector<Value> table(n);
  table[0] = Value(0);
  for (Subset x = 1; x < n; ++x)
    table[x] = m[x] == m[n - 1] ? Value(1) : Value::real(std::exp(to_double(Rational(m[x] - m[n - 1]))));
  PlausibilityMeasure pl(states, e->p, std::move(table));
  return DecisionProblem(d.situation_ptr(), e->u, d.utility(), PlausibilisticPart{e, std::move(pl)});
}

namespace detail {

inline ExpectationPtr build_credal_expectation(const DomainPtr& p_domain) {
  const auto index = p_domain->index();
  auto constant = [index](const Value& c) {
    std::vector<std::pair<std::string, Value>> es;
    for (const auto& k : index) es.emplace_back(k, c);
    return Value::indexed(std::move(es));
  };
  auto minimum = [](const Value& x) {
    Rational m = x.entries().front().second.as_rational();
    for (const auto& [k, v] : x.entries()) m = std::min(m, v.as_rational());
    return m;
  };
  auto reals = vectors_over_index_domain(index, false);
  Domain::Spec spec;
  spec.kind = DomainKind::VectorsOverIndex;
  spec.name = "MinOrderedVectors";
  spec.signature = "Min" + reals->signature();
  spec.member = [reals](const Value& x) {
    if (!reals->contains(x)) return false;
    return std::all_of(x.entries().begin(), x.entries().end(), [](const auto& e) { return e.second.is_rational(); });
  };
  spec.leq = [minimum](const Value& x, const Value& y) { return minimum(x) <= minimum(y); };
  spec.sampler = [reals](std::uint64_t seed, std::size_t n) { return reals->probe(seed, n); };
  spec.index = index;
  auto v = std::make_shared<Domain>(std::move(spec));
  return make_expectation_domain(
      "credal", rationals_domain(), p_domain, v,
      [](const Value& p, const Value& u) {
        std::vector<std::pair<std::string, Value>> es;
        for (const auto& [k, x] : p.entries()) es.emplace_back(k, Value(Rational(x.as_rational() * u.as_rational())));
        return Value::indexed(std::move(es));
      },
      [](const Value& x, const Value& y) {
        std::vector<std::pair<std::string, Value>> es;
        for (std::size_t i = 0; i < x.entries().size(); ++i)
          es.emplace_back(x.entries()[i].first,
                          Value(Rational(x.entries()[i].second.as_rational() + y.entries()[i].second.as_rational())));
        return Value::indexed(std::move(es));
      },
      constant, AxiomProbe{{}, {}, 0x5eed, kConstructedProbeSamples, kConstructedProbeHead});
}

}  // namespace detail

/// E_P over the measure names in `p_domain`: scalar multiplication,
/// pointwise addition, vectors compared by their minimum.
inline ExpectationPtr credal_expectation(const DomainPtr& p_domain) {
  if (p_domain->finite()) return detail::build_credal_expectation(p_domain);
  static std::mutex mutex;
  static std::map<std::string, ExpectationPtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(p_domain->signature());
  if (it == cache.end()) it = cache.emplace(p_domain->signature(), detail::build_credal_expectation(p_domain)).first;
  return it->second;
}

/// Keeps Pl_P and swaps in E_P.
inline DecisionProblem tau_mmeu(const DecisionProblem& d) {
  try {
    require_credal(d);
  } catch (const Error& e) {
    throw Error(Errc::DomainMismatch, e.what());
  }
  auto e = credal_expectation(d.measure().domain());
  return DecisionProblem(d.situation_ptr(), e->u, d.utility(), PlausibilisticPart{e, d.measure()});
}

struct RuleTransformation {
  std::string name;
  std::string rule;
  TransformationMode mode;
  std::function<DecisionProblem(const DecisionProblem&)> apply;
};

inline const std::vector<RuleTransformation>& transformation_registry() {
  static const std::vector<RuleTransformation> ts{
      {"id-eu", "eu", TransformationMode::Congruent, tau_identity_eu},
      {"maximin", "maximin", TransformationMode::Congruent, tau_maximin},
      {"regret", "regret", TransformationMode::Congruent, tau_regret},
      {"mmeu", "mmeu", TransformationMode::Congruent, tau_mmeu},
  };
  return ts;
}

/// The example transformation representing `rule`.
inline const RuleTransformation& transformation_for_rule(const std::string& rule) {
  for (const auto& t : transformation_registry())
    if (t.rule == rule) return t;
  throw Error(Errc::InvalidInput, "no example representation for rule '" + rule + "'");
}

// ---------------------------------------------------------------- Constructed representations

namespace detail {

inline std::vector<Value> state_symbols(const DecisionSituation& sit) {
  std::vector<Value> out;
  for (const auto& s : sit.states()) out.push_back(Value::symbol(s));
  return out;
}

inline Value subset_value(Subset x, const std::vector<Value>& symbols) {
  std::vector<Value> out;
  for (auto i : members(x)) out.push_back(symbols[i]);
  return Value::set(std::move(out));
}

/// X (x) u = X x {u} for a set X.
inline Value cross(const Value& x, const Value& u) {
  std::vector<Value> out;
  for (const auto& e : x.elements()) out.push_back(Value::pair(e, u));
  return Value::set(std::move(out));
}

/// Set order for the constructed valuation domains: equality, the
/// embedded order on "constant" values, or an explicit pair.
using ValueRefPair = std::pair<const Value*, const Value*>;

struct PairLess {
  using is_transparent = void;
  static std::strong_ordering cmp(const Value& a1, const Value& a2, const Value& b1, const Value& b2) {
    auto c = compare(a1, b1);
    return c != 0 ? c : compare(a2, b2);
  }
  bool operator()(const std::pair<Value, Value>& a, const std::pair<Value, Value>& b) const {
    return cmp(a.first, a.second, b.first, b.second) < 0;
  }
  bool operator()(const std::pair<Value, Value>& a, const ValueRefPair& b) const {
    return cmp(a.first, a.second, *b.first, *b.second) < 0;
  }
  bool operator()(const ValueRefPair& a, const std::pair<Value, Value>& b) const {
    return cmp(*a.first, *a.second, b.first, b.second) < 0;
  }
};

using PairSet = std::set<std::pair<Value, Value>, PairLess>;

struct ConstructedOrder {
  std::function<std::optional<Value>(const Value&)> constant_level;
  DomainPtr level_domain;
  std::shared_ptr<const PairSet> pairs;

  bool operator()(const Value& x, const Value& y) const {
    if (x == y) return true;
    if (pairs->find(ValueRefPair{&x, &y}) != pairs->end()) return true;
    auto lx = constant_level(x);
    if (!lx) return false;
    auto ly = constant_level(y);
    return ly && level_domain->leq(*lx, *ly);
  }
};

inline DomainPtr constructed_v_domain(std::string name, std::string signature, Domain::Member member,
                                      ConstructedOrder order, std::vector<Value> probe) {
  Domain::Spec spec;
  spec.kind = DomainKind::FiniteSetsOfValues;
  spec.name = std::move(name);
  spec.signature = std::move(signature);
  spec.member = std::move(member);
  spec.leq = std::move(order);
  spec.sampler = [probe = std::move(probe)](std::uint64_t, std::size_t n) {
    return std::vector<Value>(probe.begin(), probe.begin() + std::min(n, probe.size()));
  };
  spec.transitive = false;
  return std::make_shared<Domain>(std::move(spec));
}

/// (2^S, subset order) with Pl(X) = X.
inline PlausibilityMeasure identity_set_measure(const DecisionSituation& sit) {
  auto symbols = state_symbols(sit);
  const std::size_t n = std::size_t{1} << symbols.size();
  std::set<Value> state_set(symbols.begin(), symbols.end());
  std::vector<Value> table(n);
  for (Subset x = 0; x < n; ++x) table[x] = subset_value(x, symbols);
  Domain::Spec spec;
  spec.kind = DomainKind::FiniteSetsOfValues;
  spec.name = "StateSubsets";
  spec.signature = "Subsets" + table[n - 1].str();
  spec.member = [state_set](const Value& x) {
    return x.is_set() && std::all_of(x.elements().begin(), x.elements().end(),
                                      [&](const Value& e) { return state_set.count(e) > 0; });
  };
  spec.leq = [](const Value& x, const Value& y) { return x.is_set() && y.is_set() && is_subset(x, y); };
  spec.sampler = [table](std::uint64_t seed, std::size_t k) {
    std::vector<Value> out{table.front(), table.back()};
    Rng rng(seed);
    while (out.size() < std::min(k, table.size())) out.push_back(table[rng.below(table.size())]);
    return out;
  };
  spec.bottom = table.front();
  spec.top = table.back();
  auto domain = std::make_shared<Domain>(std::move(spec));
  return PlausibilityMeasure(sit.states(), domain, std::move(table));
}

inline std::vector<Value> table_values(const PlausibilityMeasure& pl) {
  std::set<Value> seen(pl.table().begin(), pl.table().end());
  return {seen.begin(), seen.end()};
}

/// Pairs of acts with identical functions that the relation separates.
inline void require_consistent_on_duplicates(const PreferenceRelation& r, const DecisionProblem& d) {
  const auto& acts = d.situation().acts();
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j) {
      if (i == j || acts[i].outcome != acts[j].outcome) continue;
      for (std::size_t k = 0; k < acts.size(); ++k) {
        const auto& a = acts[i].name;
        const auto& b = acts[j].name;
        const auto& c = acts[k].name;
        if (r.holds(a, c) != r.holds(b, c) || r.holds(c, a) != r.holds(c, b))
          throw Error(Errc::InconsistentTable, "identical acts treated differently", {a, b, c});
      }
    }
}

}  // namespace detail

/// Representation of a uniform rule. Nonplausibilistic problems get P = (2^S, subset)
/// with Pl(X) = X, and GEU evaluates to the graph of u_a. Plausibilistic
/// problems keep their measure, and GEU evaluates to the utility lottery as
/// a set of (plausibility, utility) pairs.
inline DecisionProblem represent_uniform(const DecisionProblem& d, const PreferenceRelation& table) {
  if (auto w = uniformity_witness(table, d)) throw Error(Errc::NotUniform, "table is not uniform", w->names());
  if (auto w = respects_utility_witness(table, d))
    throw Error(Errc::NotRespectingUtility, "table orders constant-utility acts against u", {w->first, w->second});

  const auto& sit = d.situation();
  const auto& acts = sit.acts();
  auto pairs = std::make_shared<detail::PairSet>();
  AxiomProbe probe;
  probe.samples = kConstructedProbeSamples;
  probe.head = kConstructedProbeHead;
  for (const auto& u : d.utility()) probe.u.push_back(u);

  if (!d.plausibilistic()) {
    auto pl = detail::identity_set_measure(sit);
    auto symbols = detail::state_symbols(sit);
    const Value all = Value::set(symbols);
    auto graph = [&](const Act& a) {
      std::vector<Value> out;
      for (std::size_t s = 0; s < symbols.size(); ++s) out.push_back(Value::pair(symbols[s], d.utility(a.outcome[s])));
      return Value::set(std::move(out));
    };
    std::vector<Value> graphs;
    for (const auto& a : acts) graphs.push_back(graph(a));
    for (std::size_t i = 0; i < acts.size(); ++i)
      for (std::size_t j = 0; j < acts.size(); ++j)
        if (table.holds(acts[i].name, acts[j].name)) pairs->emplace(graphs[i], graphs[j]);
    auto u_domain = d.u_domain();
    const std::size_t n_states = symbols.size();
    detail::ConstructedOrder order{
        [symbols, n_states](const Value& x) -> std::optional<Value> {
          if (!x.is_set() || x.elements().size() != n_states || !x.elements().front().is_pair()) return std::nullopt;
          const Value& u = x.elements().front().second();
          for (std::size_t i = 0; i < n_states; ++i) {
            const Value& e = x.elements()[i];
            if (!e.is_pair() || e.first() != symbols[i] || e.second() != u) return std::nullopt;
          }
          return u;
        },
        u_domain, pairs};
    auto member = [u_domain, symbols](const Value& x) {
      if (!x.is_set()) return false;
      return std::all_of(x.elements().begin(), x.elements().end(), [&](const Value& e) {
        return e.is_pair() && std::binary_search(symbols.begin(), symbols.end(), e.first()) &&
               u_domain->contains(e.second());
      });
    };
    auto v = detail::constructed_v_domain("StateUtilityGraphs", "Graphs" + all.str() + "#" + u_domain->signature(),
                                          member, order, graphs);
    probe.p = detail::table_values(pl);
    auto e = make_expectation_domain(
        "thm2", u_domain, pl.domain(), v, detail::cross, [](const Value& x, const Value& y) { return set_union(x, y); },
        [all](const Value& u) { return detail::cross(all, u); }, probe);
    return DecisionProblem(d.situation_ptr(), u_domain, d.utility(), PlausibilisticPart{e, pl});
  }

  const auto& e1 = d.expectation();
  const Value top = *e1.p->top();
  auto lottery_set = [&](const Act& a) {
    std::vector<Value> out;
    for (const auto& [u, p] : utility_lottery(d, a)) out.push_back(Value::pair(p, u));
    return Value::set(std::move(out));
  };
  std::vector<Value> lotteries;
  for (const auto& a : acts) lotteries.push_back(lottery_set(a));
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j)
      if (table.holds(acts[i].name, acts[j].name)) pairs->emplace(lotteries[i], lotteries[j]);
  auto u_domain = e1.u;
  auto p_domain = e1.p;
  detail::ConstructedOrder order{
      [top](const Value& x) -> std::optional<Value> {
        if (!x.is_set() || x.elements().size() != 1 || !x.elements()[0].is_pair() || x.elements()[0].first() != top)
          return std::nullopt;
        return x.elements()[0].second();
      },
      u_domain, pairs};
  auto member = [u_domain, p_domain](const Value& x) {
    if (!x.is_set()) return false;
    return std::all_of(x.elements().begin(), x.elements().end(), [&](const Value& e) {
      return e.is_pair() && p_domain->contains(e.first()) && u_domain->contains(e.second());
    });
  };
  auto v = detail::constructed_v_domain("LotterySets",
                                        "LotterySets#" + p_domain->signature() + "#" + u_domain->signature(),
                                        member, order, lotteries);
  probe.p = detail::table_values(d.measure());
  auto e = make_expectation_domain(
      "thm2", u_domain, p_domain, v,
      [](const Value& p, const Value& u) { return Value::set({Value::pair(p, u)}); },
      [](const Value& x, const Value& y) { return set_union(x, y); },
      [top](const Value& u) { return Value::set({Value::pair(top, u)}); }, probe);
  return DecisionProblem(d.situation_ptr(), u_domain, d.utility(), PlausibilisticPart{e, d.measure()});
}

/// Largest state count for which the constructed P order keeps a finite
/// carrier (and hence an order report).
inline constexpr std::size_t kOrdinalReportStates = 6;

/// Ordinal representation: utilities (u(c), c) ordered by u, plausibilities
/// (Pl(X), X) ordered by Pl, and GEU evaluating to {(s, (u(a(s)), a(s)))}.
/// Nonplausibilistic problems use Pl(X) = X over (2^S, subset).
inline DecisionProblem represent_ordinal(const DecisionProblem& d, const PreferenceRelation& table) {
  if (auto w = weakly_respects_utility_witness(table, d))
    throw Error(Errc::NotWeaklyRespectingUtility, "table orders constant acts against u", {w->first, w->second});
  detail::require_consistent_on_duplicates(table, d);

  const auto& sit = d.situation();
  const auto& acts = sit.acts();
  auto symbols = detail::state_symbols(sit);
  const Value all = Value::set(symbols);
  const auto pl1 = d.plausibilistic() ? d.measure() : detail::identity_set_measure(sit);
  const DomainPtr u1 = d.u_domain();
  const DomainPtr p1 = pl1.domain();

  std::vector<Value> consequence_symbols;
  for (const auto& c : sit.consequences()) consequence_symbols.push_back(Value::symbol(c));
  std::set<Value> c_set(consequence_symbols.begin(), consequence_symbols.end());

  // U2 = U1 x C ordered by the first component.
  Domain::Spec us;
  us.kind = u1->finite() ? DomainKind::Finite : DomainKind::Custom;
  us.name = "TaggedUtilities";
  us.signature = "Tagged(" + u1->signature() + ")" + Value::set(consequence_symbols).str();
  us.member = [u1, c_set](const Value& x) { return x.is_pair() && u1->contains(x.first()) && c_set.count(x.second()); };
  us.leq = [u1](const Value& x, const Value& y) { return u1->leq(x.first(), y.first()); };
  std::vector<Value> u2_values;
  for (std::size_t c = 0; c < consequence_symbols.size(); ++c)
    u2_values.push_back(Value::pair(d.utility(c), consequence_symbols[c]));
  us.sampler = [u1, consequence_symbols, u2_values](std::uint64_t seed, std::size_t n) {
    std::vector<Value> out = u2_values;
    for (const auto& u : u1->probe(seed, n))
      for (const auto& c : consequence_symbols) {
        if (out.size() >= n) return out;
        out.push_back(Value::pair(u, c));
      }
    return out;
  };
  if (u1->finite()) {
    std::vector<Value> carrier;
    for (const auto& u : *u1->carrier())
      for (const auto& c : consequence_symbols) carrier.push_back(Value::pair(u, c));
    us.carrier = std::move(carrier);
  }
  DomainPtr u2 = std::make_shared<Domain>(std::move(us));

  // P2 = P1 x 2^S ordered by the first component; the carrier is the image
  // of Pl2 when small enough to report on.
  const std::size_t n = pl1.table().size();
  std::vector<Value> pl2_table(n);
  for (Subset x = 0; x < n; ++x) pl2_table[x] = Value::pair(pl1(x), detail::subset_value(x, symbols));
  Domain::Spec ps;
  ps.kind = DomainKind::Custom;
  ps.name = "TaggedPlausibilities";
  ps.signature = "Tagged(" + p1->signature() + ")" + all.str();
  ps.member = [p1](const Value& x) { return x.is_pair() && p1->contains(x.first()) && x.second().is_set(); };
  ps.leq = [p1](const Value& x, const Value& y) { return p1->leq(x.first(), y.first()); };
  ps.sampler = [pl2_table](std::uint64_t, std::size_t k) {
    return std::vector<Value>(pl2_table.begin(), pl2_table.begin() + std::min(k, pl2_table.size()));
  };
  ps.bottom = pl2_table.front();
  ps.top = pl2_table.back();
  ps.transitive = p1->transitive();
  if (sit.states().size() <= kOrdinalReportStates) {
    ps.kind = DomainKind::Finite;
    ps.carrier = pl2_table;
  }
  DomainPtr p2 = std::make_shared<Domain>(std::move(ps));
  PlausibilityMeasure pl2(sit.states(), p2, pl2_table);

  // V = 2^{S x U2}.
  std::vector<Value> graphs;
  for (const auto& a : acts) {
    std::vector<Value> g;
    for (std::size_t s = 0; s < symbols.size(); ++s) g.push_back(Value::pair(symbols[s], u2_values[a.outcome[s]]));
    graphs.push_back(Value::set(std::move(g)));
  }
  auto pairs = std::make_shared<detail::PairSet>();
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j)
      if (table.holds(acts[i].name, acts[j].name)) pairs->emplace(graphs[i], graphs[j]);
  const std::size_t n_states = symbols.size();
  detail::ConstructedOrder order{
      [all, n_states](const Value& x) -> std::optional<Value> {
        if (!x.is_set() || x.elements().size() != n_states || !x.elements().front().is_pair()) return std::nullopt;
        const Value& u = x.elements().front().second();
        if (x != detail::cross(all, u)) return std::nullopt;
        return u;
      },
      u2, pairs};
  auto member = [u2, symbols](const Value& x) {
    if (!x.is_set()) return false;
    return std::all_of(x.elements().begin(), x.elements().end(), [&](const Value& e) {
      return e.is_pair() && std::binary_search(symbols.begin(), symbols.end(), e.first()) && u2->contains(e.second());
    });
  };
  auto v = detail::constructed_v_domain("TaggedGraphs", "Graphs" + all.str() + "#" + u2->signature(), member, order,
                                        graphs);
  AxiomProbe probe;
  probe.samples = kConstructedProbeSamples;
  probe.head = kConstructedProbeHead;
  probe.u = u2_values;
  probe.p = pl2_table;
  auto e = make_expectation_domain(
      "thm3", u2, p2, v, [](const Value& p, const Value& u) { return detail::cross(p.second(), u); },
      [](const Value& x, const Value& y) { return set_union(x, y); },
      [all](const Value& u) { return detail::cross(all, u); }, probe);
  return DecisionProblem(d.situation_ptr(), u2, u2_values, PlausibilisticPart{e, std::move(pl2)});
}

}  // namespace geu
