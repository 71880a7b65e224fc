#pragma once

#include "geu/representations.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geu {

/// A simple lottery: a plausibility measure on the subsets of its support.
/// The support is kept sorted by consequence label, and bit i of a subset
/// stands for support[i].
struct Lottery {
  std::string name;
  std::vector<std::string> support;
  PlausibilityMeasure measure;

  const Value& atom(std::size_t i) const { return measure(Subset{1} << i); }

  std::optional<std::size_t> position(const std::string& c) const {
    auto it = std::lower_bound(support.begin(), support.end(), c);
    if (it == support.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - support.begin());
  }
};

/// Structural equality, ignoring names.
inline bool same_lottery(const Lottery& a, const Lottery& b) {
  return a.support == b.support && a.measure == b.measure;
}

/// Lottery from a full assignment keyed by subsets of the support.
inline Lottery make_lottery(std::string name, std::vector<std::string> support, DomainPtr domain,
                            std::vector<Value> table) {
  if (support.empty()) throw Error(Errc::InvalidInput, "lottery '" + name + "' has empty support");
  auto sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::InvalidInput, "lottery '" + name + "' repeats a consequence");
  if (sorted != support) {
    // Re-key the table onto the sorted support.
    std::vector<std::size_t> to_sorted(support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
      to_sorted[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), support[i]) - sorted.begin());
    if (table.size() != (std::size_t{1} << support.size()))
      throw Error(Errc::InvalidInput, "lottery '" + name + "' table size mismatch");
    std::vector<Value> rekeyed(table.size());
    for (Subset x = 0; x < table.size(); ++x) {
      Subset y = 0;
      for (auto i : members(x)) y |= Subset{1} << to_sorted[i];
      rekeyed[y] = table[x];
    }
    table = std::move(rekeyed);
  }
  PlausibilityMeasure m(sorted, std::move(domain), std::move(table));
  return Lottery{std::move(name), std::move(sorted), std::move(m)};
}

/// Additive lottery on [0,1] from atoms.
inline Lottery make_standard_lottery(std::string name, const std::vector<std::pair<std::string, Rational>>& atoms) {
  std::vector<std::string> support;
  std::vector<Rational> ps;
  for (const auto& [c, p] : atoms) {
    support.push_back(c);
    ps.push_back(p);
  }
  if (!is_probability_atoms(ps)) throw Error(Errc::NotAProbability, name);
  return make_lottery(std::move(name), std::move(support), unit_interval_domain(), additive_table(ps));
}

/// The lottery giving c for sure: top on {c}.
inline Lottery degenerate_lottery(const std::string& c, const DomainPtr& p_domain) {
  return make_lottery(c, {c}, p_domain, {*p_domain->bottom(), *p_domain->top()});
}

/// (L, C, P).
class LotteryDecisionSituation {
 public:
  LotteryDecisionSituation(std::vector<Lottery> lotteries, std::vector<std::string> consequences, DomainPtr p_domain)
      : lotteries_(std::move(lotteries)), consequences_(std::move(consequences)), p_(std::move(p_domain)) {
    if (lotteries_.empty()) throw Error(Errc::InvalidInput, "no lotteries");
    detail::require_unique(consequences_, "consequence");
    std::vector<std::string> names;
    std::set<std::string> cs(consequences_.begin(), consequences_.end());
    for (const auto& l : lotteries_) {
      names.push_back(l.name);
      if (!same_domain(l.measure.domain(), p_))
        throw Error(Errc::DomainMismatch, "lottery '" + l.name + "' takes values outside P");
      for (const auto& c : l.support)
        if (!cs.count(c)) throw Error(Errc::InvalidInput, "lottery '" + l.name + "' uses unknown consequence", {c});
    }
    detail::require_unique(names, "lottery");
  }

  const std::vector<Lottery>& lotteries() const { return lotteries_; }
  const std::vector<std::string>& consequences() const { return consequences_; }
  const DomainPtr& p_domain() const { return p_; }

  const Lottery& lottery(const std::string& name) const {
    for (const auto& l : lotteries_)
      if (l.name == name) return l;
    throw Error(Errc::UnknownLottery, name);
  }
  std::size_t consequence_index(const std::string& c) const {
    for (std::size_t i = 0; i < consequences_.size(); ++i)
      if (consequences_[i] == c) return i;
    throw Error(Errc::InvalidInput, "unknown consequence '" + c + "'");
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& l : lotteries_) out.push_back(l.name);
    return out;
  }

 private:
  std::vector<Lottery> lotteries_;
  std::vector<std::string> consequences_;
  DomainPtr p_;
};

/// (L, E, u).
class LotteryDecisionProblem {
 public:
  LotteryDecisionProblem(LotteryDecisionSituation situation, ExpectationPtr expectation, std::vector<Value> utility)
      : situation_(std::move(situation)), e_(std::move(expectation)), utility_(std::move(utility)) {
    if (!same_domain(e_->p, situation_.p_domain()))
      throw Error(Errc::DomainMismatch, "expectation domain's P differs from the lotteries'");
    if (utility_.size() != situation_.consequences().size())
      throw Error(Errc::InvalidInput, "utility must be total on the consequences");
    for (const auto& u : utility_)
      if (!e_->u->contains(u)) throw Error(Errc::InvalidInput, "utility outside U", {u.str()});
  }

  const LotteryDecisionSituation& situation() const { return situation_; }
  const ExpectationDomain& expectation() const { return *e_; }
  const ExpectationPtr& expectation_ptr() const { return e_; }
  const std::vector<Value>& utility() const { return utility_; }
  const Value& utility(const std::string& c) const { return utility_[situation_.consequence_index(c)]; }

 private:
  LotteryDecisionSituation situation_;
  ExpectationPtr e_;
  std::vector<Value> utility_;
};

/// The oplus-fold of l(c) (x) u(c) over the support, in ascending order of
/// (utility, consequence).
inline Value lottery_geu(const LotteryDecisionProblem& lp, const Lottery& l) {
  const auto& e = lp.expectation();
  std::vector<std::pair<Value, std::size_t>> terms;
  for (std::size_t i = 0; i < l.support.size(); ++i) terms.emplace_back(lp.utility(l.support[i]), i);
  std::sort(terms.begin(), terms.end());
  std::optional<Value> acc;
  for (const auto& [u, i] : terms) {
    auto term = e.otimes(l.atom(i), u);
    acc = acc ? e.oplus(*acc, term) : std::move(term);
  }
  return *acc;
}

inline Value lottery_geu(const LotteryDecisionProblem& lp, const std::string& name) {
  return lottery_geu(lp, lp.situation().lottery(name));
}

/// Orders lotteries by lottery_geu under the valuation order.
inline PreferenceRelation rule_lottery_geu(const LotteryDecisionProblem& lp) {
  const auto& ls = lp.situation().lotteries();
  std::vector<Value> vs;
  for (const auto& l : ls) vs.push_back(lottery_geu(lp, l));
  PreferenceRelation r(lp.situation().names());
  const auto& v = *lp.expectation().v;
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = 0; j < ls.size(); ++j) r.set(i, j, v.leq(vs[i], vs[j]));
  return r;
}

// ---------------------------------------------------------------- Acts and lotteries

/// ((A, S, C), P, Pl).
struct PlausibilisticSituation {
  SituationPtr situation;
  PlausibilityMeasure measure;
};

inline PlausibilisticSituation plausibilistic_situation(const DecisionProblem& d) {
  return {d.situation_ptr(), d.measure()};
}

/// l(Y) = Pl(a^{-1}(Y)) on subsets Y of ran(a).
inline Lottery induce_lottery(const PlausibilisticSituation& ps, const Act& a) {
  const auto& sit = *ps.situation;
  std::set<std::size_t> range(a.outcome.begin(), a.outcome.end());
  std::vector<std::size_t> by_label(range.begin(), range.end());
  std::sort(by_label.begin(), by_label.end(),
            [&](std::size_t x, std::size_t y) { return sit.consequences()[x] < sit.consequences()[y]; });
  std::vector<std::string> support;
  for (auto c : by_label) support.push_back(sit.consequences()[c]);
  const std::size_t n = std::size_t{1} << support.size();
  std::vector<Value> table(n);
  for (Subset y = 0; y < n; ++y) {
    std::set<std::size_t> ys;
    for (auto i : members(y)) ys.insert(by_label[i]);
    table[y] = ps.measure(sit.preimage(a, ys));
  }
  return make_lottery(a.name, std::move(support), ps.measure.domain(), std::move(table));
}

inline Lottery induce_lottery(const PlausibilisticSituation& ps, const std::string& act) {
  return induce_lottery(ps, ps.situation->act(act));
}

/// Induced lottery situation together with the lottery each act induces.
struct InducedLotteries {
  LotteryDecisionSituation situation;
  std::vector<std::size_t> act_lottery;  // index into situation.lotteries()
};

/// {l_a : a in A}, deduplicated structurally; each lottery keeps the name of
/// the first act inducing it.
inline InducedLotteries induce_situation(const PlausibilisticSituation& ps) {
  std::vector<Lottery> ls;
  std::vector<std::size_t> assignment;
  for (const auto& a : ps.situation->acts()) {
    auto l = induce_lottery(ps, a);
    auto it = std::find_if(ls.begin(), ls.end(), [&](const Lottery& m) { return same_lottery(m, l); });
    if (it == ls.end()) {
      assignment.push_back(ls.size());
      ls.push_back(std::move(l));
    } else {
      assignment.push_back(static_cast<std::size_t>(it - ls.begin()));
    }
  }
  return {LotteryDecisionSituation(std::move(ls), ps.situation->consequences(), ps.measure.domain()),
          std::move(assignment)};
}

namespace detail {

inline std::vector<Lottery> distinct_lotteries(const LotteryDecisionSituation& ls) {
  std::vector<Lottery> out;
  for (const auto& l : ls.lotteries())
    if (std::none_of(out.begin(), out.end(), [&](const Lottery& m) { return same_lottery(m, l); })) out.push_back(l);
  return out;
}

}  // namespace detail

/// A plausibilistic situation inducing `ls`. States are the choice
/// functions f with f(l) in supp(l); the act for l reads off f(l). Pl(Y) is
/// bottom when no lottery has a nonempty X with a_l^{-1}(X) inside Y, l(Z)
/// when exactly one lottery does (Z the union of such X), and top otherwise.
inline PlausibilisticSituation construct_situation(const LotteryDecisionSituation& ls) {
  auto lotteries = detail::distinct_lotteries(ls);
  std::size_t count = 1;
  for (const auto& l : lotteries) {
    count *= l.support.size();
    if (count > kMaxStates)
      throw Error(Errc::TooLarge, "choice-function state space exceeds " + std::to_string(kMaxStates) + " states");
  }
  // Enumerate choice functions in mixed radix, first lottery fastest.
  std::vector<std::vector<std::size_t>> choice(count, std::vector<std::size_t>(lotteries.size()));
  for (std::size_t s = 0; s < count; ++s) {
    std::size_t rest = s;
    for (std::size_t k = 0; k < lotteries.size(); ++k) {
      choice[s][k] = rest % lotteries[k].support.size();
      rest /= lotteries[k].support.size();
    }
  }
  std::vector<std::string> states;
  for (const auto& f : choice) {
    std::string label = "f(";
    for (std::size_t k = 0; k < f.size(); ++k) label += (k ? "," : "") + lotteries[k].support[f[k]];
    states.push_back(label + ")");
  }
  // One act per lottery name; structurally equal lotteries share a coordinate.
  std::vector<Act> acts;
  for (const auto& l : ls.lotteries()) {
    auto k = static_cast<std::size_t>(
        std::find_if(lotteries.begin(), lotteries.end(), [&](const Lottery& m) { return same_lottery(m, l); }) -
        lotteries.begin());
    Act a{l.name, {}};
    for (const auto& f : choice) a.outcome.push_back(ls.consequence_index(lotteries[k].support[f[k]]));
    acts.push_back(std::move(a));
  }
  // preimage[k][i]: states where lottery k's act yields its i-th support element.
  std::vector<std::vector<Subset>> preimage(lotteries.size());
  for (std::size_t k = 0; k < lotteries.size(); ++k) {
    preimage[k].assign(lotteries[k].support.size(), 0);
    for (std::size_t s = 0; s < count; ++s) preimage[k][choice[s][k]] |= Subset{1} << s;
  }
  const auto& p = ls.p_domain();
  const std::size_t n = std::size_t{1} << count;
  std::vector<Value> table(n);
  for (Subset y = 0; y < n; ++y) {
    std::size_t qualifying = 0;
    std::size_t which = 0;
    Subset z = 0;
    for (std::size_t k = 0; k < lotteries.size(); ++k) {
      Subset zk = 0;
      for (std::size_t i = 0; i < preimage[k].size(); ++i)
        if ((preimage[k][i] & ~y) == 0) zk |= Subset{1} << i;
      if (zk) {
        ++qualifying;
        which = k;
        z = zk;
      }
    }
    if (qualifying == 0) table[y] = *p->bottom();
    else if (qualifying == 1) table[y] = lotteries[which].measure(z);
    else table[y] = *p->top();
  }
  auto sit = std::make_shared<DecisionSituation>(states, ls.consequences(), std::move(acts));
  return {sit, PlausibilityMeasure(std::move(states), p, std::move(table))};
}

/// Standard case: [0,1) cut at every cumulative breakpoint of every
/// lottery, each interval weighted by its length. The act for l yields its
/// k-th support element on the k-th cumulative band.
inline PlausibilisticSituation construct_situation_standard(const LotteryDecisionSituation& ls) {
  if (ls.p_domain()->kind() != DomainKind::UnitInterval)
    throw Error(Errc::NotStandard, "lotteries are not valued in [0,1]");
  auto lotteries = detail::distinct_lotteries(ls);
  std::vector<std::vector<Rational>> atoms;
  std::set<Rational> cuts{Rational(0), Rational(1)};
  for (const auto& l : lotteries) {
    auto a = probability_atoms(l.measure);
    if (!a) throw Error(Errc::NotStandard, "lottery '" + l.name + "' is not a rational probability");
    Rational acc = 0;
    for (std::size_t i = 0; i < a->size(); ++i) {
      if ((*a)[i] <= 0)
        throw Error(Errc::NotStandard, "lottery '" + l.name + "' puts no mass on a support element", {l.support[i]});
      acc += (*a)[i];
      cuts.insert(acc);
    }
    atoms.push_back(*a);
  }
  std::vector<Rational> bounds(cuts.begin(), cuts.end());
  const std::size_t count = bounds.size() - 1;
  if (count > kMaxStates)
    throw Error(Errc::TooLarge, "interval partition exceeds " + std::to_string(kMaxStates) + " states");
  std::vector<std::string> states;
  std::vector<Rational> lengths;
  for (std::size_t k = 0; k < count; ++k) {
    states.push_back("[" + to_string(bounds[k]) + "," + to_string(bounds[k + 1]) + ")");
    lengths.push_back(bounds[k + 1] - bounds[k]);
  }
  std::vector<Act> acts;
  for (const auto& l : ls.lotteries()) {
    auto j = static_cast<std::size_t>(
        std::find_if(lotteries.begin(), lotteries.end(), [&](const Lottery& m) { return same_lottery(m, l); }) -
        lotteries.begin());
    Act a{l.name, {}};
    for (std::size_t k = 0; k < count; ++k) {
      Rational acc = 0;
      std::size_t band = 0;
      for (; band < atoms[j].size(); ++band) {
        acc += atoms[j][band];
        if (bounds[k] < acc) break;
      }
      a.outcome.push_back(ls.consequence_index(lotteries[j].support[band]));
    }
    acts.push_back(std::move(a));
  }
  auto sit = std::make_shared<DecisionSituation>(states, ls.consequences(), std::move(acts));
  return {sit, make_probability_measure(std::move(states), lengths)};
}

/// First (a1, a2, b) with l_{a1} = l_{a2} but b compared differently
/// against them.
inline std::optional<std::vector<std::string>> lottery_uniformity_witness(const PlausibilisticSituation& ps,
                                                                          const PreferenceRelation& r) {
  auto induced = induce_situation(ps);
  const auto& acts = ps.situation->acts();
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j) {
      if (i == j || induced.act_lottery[i] != induced.act_lottery[j]) continue;
      const auto& a1 = acts[i].name;
      const auto& a2 = acts[j].name;
      for (const auto& b : acts)
        if (r.holds(a1, b.name) != r.holds(a2, b.name) || r.holds(b.name, a1) != r.holds(b.name, a2))
          return std::vector<std::string>{a1, a2, b.name};
    }
  return std::nullopt;
}

inline bool is_lottery_uniform(const PlausibilisticSituation& ps, const PreferenceRelation& r) {
  return !lottery_uniformity_witness(ps, r);
}

using LotteryRule = std::function<PreferenceRelation(const LotteryDecisionProblem&)>;
using ActRule = std::function<PreferenceRelation(const DecisionProblem&)>;

/// a1 <= a2 iff l_{a1} <= l_{a2} under the lottery rule, applied to the
/// lottery problem the act problem induces.
inline ActRule lift_lottery_rule(LotteryRule rule) {
  return [rule = std::move(rule)](const DecisionProblem& d) {
    if (!d.plausibilistic()) throw Error(Errc::NotPlausibilistic, "lifted lottery rules need beliefs");
    auto induced = induce_situation(plausibilistic_situation(d));
    LotteryDecisionProblem lp(induced.situation, d.plausibilistic_part()->expectation, d.utility());
    auto lr = rule(lp);
    PreferenceRelation r(d.situation().act_names());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) r.set(i, j, lr.holds(induced.act_lottery[i], induced.act_lottery[j]));
    return r;
  };
}

}  // namespace geu
