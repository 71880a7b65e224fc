#pragma once

#include "geu/horse.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace geu {

/// Size limits for generated problems.
struct Caps {
  std::size_t states = 6;
  std::size_t acts = 6;
  std::size_t consequences = 5;
};

// ---------------------------------------------------------------- Generators

inline std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Rational utility in [-10, 10] with denominator at most 4.
inline Value random_utility(Rng& rng) { return Value(rng.rational(-10, 10, 4)); }

/// Nonplausibilistic rational problem. With `constants`, at least two
/// constant acts are included when there are two consequences.
inline DecisionProblem random_problem(Rng& rng, const Caps& caps, bool constants = false) {
  const auto ns = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(caps.states)));
  const auto nc = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(caps.consequences)));
  const auto na = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(caps.acts)));
  auto states = numbered("s", ns);
  auto consequences = numbered("c", nc);
  std::vector<Value> utility;
  for (std::size_t c = 0; c < nc; ++c) utility.push_back(random_utility(rng));
  // Repeated utility levels make indistinguishable acts more likely.
  if (nc > 2 && rng.coin()) utility[nc - 1] = utility[0];
  std::vector<Act> acts;
  for (std::size_t a = 0; a < na; ++a) {
    Act act{"a" + std::to_string(a + 1), {}};
    const bool forced = constants && a < 2 && nc >= 2;
    bool constant = forced || rng.below(5) == 0;
    auto fixed = forced ? a : rng.below(nc);
    for (std::size_t s = 0; s < ns; ++s) act.outcome.push_back(constant ? fixed : rng.below(nc));
    acts.push_back(std::move(act));
  }
  auto sit = std::make_shared<DecisionSituation>(states, consequences, std::move(acts));
  return DecisionProblem(sit, rationals_domain(), std::move(utility));
}

/// Probability atoms with denominator up to 6 * |S|.
inline std::vector<Rational> random_atoms(Rng& rng, std::size_t n, bool positive = false) {
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = rng.between(positive ? 1 : 0, 6);
    total += x;
  }
  if (total == 0) {
    w[rng.below(n)] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  for (auto x : w) out.emplace_back(Integer(x), Integer(total));
  return out;
}

inline DecisionProblem with_probability(const DecisionProblem& d, const std::vector<Rational>& atoms) {
  auto pl = make_probability_measure(d.situation().states(), atoms);
  return DecisionProblem(d.situation_ptr(), rationals_domain(), d.utility(),
                         PlausibilisticPart{standard_expectation(), std::move(pl)});
}

inline DecisionProblem with_credal_set(const DecisionProblem& d, Rng& rng, std::size_t max_measures = 4) {
  auto k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_measures)));
  std::vector<NamedMeasure> ms;
  for (std::size_t i = 0; i < k; ++i) ms.push_back({"P" + std::to_string(i + 1), random_atoms(rng, d.situation().states().size())});
  auto cp = make_pl_from_probability_set(d.situation().states(), ms);
  return DecisionProblem(d.situation_ptr(), rationals_domain(), d.utility(),
                         PlausibilisticPart{credal_expectation(cp.domain), cp.measure});
}

/// Belief function from random masses on up to four focal sets.
inline PlausibilityMeasure random_belief(Rng& rng, const std::vector<std::string>& states) {
  const Subset full = full_set(states.size());
  auto k = rng.between(1, 4);
  std::vector<std::pair<Subset, Rational>> masses;
  std::vector<std::int64_t> w;
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < k; ++i) {
    Subset x = 0;
    while (x == 0) x = rng.next() & full;
    auto m = rng.between(1, 5);
    masses.emplace_back(x, 0);
    w.push_back(m);
    total += m;
  }
  for (std::size_t i = 0; i < masses.size(); ++i) masses[i].second = Rational(Integer(w[i]), Integer(total));
  return belief_from_masses(states, masses);
}

inline DecisionProblem with_belief(const DecisionProblem& d, Rng& rng) {
  return DecisionProblem(d.situation_ptr(), rationals_domain(), d.utility(),
                         PlausibilisticPart{standard_expectation(), random_belief(rng, d.situation().states())});
}

/// Random relation that is uniform and respects utility: each pair of
/// indistinguishability classes is related at random (or by random scores),
/// except that constant-utility classes follow the utility order.
inline PreferenceRelation random_uniform_table(Rng& rng, const DecisionProblem& d) {
  const auto& acts = d.situation().acts();
  auto rep = indistinguishability_classes(d);
  const auto& u = *d.u_domain();
  const bool scored = rng.coin();
  std::vector<Rational> score(acts.size());
  for (std::size_t i = 0; i < acts.size(); ++i)
    score[i] = constant_utility(d, acts[i]) ? d.utility(acts[i].outcome[0]).as_rational() : rng.rational(-10, 10, 4);
  std::map<std::pair<std::size_t, std::size_t>, bool> coin;
  PreferenceRelation r(d.situation().act_names());
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j) {
      auto ci = rep[i];
      auto cj = rep[j];
      bool v;
      if (constant_utility(d, acts[ci]) && constant_utility(d, acts[cj]))
        v = u.leq(d.utility(acts[ci].outcome[0]), d.utility(acts[cj].outcome[0]));
      else if (scored)
        v = score[ci] <= score[cj];
      else {
        auto key = std::make_pair(ci, cj);
        if (!coin.count(key)) coin[key] = ci == cj || rng.coin();
        v = coin[key];
      }
      r.set(i, j, v);
    }
  return r;
}

/// Adds a twin of a random act: same utility random variable, reached
/// through a fresh consequence when possible.
inline DecisionProblem with_twin(const DecisionProblem& d, Rng& rng) {
  const auto& sit = d.situation();
  auto consequences = sit.consequences();
  auto utility = d.utility();
  auto acts = sit.acts();
  const auto& base = acts[rng.below(acts.size())];
  Act twin{"t" + base.name, base.outcome};
  auto c = base.outcome[rng.below(base.outcome.size())];
  consequences.push_back("c" + std::to_string(consequences.size() + 1) + "x");
  utility.push_back(d.utility(c));
  for (auto& o : twin.outcome)
    if (o == c) o = consequences.size() - 1;
  acts.push_back(std::move(twin));
  auto s = std::make_shared<DecisionSituation>(sit.states(), std::move(consequences), std::move(acts));
  return DecisionProblem(s, d.u_domain(), std::move(utility), d.plausibilistic_part());
}

/// Breaks uniformity of `r` across the last act and its twin.
inline PreferenceRelation break_uniformity(Rng& rng, const DecisionProblem& d, PreferenceRelation r) {
  const auto& acts = d.situation().acts();
  const std::size_t t = acts.size() - 1;
  const std::size_t base = r.index(acts[t].name.substr(1));
  std::size_t b = rng.below(acts.size());
  if (b == t) b = base;
  r.set(t, b, !r.holds(base, b));
  return r;
}

/// Random relation with constant acts following the utility order.
inline PreferenceRelation random_weak_table(Rng& rng, const DecisionProblem& d) {
  const auto& acts = d.situation().acts();
  const auto& u = *d.u_domain();
  PreferenceRelation r(d.situation().act_names());
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j) {
      if (acts[i].outcome == acts[j].outcome) r.set(i, j, true);
      else if (acts[i].constant() && acts[j].constant())
        r.set(i, j, u.leq(d.utility(acts[i].outcome[0]), d.utility(acts[j].outcome[0])));
      else r.set(i, j, rng.coin());
    }
  // Acts with identical functions must be interchangeable.
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (acts[i].outcome == acts[j].outcome)
        for (std::size_t k = 0; k < acts.size(); ++k) {
          r.set(i, k, r.holds(j, k));
          r.set(k, i, r.holds(k, j));
        }
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (acts[i].outcome == acts[j].outcome) r.set(i, i, r.holds(j, j));
  return r;
}

/// Monotone [0,1]-valued table on the subsets of n elements.
inline std::vector<Value> random_monotone_table(Rng& rng, std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<Rational> f(size);
  for (Subset x = 1; x + 1 < size; ++x) {
    Rational m(Integer(rng.between(0, 4)), Integer(4));
    for (auto i : members(x)) m = std::max(m, f[x & ~(Subset{1} << i)]);
    f[x] = m;
  }
  f[size - 1] = 1;
  return {f.begin(), f.end()};
}

/// Up to three lotteries with supports of at most three consequences.
inline LotteryDecisionSituation random_lottery_situation(Rng& rng, bool standard) {
  auto consequences = numbered("c", 4);
  auto k = static_cast<std::size_t>(rng.between(1, 3));
  std::vector<Lottery> ls;
  std::size_t product = 1;
  for (std::size_t i = 0; i < k; ++i) {
    auto size = static_cast<std::size_t>(rng.between(1, 3));
    while (size > 1 && product * size > kMaxStates) --size;
    product *= size;
    auto pool = consequences;
    rng.shuffle(pool);
    std::vector<std::string> support(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    auto name = "l" + std::to_string(i + 1);
    if (standard) {
      auto atoms = random_atoms(rng, size, true);
      std::vector<std::pair<std::string, Rational>> as;
      for (std::size_t j = 0; j < size; ++j) as.emplace_back(support[j], atoms[j]);
      ls.push_back(make_standard_lottery(name, as));
    } else {
      ls.push_back(make_lottery(name, support, unit_interval_domain(), random_monotone_table(rng, size)));
    }
  }
  return LotteryDecisionSituation(std::move(ls), consequences, unit_interval_domain());
}

// ---------------------------------------------------------------- Suites

struct CaseResult {
  bool ok = true;
  std::string detail;
};

using SuiteCase = std::function<CaseResult(std::uint64_t seed, const Caps& caps)>;

struct Suite {
  std::string name;
  /// Suites documenting a known negative result count the cases that
  /// reproduce it instead of failing.
  bool expected_failures = false;
  SuiteCase run;
  Caps caps;
};

namespace fuzz_detail {

inline CaseResult fail(const std::string& what) { return {false, what}; }

inline std::string act_pair(const std::string& a, const std::string& b) { return "(" + a + ", " + b + ")"; }

inline CaseResult representation_case(std::uint64_t seed, const Caps& caps, const std::string& rule) {
  Rng rng(seed);
  auto d = random_problem(rng, caps);
  if (rule == "mmeu") d = with_credal_set(d, rng);
  auto t = transformation_for_rule(rule).apply(d);
  if (!congruent(t, d)) return fail("tau(d) not congruent");
  if (!relation_equal(rule_geu(t), find_rule(rule).evaluate(d))) return fail("GEU(tau(d)) differs from " + rule);
  return {};
}

inline CaseResult thm2_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  auto d = random_problem(rng, caps);
  if (rng.coin()) d = with_twin(d, rng);
  if (rng.coin()) d = rng.coin() ? with_probability(d, random_atoms(rng, d.situation().states().size())) : with_belief(d, rng);
  auto table = random_uniform_table(rng, d);
  auto t = represent_uniform(d, table);
  if (!congruent(t, d)) return fail("tau(d) not congruent");
  if (!relation_equal(rule_geu(t), table)) return fail("GEU(tau(d)) differs from the table");
  return {};
}

inline CaseResult thm2_nonuniform_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  auto d = with_twin(random_problem(rng, caps), rng);
  if (rng.coin()) d = with_belief(d, rng);
  auto table = break_uniformity(rng, d, random_uniform_table(rng, d));
  try {
    represent_uniform(d, table);
  } catch (const Error& e) {
    if (e.code() != Errc::NotUniform) return fail(std::string("unexpected error ") + e.what());
    const auto& w = e.witness();
    if (w.size() != 4 || !indistinguishable(d, w[0], w[2]) || !indistinguishable(d, w[1], w[3]) ||
        table.holds(w[0], w[1]) == table.holds(w[2], w[3]))
      return fail("invalid witness");
    return {};
  }
  return fail("non-uniform table was represented");
}

inline CaseResult thm3_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  auto d = random_problem(rng, caps, true);
  PreferenceRelation table(d.situation().act_names());
  if (rng.coin()) {
    d = with_belief(d, rng);
    table = rule_ceu(d);
  } else {
    if (rng.coin()) d = with_probability(d, random_atoms(rng, d.situation().states().size()));
    table = random_weak_table(rng, d);
  }
  auto t = represent_ordinal(d, table);
  if (!similar(t, d)) return fail("tau(d) not similar");
  if (!relation_equal(rule_geu(t), table)) return fail("GEU(tau(d)) differs from the table");
  const auto& p2 = *t.expectation().p;
  if (p2.report() && d.plausibilistic()) {
    const auto& pl = d.measure();
    bool shared = false;
    for (Subset x = 0; x < pl.table().size() && !shared; ++x)
      for (Subset y = x + 1; y < pl.table().size() && !shared; ++y) shared = pl(x) == pl(y);
    if (shared && p2.report()->antisymmetric) return fail("P2 reported antisymmetric despite shared values");
  }
  return {};
}

inline CaseResult round_trip(const LotteryDecisionSituation& ls, const PlausibilisticSituation& ps) {
  for (const auto& l : ls.lotteries()) {
    auto induced = induce_lottery(ps, l.name);
    if (!same_lottery(induced, l)) return fail("lottery " + l.name + " does not round-trip");
  }
  return {};
}

inline CaseResult prop_a3_case(std::uint64_t seed, const Caps&) {
  Rng rng(seed);
  auto ls = random_lottery_situation(rng, false);
  auto r = round_trip(ls, construct_situation(ls));
  if (!r.ok) return r;
  auto std_ls = random_lottery_situation(rng, true);
  r = round_trip(std_ls, construct_situation(std_ls));
  if (!r.ok) return r;
  return round_trip(std_ls, construct_situation_standard(std_ls));
}

inline CaseResult choquet_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  Caps c = caps;
  c.states = std::min<std::size_t>(caps.states, 5);
  auto base = random_problem(rng, c);
  auto states = base.situation().states();
  auto bel = random_belief(rng, states);
  auto core = core_extreme_points(bel);
  for (int k = 0; k < 5; ++k) {
    UtilityRandomVariable rv;
    for (std::size_t s = 0; s < states.size(); ++s) rv.push_back(random_utility(rng));
    auto ce = choquet_expectation(bel, rv).as_rational();
    std::optional<Rational> low;
    for (const auto& pr : core) {
      auto eu = expectation_under(pr, rv);
      if (!low || eu < *low) low = eu;
    }
    if (ce != *low) return fail("Choquet " + to_string(ce) + " != core minimum " + to_string(*low));
  }
  return {};
}

inline CaseResult respect_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  auto d = random_problem(rng, caps, true);
  auto n = d.situation().states().size();
  std::vector<std::pair<std::string, DecisionProblem>> cases{
      {"eu", with_probability(d, random_atoms(rng, n))},
      {"geu", with_probability(d, random_atoms(rng, n))},
      {"maximin", d},
      {"mmeu", with_credal_set(d, rng)},
      {"ceu", with_belief(d, rng)},
  };
  for (const auto& [rule, p] : cases)
    if (auto w = respects_utility_witness(find_rule(rule).evaluate(p), p))
      return fail(rule + " does not respect utility at " + act_pair(w->first, w->second));
  if (auto w = weakly_respects_utility_witness(rule_regret(d), d))
    return fail("regret does not weakly respect utility at " + act_pair(w->first, w->second));
  return {};
}

inline CaseResult eu_geu_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  auto d = random_problem(rng, caps);
  d = with_probability(d, random_atoms(rng, d.situation().states().size()));
  for (const auto& a : d.situation().acts()) {
    if (geu(d, a) != standard_eu(d, a)) return fail("geu != eu for " + a.name);
    if (choquet_expectation(d.measure(), utility_rv(d, a)) != standard_eu(d, a))
      return fail("Choquet != eu for additive measure, act " + a.name);
  }
  return {};
}

/// CEU where every act is a bijection onto distinctly valued consequences
/// and every focal set has two or more states, so all singleton preimages
/// have belief 0 and all acts are indistinguishable. Succeeds when a
/// non-uniformity witness is found.
inline CaseResult ceu_uniformity_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(rng.between(3, static_cast<std::int64_t>(std::max<std::size_t>(caps.states, 3))));
  auto states = numbered("s", n);
  auto consequences = numbered("c", n);
  std::vector<Value> utility;
  for (std::size_t c = 0; c < n; ++c) utility.emplace_back(Rational(static_cast<long long>(c + 1)));
  std::vector<Act> acts;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t a = 0; a < 2 + rng.below(3); ++a) {
    rng.shuffle(perm);
    acts.push_back(Act{"a" + std::to_string(a + 1), perm});
  }
  std::vector<std::pair<Subset, Rational>> masses;
  const Subset full = full_set(n);
  auto k = rng.between(1, 3);
  for (std::int64_t i = 0; i < k; ++i) {
    Subset x = 0;
    while (std::popcount(x) < 2) x = rng.next() & full;
    masses.emplace_back(x, Rational(1, k));
  }
  auto sit = std::make_shared<DecisionSituation>(states, consequences, std::move(acts));
  DecisionProblem d(sit, rationals_domain(), utility,
                    PlausibilisticPart{standard_expectation(), belief_from_masses(states, masses)});
  auto r = rule_ceu(d);
  if (auto w = uniformity_witness(r, d))
    return {true, "a1=" + w->a1 + " a2=" + w->a2 + " b1=" + w->b1 + " b2=" + w->b2};
  return {false, "CEU uniform on this problem"};
}

inline CaseResult lift_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  auto d = random_problem(rng, caps);
  d = rng.coin() ? with_probability(d, random_atoms(rng, d.situation().states().size())) : with_belief(d, rng);
  auto lifted = lift_lottery_rule(rule_lottery_geu)(d);
  if (!is_lottery_uniform(plausibilistic_situation(d), lifted)) return fail("lifted rule not lottery-uniform");
  // With injective utility, lottery terms are the GEU terms.
  std::set<Value> us(d.utility().begin(), d.utility().end());
  if (us.size() == d.utility().size() && !relation_equal(lifted, rule_geu(d)))
    return fail("lifted lottery GEU differs from GEU");
  return {};
}

inline CaseResult flatten_case(std::uint64_t seed, const Caps& caps) {
  Rng rng(seed);
  auto ls = random_lottery_situation(rng, true);
  std::vector<Value> utility;
  for (std::size_t c = 0; c < ls.consequences().size(); ++c) utility.push_back(random_utility(rng));
  LotteryDecisionProblem inner(ls, standard_expectation(), utility);
  auto ns = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(std::min<std::size_t>(caps.states, 4))));
  auto states = numbered("s", ns);
  std::vector<HorseLottery> hs;
  for (std::size_t h = 0; h < 3; ++h) {
    HorseLottery horse{"h" + std::to_string(h + 1), {}};
    for (std::size_t s = 0; s < ns; ++s) horse.outcome.push_back(rng.below(ls.lotteries().size()));
    hs.push_back(std::move(horse));
  }
  OuterPart outer{standard_expectation(), make_probability_measure(states, random_atoms(rng, ns))};
  AADecisionProblem p(states, inner, hs, outer);
  auto flat = flatten(p);
  for (const auto& h : p.horses())
    if (horse_geu(p, h) != geu(flat, h.name)) return fail("flatten changes the value of " + h.name);
  return {};
}

}  // namespace fuzz_detail

inline const std::vector<Suite>& suite_registry() {
  using namespace fuzz_detail;
  static const std::vector<Suite> suites{
      {"eu-geu", false, eu_geu_case, {}},
      {"maximin-rep", false, [](std::uint64_t s, const Caps& c) { return representation_case(s, c, "maximin"); }, {}},
      {"regret-rep", false, [](std::uint64_t s, const Caps& c) { return representation_case(s, c, "regret"); }, {}},
      {"mmeu-rep", false, [](std::uint64_t s, const Caps& c) { return representation_case(s, c, "mmeu"); }, {}},
      {"thm2", false, thm2_case, {5, 6, 5}},
      {"thm2-nonuniform", false, thm2_nonuniform_case, {5, 6, 5}},
      {"thm3", false, thm3_case, {5, 6, 5}},
      {"prop-a3", false, prop_a3_case, {}},
      {"choquet-core", false, choquet_case, {5, 5, 5}},
      {"respects-utility", false, respect_case, {}},
      {"lift-lottery", false, lift_case, {}},
      {"flatten", false, flatten_case, {}},
      {"ceu-uniformity", true, ceu_uniformity_case, {4, 6, 4}},
  };
  return suites;
}

inline const Suite& find_suite(const std::string& name) {
  for (const auto& s : suite_registry())
    if (s.name == name) return s;
  throw Error(Errc::InvalidInput, "unknown suite '" + name + "'");
}

/// Per-case seed derived from the run seed and the case index.
inline std::uint64_t case_seed(std::uint64_t seed, std::size_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SuiteReport {
  std::string name;
  bool expected_failures = false;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::optional<std::uint64_t> first_failing_seed;
  std::string first_failure;
  std::optional<Caps> shrunk;
  std::string first_witness;  // expected-failure suites

  bool ok() const { return expected_failures || failed == 0; }
};

namespace fuzz_detail {

inline CaseResult guarded(const Suite& s, std::uint64_t seed, const Caps& caps) {
  try {
    return s.run(seed, caps);
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace fuzz_detail

/// Runs `count` cases, split by index across threads. The report does not
/// depend on the thread count.
inline SuiteReport run_suite(const Suite& s, std::uint64_t seed, std::size_t count, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::vector<CaseResult> results(count);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) results[i] = fuzz_detail::guarded(s, case_seed(seed, i), s.caps);
    });
  for (auto& th : pool) th.join();

  SuiteReport rep{s.name, s.expected_failures, 0, 0, std::nullopt, "", std::nullopt, ""};
  for (std::size_t i = 0; i < count; ++i) {
    if (results[i].ok) {
      ++rep.passed;
      if (s.expected_failures && rep.first_witness.empty()) rep.first_witness = results[i].detail;
      continue;
    }
    ++rep.failed;
    if (rep.first_failing_seed) continue;
    rep.first_failing_seed = case_seed(seed, i);
    rep.first_failure = results[i].detail;
  }
  if (rep.first_failing_seed && !s.expected_failures) {
    // Shrink by lowering the caps while the same seed still fails.
    Caps c = s.caps;
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto* field : {&c.states, &c.acts, &c.consequences}) {
        if (*field <= 1) continue;
        --*field;
        auto r = fuzz_detail::guarded(s, *rep.first_failing_seed, c);
        if (!r.ok) {
          rep.first_failure = r.detail;
          progress = true;
        } else {
          ++*field;
        }
      }
    }
    rep.shrunk = c;
  }
  return rep;
}

}  // namespace geu
