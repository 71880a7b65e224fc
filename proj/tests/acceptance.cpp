// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include "oracles.hpp"

#include "geu/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace geu;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string note;
};

/// Collects the first failure and a count of checks.
class Checker {
 public:
  void require(bool cond, const std::string& what) {
    ++checks_;
    if (!cond && ok_) {
      ok_ = false;
      first_ = what;
    }
  }
  bool ok() const { return ok_; }
  std::size_t checks() const { return checks_; }
  const std::string& first() const { return first_; }

 private:
  bool ok_ = true;
  std::size_t checks_ = 0;
  std::string first_;
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", ms_since(t0));
  std::cout << (o.ok ? "PASS " : "FAIL ") << id << " " << title << " [" << buf << "]";
  if (!o.note.empty()) std::cout << " " << o.note;
  std::cout << std::endl;
  if (!o.ok) ++failures;
}

Outcome finish(const Checker& c, double elapsed_ms, double budget_ms, const std::string& extra = "") {
  std::ostringstream note;
  note << c.checks() << " checks";
  if (!extra.empty()) note << ", " << extra;
  if (!c.ok()) return {false, note.str() + "; first failure: " + c.first()};
  if (elapsed_ms >= budget_ms) {
    note << "; over budget " << budget_ms << " ms";
    return {false, note.str()};
  }
  return {true, note.str()};
}

std::vector<ExpectationPtr> constructed;  // from the representation criteria, re-checked later
std::vector<AxiomProbe> constructed_probes;
std::vector<PlausibilityMeasure> constructed_measures;

void keep(const DecisionProblem& t) {
  AxiomProbe probe;
  probe.samples = kConstructedProbeSamples;
  probe.head = kConstructedProbeHead;
  probe.u = t.utility();
  probe.p = t.measure().table();
  constructed.push_back(t.plausibilistic_part()->expectation);
  constructed_probes.push_back(std::move(probe));
  constructed_measures.push_back(t.measure());
}

PreferenceRelation from_scores(const std::vector<std::string>& names, const oracle::Vec& s, bool lower_better) {
  PreferenceRelation r(names);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) r.set(i, j, lower_better ? s[j] <= s[i] : s[i] <= s[j]);
  return r;
}

Outcome ac1() {
  auto d = load_act_problem(std::string(GEU_FIXTURES) + "/beldr.json");
  Checker c;
  auto t0 = Clock::now();
  auto v1 = choquet_expectation(d.measure(), utility_rv(d, "a1"));
  auto v2 = choquet_expectation(d.measure(), utility_rv(d, "a2"));
  auto r = rule_ceu(d);
  bool same = indistinguishable(d, "a1", "a2");
  double elapsed = ms_since(t0);
  c.require(v1 == Value(1), "CEU(a1) = " + v1.str());
  c.require(v2 == Value(2), "CEU(a2) = " + v2.str());
  c.require(r.strictly(r.index("a1"), r.index("a2")), "a1 not strictly below a2");
  c.require(same, "a1, a2 distinguishable");
  // Independent Moebius computation: mass 1 on {s1, s2}.
  std::vector<std::pair<Subset, Rational>> masses{{0b011, Rational(1)}};
  c.require(oracle::belief_lower(masses, oracle::rationals({1, 2, 3})) == v1.as_rational(), "oracle a1");
  c.require(oracle::belief_lower(masses, oracle::rationals({3, 2, 1})) == v2.as_rational(), "oracle a2");
  char compute[32];
  std::snprintf(compute, sizeof compute, "%.3f ms", elapsed);
  return finish(c, elapsed, 1.0, "CEU(a1)=" + v1.str() + " CEU(a2)=" + v2.str() + ", evaluation " + compute);
}

Outcome ac2() {
  auto d = load_act_problem(std::string(GEU_FIXTURES) + "/beldr.json");
  auto r = rule_ceu(d);
  Checker c;
  c.require(!is_uniform(r, d), "CEU reported uniform");
  auto w = uniformity_witness(r, d);
  std::string note;
  if (w) {
    note = "witness (" + w->a1 + ", " + w->a2 + ") vs (" + w->b1 + ", " + w->b2 + ")";
    c.require(std::set<std::string>{w->a1, w->a2, w->b1, w->b2} == std::set<std::string>{"a1", "a2"},
              "witness outside {a1, a2}");
    c.require(indistinguishable(d, w->a1, w->b1) && indistinguishable(d, w->a2, w->b2), "witness acts distinguishable");
    c.require(r.holds(w->a1, w->a2) != r.holds(w->b1, w->b2), "witness pairs ordered alike");
  }
  return finish(c, 0, 1e9, note);
}

Outcome ac3() {
  Checker c;
  auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    auto d = random_problem(rng, Caps{6, 6, 5});
    auto rvs = fixture::all_rvs(d);
    auto names = d.situation().act_names();
    const auto tag = " seed " + std::to_string(seed);

    oracle::Vec mins;
    for (const auto& rv : rvs) mins.push_back(oracle::min_of(rv));
    auto tm = tau_maximin(d);
    c.require(congruent(tm, d), "maximin congruence" + tag);
    c.require(relation_equal(rule_geu(tm), rule_maximin(d)), "maximin relation" + tag);
    c.require(relation_equal(rule_geu(tm), from_scores(names, mins, false)), "maximin vs oracle" + tag);

    auto regrets = oracle::max_regret(rvs);
    Rational best = rvs[0][0];
    for (const auto& rv : rvs)
      for (const auto& x : rv) best = std::max(best, x);
    auto tr = tau_regret(d);
    c.require(congruent(tr, d), "regret congruence" + tag);
    for (std::size_t i = 0; i < rvs.size(); ++i)
      c.require(std::abs(geu::geu(tr, d.situation().acts()[i]).to_double() - to_double(Rational(best - regrets[i]))) <=
                    kRealTolerance,
                "regret value" + tag);
    c.require(relation_equal(rule_geu(tr), rule_regret(d)), "regret relation" + tag);
    c.require(relation_equal(rule_geu(tr), from_scores(names, regrets, true)), "regret vs oracle" + tag);

    auto dc = with_credal_set(d, rng, 4);
    std::vector<oracle::Vec> measures;
    auto components = credal_components(dc.measure());
    for (const auto& m : components.value()) measures.push_back(m.atoms);
    auto tc = tau_mmeu(dc);
    c.require(congruent(tc, dc), "mmeu congruence" + tag);
    c.require(relation_equal(rule_geu(tc), rule_mmeu(dc)), "mmeu relation" + tag);
    c.require(relation_equal(rule_geu(tc), from_scores(names, oracle::lower_expectations(measures, rvs), false)),
              "mmeu vs oracle" + tag);
  }
  return finish(c, ms_since(t0), 10000.0, "300 problems");
}

Outcome ac4() {
  Checker c;
  auto t0 = Clock::now();
  const Caps caps{5, 6, 5};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    auto d = random_problem(rng, caps);
    if (rng.coin()) d = with_twin(d, rng);
    if (rng.coin()) d = rng.coin() ? with_probability(d, random_atoms(rng, d.situation().states().size())) : with_belief(d, rng);
    auto table = random_uniform_table(rng, d);
    const auto tag = " seed " + std::to_string(seed);
    c.require(is_uniform(table, d) && respects_utility(table, d), "generated table unusable" + tag);
    auto t = represent_uniform(d, table);
    c.require(congruent(t, d), "congruence" + tag);
    c.require(relation_equal(rule_geu(t), table), "relation" + tag);
    keep(t);
  }
  std::size_t rejected = 0;
  for (std::uint64_t seed = 1001; seed <= 1050; ++seed) {
    Rng rng(seed);
    auto d = with_twin(random_problem(rng, caps), rng);
    if (rng.coin()) d = with_belief(d, rng);
    auto table = break_uniformity(rng, d, random_uniform_table(rng, d));
    const auto tag = " seed " + std::to_string(seed);
    try {
      represent_uniform(d, table);
      c.require(false, "non-uniform table represented" + tag);
    } catch (const Error& e) {
      c.require(e.code() == Errc::NotUniform, std::string("unexpected ") + e.what() + tag);
      const auto& w = e.witness();
      bool valid = w.size() == 4 && indistinguishable(d, w[0], w[2]) && indistinguishable(d, w[1], w[3]) &&
                   table.holds(w[0], w[1]) != table.holds(w[2], w[3]);
      c.require(valid, "invalid witness" + tag);
      rejected += valid;
    }
  }
  return finish(c, ms_since(t0), 30000.0, "100 represented, " + std::to_string(rejected) + "/50 rejected");
}

Outcome ac5() {
  Checker c;
  auto t0 = Clock::now();
  std::size_t ceu_cases = 0;
  std::size_t shared_cases = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    auto d = random_problem(rng, Caps{5, 6, 5}, true);
    PreferenceRelation table(d.situation().act_names());
    if (seed % 2 == 0) {
      d = with_belief(d, rng);
      table = rule_ceu(d);
      ++ceu_cases;
    } else {
      if (rng.coin()) d = with_probability(d, random_atoms(rng, d.situation().states().size()));
      table = random_weak_table(rng, d);
    }
    const auto tag = " seed " + std::to_string(seed);
    c.require(weakly_respects_utility(table, d), "generated table unusable" + tag);
    auto t = represent_ordinal(d, table);
    c.require(similar(t, d), "similarity" + tag);
    c.require(relation_equal(rule_geu(t), table), "relation" + tag);
    keep(t);
    // P2 values pair Pl1(X) with X; a repeated first component is a shared Pl1 value.
    const auto& pl2 = t.measure();
    bool shared = false;
    for (Subset x = 0; x < pl2.table().size() && !shared; ++x)
      for (Subset y = x + 1; y < pl2.table().size() && !shared; ++y) shared = pl2(x).first() == pl2(y).first();
    const auto& report = t.expectation().p->report();
    c.require(report.has_value(), "no order report on P2" + tag);
    if (shared && report) {
      ++shared_cases;
      c.require(!report->antisymmetric, "P2 antisymmetric despite a shared value" + tag);
    }
  }
  return finish(c, ms_since(t0), 30000.0,
                std::to_string(ceu_cases) + " CEU tables, " + std::to_string(shared_cases) + " with shared Pl1 values");
}

void round_trip(Checker& c, const LotteryDecisionSituation& ls, const PlausibilisticSituation& ps, const std::string& tag) {
  try {
    ps.measure.validate();
  } catch (const Error& e) {
    c.require(false, std::string(e.what()) + tag);
  }
  for (const auto& l : ls.lotteries()) {
    auto induced = induce_lottery(ps, l.name);
    bool equal = induced.support == l.support;
    for (Subset y = 0; equal && y < (Subset{1} << l.support.size()); ++y) equal = induced.measure(y) == l.measure(y);
    c.require(equal, "lottery " + l.name + tag);
  }
}

/// States of the standard construction are "[p,q)" with mass q - p and
/// together partition [0, 1).
void check_intervals(Checker& c, const PlausibilisticSituation& ps, const std::string& tag) {
  std::vector<std::pair<Rational, Rational>> spans;
  const auto& states = ps.situation->states();
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& label = states[s];
    auto comma = label.find(',');
    bool shaped = label.size() > 3 && label.front() == '[' && label.back() == ')' && comma != std::string::npos;
    c.require(shaped, "state label " + label + tag);
    if (!shaped) return;
    Rational lo = parse_rational(label.substr(1, comma - 1));
    Rational hi = parse_rational(label.substr(comma + 1, label.size() - comma - 2));
    c.require(ps.measure(Subset{1} << s) == Value(Rational(hi - lo)), "interval mass " + label + tag);
    spans.emplace_back(lo, hi);
  }
  std::sort(spans.begin(), spans.end());
  Rational at = 0;
  for (const auto& [lo, hi] : spans) {
    c.require(lo == at && lo < hi, "gap or overlap at " + to_string(lo) + tag);
    at = hi;
  }
  c.require(at == 1, "intervals end at " + to_string(at) + tag);
}

Outcome ac6() {
  Checker c;
  auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    const auto tag = " seed " + std::to_string(seed);
    auto ls = random_lottery_situation(rng, false);
    round_trip(c, ls, construct_situation(ls), tag);
    auto std_ls = random_lottery_situation(rng, true);
    round_trip(c, std_ls, construct_situation(std_ls), tag);
    auto ps = construct_situation_standard(std_ls);
    round_trip(c, std_ls, ps, tag);
    check_intervals(c, ps, tag);
  }
  return finish(c, ms_since(t0), 30000.0, "200 situations");
}

Outcome ac7() {
  Checker c;
  auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    const auto n = static_cast<std::size_t>(rng.between(1, 5));
    auto states = numbered("s", n);
    std::vector<std::pair<Subset, Rational>> masses;
    const auto k = rng.between(1, 4);
    std::int64_t total = 0;
    std::vector<std::int64_t> w;
    for (std::int64_t i = 0; i < k; ++i) {
      Subset x = 0;
      while (!x) x = rng.next() & full_set(n);
      w.push_back(rng.between(1, 5));
      total += w.back();
      masses.emplace_back(x, 0);
    }
    for (std::size_t i = 0; i < masses.size(); ++i) masses[i].second = Rational(w[i], total);
    auto bel = belief_from_masses(states, masses);
    auto core = core_extreme_points(bel);
    const auto tag = " seed " + std::to_string(seed);
    for (const auto& p : core)
      for (Subset x = 0; x < (Subset{1} << n); ++x) {
        Rational px = 0;
        for (std::size_t s = 0; s < n; ++s)
          if (x >> s & 1) px += p[s];
        c.require(px >= oracle::belief(masses, x), "core point below Bel" + tag);
      }
    for (int a = 0; a < 5; ++a) {
      oracle::Vec u;
      UtilityRandomVariable rv;
      for (std::size_t s = 0; s < n; ++s) {
        u.push_back(rng.rational(-10, 10, 4));
        rv.emplace_back(u.back());
      }
      auto ce = choquet_expectation(bel, rv).as_rational();
      std::optional<Rational> low;
      for (const auto& p : core) {
        auto eu = oracle::dot(p, u);
        if (!low || eu < *low) low = eu;
      }
      c.require(low && ce == *low, "Choquet != core minimum" + tag);
      c.require(ce == oracle::belief_lower(masses, u), "Choquet != Moebius" + tag);
    }
  }
  return finish(c, ms_since(t0), 30000.0, "500 integrals");
}

Outcome ac8() {
  Checker c;
  auto check = [&](const ExpectationDomain& e, const AxiomProbe& probe, const std::string& label) {
    try {
      verify_expectation_axioms(e, probe);
      c.require(true, label);
    } catch (const Error& err) {
      c.require(false, label + ": " + err.what());
    }
  };
  check(*standard_expectation(), {}, "standard");
  check(*max_expectation(), {}, "max");
  check(*regret_expectation(), {}, "regret");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    auto d = with_credal_set(random_problem(rng, Caps{4, 3, 3}), rng, 4);
    AxiomProbe probe;
    probe.p = d.measure().table();
    check(d.expectation(), probe, "credal seed " + std::to_string(seed));
    check(*credal_expectation(d.measure().domain()), probe, "credal (finite) seed " + std::to_string(seed));
  }
  for (std::size_t i = 0; i < constructed.size(); ++i) {
    check(*constructed[i], constructed_probes[i], constructed[i]->name + " #" + std::to_string(i));
    try {
      constructed_measures[i].validate();
      c.require(true, "measure");
    } catch (const Error& err) {
      c.require(false, "constructed measure #" + std::to_string(i) + ": " + err.what());
    }
  }
  return finish(c, 0, 1e9, std::to_string(constructed.size()) + " constructed domains");
}

Outcome ac9() {
  Checker c;
  std::size_t problems = 0;
  std::size_t regret_strong = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    auto d = random_problem(rng, Caps{6, 6, 5}, true);
    std::size_t constant_acts = 0;
    for (const auto& a : d.situation().acts()) constant_acts += a.constant();
    if (constant_acts < 2) continue;
    ++problems;
    const auto n = d.situation().states().size();
    const auto tag = " seed " + std::to_string(seed);
    auto prob = with_probability(d, random_atoms(rng, n));
    c.require(respects_utility(rule_eu(prob), prob), "eu" + tag);
    c.require(respects_utility(rule_geu(prob), prob), "geu" + tag);
    c.require(respects_utility(rule_maximin(d), d), "maximin" + tag);
    auto credal = with_credal_set(d, rng, 4);
    c.require(respects_utility(rule_mmeu(credal), credal), "mmeu" + tag);
    auto bel = with_belief(d, rng);
    c.require(respects_utility(rule_ceu(bel), bel), "ceu" + tag);
    auto regret = rule_regret(d);
    c.require(weakly_respects_utility(regret, d), "regret (weak)" + tag);
    regret_strong += respects_utility(regret, d);
  }
  c.require(problems > 0, "no problems with two constant acts");
  return finish(c, 0, 1e9,
                std::to_string(problems) + " problems; regret respects utility (strong) on " +
                    std::to_string(regret_strong) + "/" + std::to_string(problems));
}

}  // namespace

int main() {
  report("AC1", "running example: CEU values, strict order, indistinguishable acts", ac1);
  report("AC2", "CEU non-uniformity witness", ac2);
  report("AC3", "maximin, regret and MMEU representations", ac3);
  report("AC4", "representation of uniform rules", ac4);
  report("AC5", "ordinal representation", ac5);
  report("AC6", "lottery construction round trip", ac6);
  report("AC7", "Choquet integral equals the core minimum", ac7);
  report("AC8", "expectation and plausibility axioms", ac8);
  report("AC9", "respect for utility", ac9);
  return failures;
}
