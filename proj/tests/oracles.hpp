#pragma once

// Reference computations written directly from the definitions, over plain
// rational vectors. None of these call into the library's evaluators.

#include "geu/geu.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

using geu::Rational;
using Vec = std::vector<Rational>;

inline Rational dot(const Vec& p, const Vec& u) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * u[i];
  return s;
}

inline Rational min_of(const Vec& u) { return *std::min_element(u.begin(), u.end()); }

/// Maximal regret of each act; acts[i][s] is a utility.
inline Vec max_regret(const std::vector<Vec>& acts) {
  const std::size_t n = acts.front().size();
  Vec best(n);
  for (std::size_t s = 0; s < n; ++s) {
    best[s] = acts[0][s];
    for (const auto& a : acts) best[s] = std::max(best[s], a[s]);
  }
  Vec out;
  for (const auto& a : acts) {
    Rational r = 0;
    for (std::size_t s = 0; s < n; ++s) r = std::max(r, Rational(best[s] - a[s]));
    out.push_back(r);
  }
  return out;
}

inline Vec lower_expectations(const std::vector<Vec>& measures, const std::vector<Vec>& acts) {
  Vec out;
  for (const auto& a : acts) {
    Rational m = dot(measures.front(), a);
    for (const auto& p : measures) m = std::min(m, dot(p, a));
    out.push_back(m);
  }
  return out;
}

/// Bel(X) = sum of m(F) over focal F inside X.
inline Rational belief(const std::vector<std::pair<geu::Subset, Rational>>& masses, geu::Subset x) {
  Rational s = 0;
  for (const auto& [f, m] : masses)
    if ((f & x) == f) s += m;
  return s;
}

/// Choquet integral against nu: state by state in descending utility
/// order, each state weighted by the increment of nu on the upper set.
template <typename Nu>
Rational choquet(Nu nu, const Vec& u) {
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  Rational total = 0;
  geu::Subset upper = 0;
  Rational prev = 0;
  for (auto s : order) {
    upper |= geu::Subset{1} << s;
    Rational now = nu(upper);
    total += u[s] * (now - prev);
    prev = now;
  }
  return total;
}

/// Lower expectation of a belief function by the Moebius form:
/// sum over focal sets of mass times the worst utility in the set.
inline Rational belief_lower(const std::vector<std::pair<geu::Subset, Rational>>& masses, const Vec& u) {
  Rational s = 0;
  for (const auto& [f, m] : masses) {
    std::optional<Rational> worst;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (f >> i & 1) worst = worst ? std::min(*worst, u[i]) : u[i];
    s += m * *worst;
  }
  return s;
}

inline Vec rationals(std::initializer_list<long long> xs) {
  Vec out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

}  // namespace oracle

namespace fixture {

using geu::Act;
using geu::DecisionProblem;
using geu::DecisionSituation;
using geu::Rational;
using geu::Value;

inline std::vector<std::string> s3() { return {"s1", "s2", "s3"}; }

/// Acts a1(s_j) = j and a2(s_j) = 4 - j over consequences 1, 2, 3.
inline std::shared_ptr<const DecisionSituation> beldr_situation() {
  return std::make_shared<DecisionSituation>(s3(), std::vector<std::string>{"1", "2", "3"},
                                             std::vector<Act>{{"a1", {0, 1, 2}}, {"a2", {2, 1, 0}}});
}

inline std::vector<Value> identity_utility() { return {Value(1), Value(2), Value(3)}; }

/// Bel(X) = 1 iff {s1, s2} is inside X.
inline geu::PlausibilityMeasure beldr_belief() {
  return geu::belief_from_masses(s3(), {{0b011, Rational(1)}});
}

inline DecisionProblem beldr() {
  return DecisionProblem(beldr_situation(), geu::rationals_domain(), identity_utility(),
                         geu::PlausibilisticPart{geu::standard_expectation(), beldr_belief()});
}

inline DecisionProblem beldr_plain() {
  return DecisionProblem(beldr_situation(), geu::rationals_domain(), identity_utility());
}

inline DecisionProblem beldr_with(const std::vector<Rational>& atoms) {
  return DecisionProblem(beldr_situation(), geu::rationals_domain(), identity_utility(),
                         geu::PlausibilisticPart{geu::standard_expectation(),
                                                 geu::make_probability_measure(s3(), atoms)});
}

inline std::vector<Rational> uniform3() { return {Rational(1, 3), Rational(1, 3), Rational(1, 3)}; }

inline DecisionProblem beldr_credal(const std::vector<geu::NamedMeasure>& ms) {
  auto cp = geu::make_pl_from_probability_set(s3(), ms);
  return DecisionProblem(beldr_situation(), geu::rationals_domain(), identity_utility(),
                         geu::PlausibilisticPart{geu::credal_expectation(cp.domain), cp.measure});
}

inline geu::NamedMeasure point(const std::string& name, std::size_t s, std::size_t n = 3) {
  std::vector<Rational> atoms(n, Rational(0));
  atoms[s] = 1;
  return {name, atoms};
}

/// Acts given directly by utility vectors; consequence i has utility values[i].
inline DecisionProblem from_utilities(const std::vector<std::vector<Rational>>& acts,
                                      std::vector<std::string> names = {}) {
  const std::size_t n = acts.front().size();
  std::vector<std::string> states, consequences;
  for (std::size_t s = 0; s < n; ++s) states.push_back("s" + std::to_string(s + 1));
  std::vector<Value> utility;
  std::vector<Act> out;
  for (std::size_t a = 0; a < acts.size(); ++a) {
    Act act{names.empty() ? "a" + std::to_string(a + 1) : names[a], {}};
    for (std::size_t s = 0; s < n; ++s) {
      auto it = std::find(utility.begin(), utility.end(), Value(acts[a][s]));
      if (it == utility.end()) {
        act.outcome.push_back(utility.size());
        consequences.push_back("c" + std::to_string(utility.size()));
        utility.emplace_back(acts[a][s]);
      } else {
        act.outcome.push_back(static_cast<std::size_t>(it - utility.begin()));
      }
    }
    out.push_back(std::move(act));
  }
  auto sit = std::make_shared<DecisionSituation>(states, consequences, std::move(out));
  return DecisionProblem(sit, geu::rationals_domain(), utility);
}

inline std::vector<Rational> rv_rationals(const DecisionProblem& d, const std::string& act) {
  std::vector<Rational> out;
  for (const auto& v : geu::utility_rv(d, act)) out.push_back(v.as_rational());
  return out;
}

inline std::vector<std::vector<Rational>> all_rvs(const DecisionProblem& d) {
  std::vector<std::vector<Rational>> out;
  for (const auto& a : d.situation().acts()) out.push_back(rv_rationals(d, a.name));
  return out;
}

}  // namespace fixture
