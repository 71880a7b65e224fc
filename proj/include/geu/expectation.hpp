#pragma once

#include "geu/domain.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace geu {

using Otimes = std::function<Value(const Value& plausibility, const Value& utility)>;
using Oplus = std::function<Value(const Value&, const Value&)>;
using Embed = std::function<Value(const Value&)>;

/// (U, P, V, otimes, oplus) with the injection of U into V.
struct ExpectationDomain {
  std::string name;
  DomainPtr u;
  DomainPtr p;
  DomainPtr v;
  Otimes otimes;
  Oplus oplus;
  Embed embed;
  bool standard = false;
};

using ExpectationPtr = std::shared_ptr<const ExpectationDomain>;

/// Extra probe material for sampled checks on non-finite carriers.
struct AxiomProbe {
  std::vector<Value> u;
  std::vector<Value> p;
  std::uint64_t seed = 0x5eed;
  std::size_t samples = 1000;
  /// Leading utility probe values whose pairs are all checked for E4.
  std::size_t head = 64;
};

namespace detail {

inline std::vector<Value> probe_values(const Domain& d, const std::vector<Value>& extra,
                                       std::uint64_t seed, std::size_t n) {
  std::vector<Value> out = extra;
  if (d.finite()) {
    out.insert(out.end(), d.carrier()->begin(), d.carrier()->end());
  } else {
    auto sampled = d.probe(seed, n);
    out.insert(out.end(), sampled.begin(), sampled.end());
  }
  std::vector<Value> unique;
  std::set<Value> seen;
  for (auto& x : out)
    if (seen.insert(x).second) unique.push_back(std::move(x));
  return unique;
}

[[noreturn]] inline void axiom_fail(const std::string& axiom, std::vector<Value> witness) {
  std::vector<std::string> w;
  for (const auto& x : witness) w.push_back(x.str());
  throw Error(Errc::AxiomViolation, axiom, std::move(w));
}

}  // namespace detail

/// Checks E1-E4 on `e`: exhaustively when every carrier involved is
/// finite, otherwise on the probe (builtin samples plus `probe`) with
/// seeded random pairs and triples. Throws AxiomViolation with a witness.
inline void verify_expectation_axioms(const ExpectationDomain& e, const AxiomProbe& probe = {}) {
  const auto us = detail::probe_values(*e.u, probe.u, probe.seed, probe.samples);
  auto ps = detail::probe_values(*e.p, probe.p, probe.seed + 1, probe.samples);
  if (!e.p->top()) throw Error(Errc::InvalidInput, "plausibility domain of '" + e.name + "' has no top");
  const Value& top = *e.p->top();

  // E3 and E4 on the utility probe.
  for (const auto& u : us) {
    auto lhs = e.otimes(top, u);
    auto rhs = e.embed(u);
    if (lhs != rhs) detail::axiom_fail("E3", {u, lhs, rhs});
    if (!e.v->contains(rhs)) detail::axiom_fail("E4", {u, rhs});
  }
  const bool exhaustive_u = e.u->finite() || us.size() <= probe.head;
  Rng rng(probe.seed + 2);
  std::vector<Value> embedded;
  embedded.reserve(us.size());
  for (const auto& u : us) embedded.push_back(e.embed(u));
  auto check_e4 = [&](std::size_t i, std::size_t j) {
    const Value& a = us[i];
    const Value& b = us[j];
    if (e.u->leq(a, b) != e.v->leq(embedded[i], embedded[j])) detail::axiom_fail("E4", {a, b});
    if (i != j && embedded[i] == embedded[j]) detail::axiom_fail("E4", {a, b});
  };
  const std::size_t head = exhaustive_u ? us.size() : probe.head;
  for (std::size_t i = 0; i < head; ++i)
    for (std::size_t j = 0; j < head; ++j) check_e4(i, j);
  if (!exhaustive_u)
    for (std::size_t k = 0; k < probe.samples; ++k) check_e4(rng.below(us.size()), rng.below(us.size()));

  // Valuation probe: the finite carrier, or otimes-images of the P and U
  // probes closed once under oplus.
  std::vector<Value> vs;
  bool exhaustive_v = e.v->finite();
  if (exhaustive_v) {
    vs = *e.v->carrier();
  } else {
    const std::size_t pn = std::min<std::size_t>(ps.size(), 24);
    const std::size_t un = std::min<std::size_t>(us.size(), 24);
    std::set<Value> seen;
    for (std::size_t j = 0; j < un; ++j)
      for (std::size_t i = 0; i < pn; ++i) {
        auto x = e.otimes(ps[i], us[j]);
        if (seen.insert(x).second) vs.push_back(std::move(x));
      }
    const std::size_t base = vs.size();
    for (std::size_t k = 0; k < std::min<std::size_t>(base, 64); ++k) {
      auto x = e.oplus(vs[rng.below(base)], vs[rng.below(base)]);
      if (seen.insert(x).second) vs.push_back(std::move(x));
    }
  }
  for (const auto& x : vs)
    if (!e.v->contains(x)) detail::axiom_fail("closure", {x});
  if (vs.empty()) return;

  auto check_e2 = [&](const Value& x, const Value& y) {
    if (e.oplus(x, y) != e.oplus(y, x)) detail::axiom_fail("E2", {x, y});
  };
  auto check_e1 = [&](const Value& x, const Value& y, const Value& z) {
    if (e.oplus(e.oplus(x, y), z) != e.oplus(x, e.oplus(y, z))) detail::axiom_fail("E1", {x, y, z});
  };
  const std::size_t n = vs.size();
  if (exhaustive_v && n <= 64) {
    for (const auto& x : vs)
      for (const auto& y : vs) check_e2(x, y);
    for (const auto& x : vs)
      for (const auto& y : vs)
        for (const auto& z : vs) check_e1(x, y, z);
    return;
  }
  const std::size_t h2 = std::min<std::size_t>(n, 24);
  for (std::size_t i = 0; i < h2; ++i)
    for (std::size_t j = 0; j < h2; ++j) check_e2(vs[i], vs[j]);
  for (std::size_t k = 0; k < probe.samples; ++k) check_e2(vs[rng.below(n)], vs[rng.below(n)]);
  const std::size_t h3 = std::min<std::size_t>(n, 8);
  for (std::size_t i = 0; i < h3; ++i)
    for (std::size_t j = 0; j < h3; ++j)
      for (std::size_t k = 0; k < h3; ++k) check_e1(vs[i], vs[j], vs[k]);
  for (std::size_t k = 0; k < probe.samples; ++k)
    check_e1(vs[rng.below(n)], vs[rng.below(n)], vs[rng.below(n)]);
}

inline Value identity_embed(const Value& x) { return x; }

/// Builds and verifies an expectation domain.
inline ExpectationPtr make_expectation_domain(std::string name, DomainPtr u, DomainPtr p, DomainPtr v,
                                              Otimes otimes, Oplus oplus, Embed embed = identity_embed,
                                              const AxiomProbe& probe = {}) {
  auto e = std::make_shared<ExpectationDomain>(ExpectationDomain{
      std::move(name), std::move(u), std::move(p), std::move(v), std::move(otimes), std::move(oplus),
      std::move(embed), false});
  verify_expectation_axioms(*e, probe);
  return e;
}

/// The standard domain (R, [0,1], R, +, x) over exact rationals.
inline ExpectationPtr standard_expectation() {
  static const ExpectationPtr e = [] {
    auto d = std::make_shared<ExpectationDomain>(ExpectationDomain{
        "standard", rationals_domain(), unit_interval_domain(), rationals_domain(),
        [](const Value& p, const Value& u) { return Value(p.as_rational() * u.as_rational()); },
        [](const Value& x, const Value& y) { return Value(x.as_rational() + y.as_rational()); },
        identity_embed, true});
    verify_expectation_axioms(*d);
    return ExpectationPtr(d);
  }();
  return e;
}

inline Value min_with_inf(const Value& x, const Value& y) { return numeric_leq(x, y) ? x : y; }

/// Best-worst-case domain: (R, {0,1}, R with +inf, min, otimes) with
/// 1 (x) u = u and 0 (x) u = inf.
inline ExpectationPtr max_expectation() {
  static const ExpectationPtr e = [] {
    auto p = finite_domain("Boolean", "Boolean{0,1}", {Value(0), Value(1)}, numeric_leq, Value(0), Value(1));
    return make_expectation_domain(
        "max", rationals_domain(), p, reals_with_inf_domain(),
        [](const Value& pl, const Value& u) { return pl == Value(1) ? u : Value::infinity(); },
        min_with_inf);
  }();
  return e;
}

/// Tolerance used when comparing log-domain valuations.
inline constexpr double kRealTolerance = 1e-9;

inline bool tolerant_leq(const Value& x, const Value& y) {
  if (y.is_infinity()) return true;
  if (x.is_infinity()) return false;
  return x.to_double() <= y.to_double() + kRealTolerance;
}

/// Regret domain: (R, [0,1], R with +inf, min, otimes) with
/// p (x) u = u - log p for p > 0 and inf for p = 0. Valuations are
/// binary64 and compared with kRealTolerance.
inline ExpectationPtr regret_expectation() {
  static const ExpectationPtr e = [] {
    auto v = std::make_shared<Domain>(Domain::Spec{
        DomainKind::RealsWithPosInf, "RealsWithPosInf~", "RealsWithPosInf~1e-9",
        [](const Value& x) { return x.is_numeric() || x.is_infinity(); }, tolerant_leq,
        [](std::uint64_t seed, std::size_t n) { return reals_with_inf_domain()->probe(seed, n); },
        std::nullopt, std::nullopt, std::nullopt, false, {}});
    return make_expectation_domain(
        "regret", rationals_domain(), unit_interval_domain(), v,
        [](const Value& p, const Value& u) {
          if (p.to_double() <= 0.0) return Value::infinity();
          return Value::real(u.to_double() - std::log(p.to_double()));
        },
        min_with_inf, [](const Value& u) { return Value::real(u.to_double()); });
  }();
  return e;
}

}  // namespace geu
