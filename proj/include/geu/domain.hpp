#pragma once

#include "geu/error.hpp"
#include "geu/random.hpp"
#include "geu/value.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace geu {

enum class DomainKind {
  Rationals,
  Reals,
  RealsWithPosInf,
  UnitInterval,
  VectorsOverIndex,
  FiniteSetsOfValues,
  Finite,
  Custom,
};

struct OrderReport {
  bool reflexive = false;
  bool transitive = false;
  bool antisymmetric = false;
  bool total = false;
};

/// x <= y on numbers, where +inf is the top element.
inline bool numeric_leq(const Value& x, const Value& y) {
  if (y.is_infinity()) return x.is_numeric() || x.is_infinity();
  if (x.is_infinity()) return false;
  if (x.is_rational() && y.is_rational()) return x.as_rational() <= y.as_rational();
  return x.to_double() <= y.to_double();
}

/// A carrier with a reflexive order, optionally bounded.
///
/// The carrier is either a finite list of values or a membership predicate
/// (builtin and constructed domains). Infinite carriers supply a probe list
/// used when axioms are verified by sampling.
class Domain {
 public:
  using Leq = std::function<bool(const Value&, const Value&)>;
  using Member = std::function<bool(const Value&)>;
  using Sampler = std::function<std::vector<Value>(std::uint64_t seed, std::size_t n)>;

  struct Spec {
    DomainKind kind = DomainKind::Custom;
    std::string name;
    std::string signature;
    Member member;
    Leq leq;
    Sampler sampler;
    std::optional<std::vector<Value>> carrier;
    std::optional<Value> bottom;
    std::optional<Value> top;
    bool transitive = true;
    std::vector<std::string> index;  // VectorsOverIndex only
  };

  explicit Domain(Spec spec) : s_(std::move(spec)) {
    if (s_.carrier) {
      auto& c = *s_.carrier;
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      report_ = compute_report();
      if (!report_->reflexive) throw Error(Errc::InvalidInput, "order of '" + s_.name + "' is not reflexive");
      s_.transitive = report_->transitive;
    }
    if (s_.bottom || s_.top) {
      if (!s_.bottom || !s_.top)
        throw Error(Errc::InvalidInput, "domain '" + s_.name + "' needs both bottom and top");
      if (!contains(*s_.bottom) || !contains(*s_.top))
        throw Error(Errc::InvalidInput, "bottom/top of '" + s_.name + "' outside carrier");
      if (s_.carrier) {
        if (!s_.transitive)
          throw Error(Errc::InvalidInput, "plausibility domain '" + s_.name + "' is not transitive");
        for (const auto& x : *s_.carrier)
          if (!leq(*s_.bottom, x) || !leq(x, *s_.top))
            throw Error(Errc::InvalidInput, "'" + s_.name + "' is not bounded by bottom/top",
                        {x.str()});
      }
    }
  }

  DomainKind kind() const { return s_.kind; }
  const std::string& name() const { return s_.name; }
  const std::string& signature() const { return s_.signature; }
  const std::optional<std::vector<Value>>& carrier() const { return s_.carrier; }
  bool finite() const { return s_.carrier.has_value(); }
  const std::optional<Value>& bottom() const { return s_.bottom; }
  const std::optional<Value>& top() const { return s_.top; }
  bool bounded() const { return s_.bottom.has_value(); }
  bool transitive() const { return s_.transitive; }
  const std::vector<std::string>& index() const { return s_.index; }

  bool contains(const Value& x) const {
    if (s_.carrier) return std::binary_search(s_.carrier->begin(), s_.carrier->end(), x);
    return !s_.member || s_.member(x);
  }

  bool leq(const Value& x, const Value& y) const { return s_.leq(x, y); }
  bool equivalent(const Value& x, const Value& y) const { return leq(x, y) && leq(y, x); }

  /// Finite carriers: the carrier itself. Otherwise up to n probe values,
  /// deterministic in the seed.
  std::vector<Value> probe(std::uint64_t seed, std::size_t n) const {
    if (s_.carrier) return *s_.carrier;
    if (!s_.sampler) return {};
    return s_.sampler(seed, n);
  }

  /// Exhaustive order report; only available for finite carriers.
  const std::optional<OrderReport>& report() const { return report_; }

 private:
  OrderReport compute_report() const {
    const auto& c = *s_.carrier;
    const auto n = c.size();
    std::vector<char> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = s_.leq(c[i], c[j]);
    OrderReport r{true, true, true, true};
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i * n + i]) r.reflexive = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && m[i * n + j] && m[j * n + i]) r.antisymmetric = false;
        if (!m[i * n + j] && !m[j * n + i]) r.total = false;
        if (!m[i * n + j]) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (m[j * n + k] && !m[i * n + k]) r.transitive = false;
      }
    }
    return r;
  }

  Spec s_;
  std::optional<OrderReport> report_;
};

using DomainPtr = std::shared_ptr<const Domain>;

inline bool same_domain(const DomainPtr& a, const DomainPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->signature() != b->signature()) return false;
  if (a->finite() != b->finite()) return false;
  if (!a->finite()) return true;
  if (*a->carrier() != *b->carrier()) return false;
  for (const auto& x : *a->carrier())
    for (const auto& y : *a->carrier())
      if (a->leq(x, y) != b->leq(x, y)) return false;
  return a->bottom() == b->bottom() && a->top() == b->top();
}

/// Exhaustive reflexivity/transitivity/antisymmetry/totality flags.
inline OrderReport check_order_properties(const Domain& d) {
  if (!d.report()) throw Error(Errc::InvalidInput, "order report needs a finite carrier: " + d.name());
  return *d.report();
}

namespace detail {

inline std::vector<Value> rational_head() {
  return {Value(1), Value(2), Value(0), Value(-1), Value::rational(1, 2), Value(3),
          Value(-2), Value::rational(1, 3), Value::rational(5, 2), Value::rational(-3, 4)};
}

inline std::vector<Value> sample_rationals(std::uint64_t seed, std::size_t n) {
  auto out = rational_head();
  Rng rng(seed);
  while (out.size() < n) out.emplace_back(rng.rational(-20, 20, 12));
  out.resize(std::min(out.size(), n));
  return out;
}

inline std::vector<Value> sample_unit(std::uint64_t seed, std::size_t n) {
  std::vector<Value> out{Value(1), Value(0), Value::rational(1, 2), Value::rational(1, 3),
                         Value::rational(2, 3), Value::rational(1, 4), Value::rational(3, 4)};
  Rng rng(seed);
  while (out.size() < n) out.emplace_back(rng.rational(0, 1, 12));
  out.resize(std::min(out.size(), n));
  return out;
}

inline bool in_unit(const Value& x) {
  if (!x.is_numeric()) return false;
  if (x.is_rational()) return x.as_rational() >= 0 && x.as_rational() <= 1;
  return x.as_real() >= 0.0 && x.as_real() <= 1.0;
}

}  // namespace detail

inline DomainPtr rationals_domain() {
  static const DomainPtr d = std::make_shared<Domain>(Domain::Spec{
      DomainKind::Rationals, "Rationals", "Rationals",
      [](const Value& x) { return x.is_rational(); }, numeric_leq, detail::sample_rationals,
      std::nullopt, std::nullopt, std::nullopt, true, {}});
  return d;
}

inline DomainPtr reals_domain() {
  static const DomainPtr d = std::make_shared<Domain>(Domain::Spec{
      DomainKind::Reals, "Reals", "Reals", [](const Value& x) { return x.is_numeric(); }, numeric_leq,
      detail::sample_rationals, std::nullopt, std::nullopt, std::nullopt, true, {}});
  return d;
}

inline DomainPtr reals_with_inf_domain() {
  static const DomainPtr d = std::make_shared<Domain>(Domain::Spec{
      DomainKind::RealsWithPosInf, "RealsWithPosInf", "RealsWithPosInf",
      [](const Value& x) { return x.is_numeric() || x.is_infinity(); }, numeric_leq,
      [](std::uint64_t seed, std::size_t n) {
        auto out = detail::sample_rationals(seed, n == 0 ? 0 : n - 1);
        out.insert(out.begin() + std::min<std::size_t>(out.size(), 3), Value::infinity());
        return out;
      },
      std::nullopt, std::nullopt, std::nullopt, true, {}});
  return d;
}

/// [0,1] with bottom 0 and top 1; holds rationals, and reals where
/// logarithms are involved.
inline DomainPtr unit_interval_domain() {
  static const DomainPtr d = std::make_shared<Domain>(Domain::Spec{
      DomainKind::UnitInterval, "UnitInterval", "UnitInterval", detail::in_unit, numeric_leq,
      detail::sample_unit, std::nullopt, Value(0), Value(1), true, {}});
  return d;
}

/// Functions from a named index into [0,1] (unit = true) or the reals,
/// ordered pointwise. The unit version is bounded by the constant 0 and 1
/// vectors.
inline DomainPtr vectors_over_index_domain(std::vector<std::string> index, bool unit) {
  std::sort(index.begin(), index.end());
  if (std::adjacent_find(index.begin(), index.end()) != index.end())
    throw Error(Errc::InvalidInput, "duplicate index name");
  if (index.empty()) throw Error(Errc::InvalidInput, "empty index");
  auto constant = [index](const Value& c) {
    std::vector<std::pair<std::string, Value>> es;
    for (const auto& k : index) es.emplace_back(k, c);
    return Value::indexed(std::move(es));
  };
  std::string sig = std::string(unit ? "UnitVectors" : "RealVectors") + "[";
  for (std::size_t i = 0; i < index.size(); ++i) sig += (i ? "," : "") + index[i];
  sig += "]";
  auto member = [index, unit](const Value& x) {
    if (!x.is_indexed() || x.entries().size() != index.size()) return false;
    for (std::size_t i = 0; i < index.size(); ++i) {
      const auto& [k, v] = x.entries()[i];
      if (k != index[i]) return false;
      if (unit ? !detail::in_unit(v) : !v.is_numeric()) return false;
    }
    return true;
  };
  auto leq = [](const Value& x, const Value& y) {
    if (!x.is_indexed() || !y.is_indexed() || x.entries().size() != y.entries().size()) return false;
    for (std::size_t i = 0; i < x.entries().size(); ++i) {
      if (x.entries()[i].first != y.entries()[i].first) return false;
      if (!numeric_leq(x.entries()[i].second, y.entries()[i].second)) return false;
    }
    return true;
  };
  auto sampler = [index, unit, constant](std::uint64_t seed, std::size_t n) {
    std::vector<Value> out{constant(Value(1)), constant(Value(0))};
    Rng rng(seed);
    while (out.size() < n) {
      std::vector<std::pair<std::string, Value>> es;
      for (const auto& k : index)
        es.emplace_back(k, Value(unit ? rng.rational(0, 1, 12) : rng.rational(-20, 20, 12)));
      out.push_back(Value::indexed(std::move(es)));
    }
    out.resize(std::min(out.size(), n));
    return out;
  };
  Domain::Spec spec{DomainKind::VectorsOverIndex,
                    unit ? "UnitVectors" : "RealVectors",
                    sig,
                    member,
                    leq,
                    sampler,
                    std::nullopt,
                    unit ? std::optional<Value>(constant(Value(0))) : std::nullopt,
                    unit ? std::optional<Value>(constant(Value(1))) : std::nullopt,
                    true,
                    index};
  return std::make_shared<Domain>(std::move(spec));
}

/// Finite sets of values ordered by inclusion. `probe` lists the relevant
/// elements used for sampled axiom checks.
inline DomainPtr finite_sets_domain(std::string signature, std::vector<Value> probe,
                                    std::optional<Value> bottom = std::nullopt,
                                    std::optional<Value> top = std::nullopt) {
  Domain::Spec spec;
  spec.kind = DomainKind::FiniteSetsOfValues;
  spec.name = "FiniteSetsOfValues";
  spec.signature = std::move(signature);
  spec.member = [](const Value& x) { return x.is_set(); };
  spec.leq = [](const Value& x, const Value& y) { return x.is_set() && y.is_set() && is_subset(x, y); };
  spec.sampler = [probe = std::move(probe)](std::uint64_t, std::size_t n) {
    return std::vector<Value>(probe.begin(), probe.begin() + std::min(n, probe.size()));
  };
  spec.bottom = std::move(bottom);
  spec.top = std::move(top);
  return std::make_shared<Domain>(std::move(spec));
}

/// Finite carrier with an explicit order given as pairs; reflexive pairs
/// are implied.
inline DomainPtr finite_domain(std::string name, std::vector<Value> carrier,
                               std::vector<std::pair<Value, Value>> order,
                               std::optional<Value> bottom = std::nullopt,
                               std::optional<Value> top = std::nullopt) {
  std::set<std::pair<Value, Value>> rel(order.begin(), order.end());
  std::sort(carrier.begin(), carrier.end());
  for (const auto& [x, y] : rel)
    if (!std::binary_search(carrier.begin(), carrier.end(), x) ||
        !std::binary_search(carrier.begin(), carrier.end(), y))
      throw Error(Errc::InvalidInput, "order pair outside carrier of '" + name + "'", {x.str(), y.str()});
  std::string sig = "Finite:" + name + "{";
  for (const auto& c : carrier) sig += c.str() + ";";
  sig += "}<";
  for (const auto& [x, y] : rel) sig += x.str() + "<=" + y.str() + ";";
  sig += ">";
  Domain::Spec spec;
  spec.kind = DomainKind::Finite;
  spec.name = std::move(name);
  spec.signature = std::move(sig);
  spec.leq = [rel = std::move(rel)](const Value& x, const Value& y) {
    return x == y || rel.count({x, y}) > 0;
  };
  spec.carrier = std::move(carrier);
  spec.bottom = std::move(bottom);
  spec.top = std::move(top);
  return std::make_shared<Domain>(std::move(spec));
}

/// Finite carrier ordered by a comparator.
inline DomainPtr finite_domain(std::string name, std::string signature, std::vector<Value> carrier,
                               Domain::Leq leq, std::optional<Value> bottom = std::nullopt,
                               std::optional<Value> top = std::nullopt) {
  Domain::Spec spec;
  spec.kind = DomainKind::Finite;
  spec.name = std::move(name);
  spec.signature = std::move(signature);
  spec.leq = std::move(leq);
  spec.carrier = std::move(carrier);
  spec.bottom = std::move(bottom);
  spec.top = std::move(top);
  return std::make_shared<Domain>(std::move(spec));
}

}  // namespace geu
