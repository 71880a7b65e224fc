#pragma once

#include "geu/horse.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace geu {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kMaxActs = 12;

using Document = std::variant<DecisionProblem, LotteryDecisionProblem, AADecisionProblem>;

namespace io_detail {

/// 1-based line of the first occurrence of `needle`, or 0.
inline std::size_t line_of(const std::string& text, const std::string& needle) {
  auto pos = text.find(needle);
  if (pos == std::string::npos) return 0;
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    auto line = line_of(text_, "\"" + key + "\"");
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + message);
  }

  void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) const {
    if (!obj.is_object()) fail(where, "'" + where + "' must be an object");
    for (const auto& [k, _] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) fail(k, "unknown field '" + k + "' in " + where);
    }
  }

  const Json& need(const Json& obj, const char* key, const std::string& where) const {
    if (!obj.contains(key)) fail(where, "missing field '" + std::string(key) + "' in " + where);
    return obj.at(key);
  }

  std::vector<std::string> labels(const Json& j, const std::string& key) const {
    if (!j.is_array()) fail(key, "'" + key + "' must be a list of labels");
    std::vector<std::string> out;
    for (const auto& x : j) {
      if (!x.is_string()) fail(key, "labels in '" + key + "' must be strings");
      out.push_back(x.get<std::string>());
    }
    return out;
  }

  Value value(const Json& j, const std::string& key, bool allow_real = false) const {
    if (j.is_number_integer()) return Value(Rational(j.get<long long>()));
    if (j.is_number_float()) {
      if (!allow_real) fail(key, "floats are only accepted in real-valued domains; write rationals as \"p/q\"");
      return Value::real(j.get<double>());
    }
    if (j.is_string()) {
      auto s = j.get<std::string>();
      if (s == "inf") return Value::infinity();
      try {
        return Value(parse_rational(s));
      } catch (const std::invalid_argument&) {
        return Value::symbol(s);
      }
    }
    if (j.is_array()) {
      if (j.size() != 2) fail(key, "pairs are written as 2-element lists");
      return Value::pair(value(j[0], key, allow_real), value(j[1], key, allow_real));
    }
    if (j.is_object() && j.contains("set")) {
      check_keys(j, {"set"}, key);
      std::vector<Value> xs;
      for (const auto& x : j.at("set")) xs.push_back(value(x, key, allow_real));
      return Value::set(std::move(xs));
    }
    if (j.is_object() && j.contains("vec")) {
      check_keys(j, {"vec"}, key);
      std::vector<std::pair<std::string, Value>> es;
      for (const auto& [k, x] : j.at("vec").items()) es.emplace_back(k, value(x, key, allow_real));
      return Value::indexed(std::move(es));
    }
    fail(key, "unrecognized value literal");
  }

  Rational rational(const Json& j, const std::string& key) const {
    auto v = value(j, key);
    if (!v.is_rational()) fail(key, "expected a rational in '" + key + "'");
    return v.as_rational();
  }

  DomainPtr domain(const Json& j, const std::string& key) const {
    if (j.is_string()) {
      auto name = j.get<std::string>();
      if (name == "Rationals") return rationals_domain();
      if (name == "Reals") return reals_domain();
      if (name == "RealsWithPosInf") return reals_with_inf_domain();
      if (name == "UnitInterval") return unit_interval_domain();
      fail(key, "unknown builtin domain '" + name + "'");
    }
    check_keys(j, {"name", "carrier", "order", "bottom", "top"}, key);
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : key;
    std::vector<Value> carrier;
    for (const auto& x : need(j, "carrier", key)) carrier.push_back(value(x, key));
    std::vector<std::pair<Value, Value>> order;
    if (j.contains("order"))
      for (const auto& p : j.at("order")) {
        if (!p.is_array() || p.size() != 2) fail("order", "order pairs are 2-element lists");
        order.emplace_back(value(p[0], key), value(p[1], key));
      }
    std::optional<Value> bottom, top;
    if (j.contains("bottom")) bottom = value(j.at("bottom"), key);
    if (j.contains("top")) top = value(j.at("top"), key);
    return finite_domain(name, std::move(carrier), std::move(order), bottom, top);
  }

  Subset subset(const Json& j, const std::vector<std::string>& states, const std::string& key) const {
    Subset x = 0;
    for (const auto& s : labels(j, key)) {
      auto it = std::find(states.begin(), states.end(), s);
      if (it == states.end()) fail(key, "unknown state '" + s + "'");
      x |= Subset{1} << (it - states.begin());
    }
    return x;
  }

  std::vector<Value> powerset_table(const Json& j, const std::vector<std::string>& states, const std::string& key,
                                    bool allow_real) const {
    const std::size_t n = std::size_t{1} << states.size();
    if (!j.is_array() || j.size() != n)
      fail(key, "'" + key + "' must list all " + std::to_string(n) + " subsets");
    std::vector<std::optional<Value>> table(n);
    for (const auto& row : j) {
      check_keys(row, {"set", "value"}, key);
      auto x = subset(need(row, "set", key), states, key);
      if (table[x]) fail(key, "subset listed twice in '" + key + "'");
      table[x] = value(need(row, "value", key), key, allow_real);
    }
    std::vector<Value> out;
    for (auto& v : table) out.push_back(std::move(*v));
    return out;
  }

  std::vector<Rational> atoms(const Json& j, const std::vector<std::string>& states, const std::string& key) const {
    if (!j.is_object()) fail(key, "'" + key + "' maps states to probabilities");
    std::vector<Rational> out(states.size());
    std::vector<bool> seen(states.size());
    for (const auto& [s, p] : j.items()) {
      auto it = std::find(states.begin(), states.end(), s);
      if (it == states.end()) fail(s, "unknown state '" + s + "'");
      auto i = static_cast<std::size_t>(it - states.begin());
      out[i] = rational(p, key);
      seen[i] = true;
    }
    for (std::size_t i = 0; i < states.size(); ++i)
      if (!seen[i]) fail(key, "no probability for state '" + states[i] + "'");
    return out;
  }

  /// Measure section plus the expectation domain it pairs with.
  PlausibilisticPart measure(const Json& j, const std::vector<std::string>& states,
                             const std::optional<std::string>& expectation) const {
    check_keys(j, {"probability", "belief", "credal", "table", "domain"}, "measure");
    std::optional<PlausibilityMeasure> pl;
    std::string default_e = "standard";
    if (j.contains("probability")) {
      pl = make_probability_measure(states, atoms(j.at("probability"), states, "probability"));
    } else if (j.contains("belief")) {
      std::vector<std::pair<Subset, Rational>> masses;
      for (const auto& row : j.at("belief")) {
        check_keys(row, {"focal", "mass"}, "belief");
        masses.emplace_back(subset(need(row, "focal", "belief"), states, "focal"), rational(need(row, "mass", "belief"), "mass"));
      }
      pl = belief_from_masses(states, masses);
    } else if (j.contains("credal")) {
      std::vector<NamedMeasure> ms;
      for (const auto& row : j.at("credal")) {
        check_keys(row, {"name", "atoms"}, "credal");
        ms.push_back({need(row, "name", "credal").get<std::string>(), atoms(need(row, "atoms", "credal"), states, "atoms")});
      }
      auto cp = make_pl_from_probability_set(states, ms);
      pl = cp.measure;
      default_e = "credal";
    } else if (j.contains("table")) {
      std::string dom = j.contains("domain") ? j.at("domain").get<std::string>() : "UnitInterval";
      DomainPtr p;
      if (dom == "UnitInterval") p = unit_interval_domain();
      else if (dom == "Boolean") {
        p = max_expectation()->p;
        default_e = "max";
      } else fail("domain", "measure tables take values in UnitInterval or Boolean");
      pl = PlausibilityMeasure(states, p, powerset_table(j.at("table"), states, "table", false));
    } else {
      fail("measure", "measure needs one of probability, belief, credal, table");
    }
    auto name = expectation.value_or(default_e);
    ExpectationPtr e;
    if (name == "standard") e = standard_expectation();
    else if (name == "max") e = max_expectation();
    else if (name == "regret") e = regret_expectation();
    else if (name == "credal") e = credal_expectation(pl->domain());
    else fail("expectation", "unknown expectation domain '" + name + "'");
    return PlausibilisticPart{e, *pl};
  }

  std::vector<Value> utility(const Json& j, const std::vector<std::string>& consequences, bool allow_real) const {
    if (!j.is_object()) fail("utility", "'utility' maps consequences to values");
    std::vector<std::optional<Value>> out(consequences.size());
    for (const auto& [c, v] : j.items()) {
      auto it = std::find(consequences.begin(), consequences.end(), c);
      if (it == consequences.end()) fail("utility", "unknown consequence '" + c + "'");
      out[static_cast<std::size_t>(it - consequences.begin())] = value(v, "utility", allow_real);
    }
    std::vector<Value> vs;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!out[i]) fail("utility", "no utility for consequence '" + consequences[i] + "'");
      vs.push_back(*out[i]);
    }
    return vs;
  }

  std::size_t index_of(const std::vector<std::string>& xs, const std::string& x, const std::string& key) const {
    auto it = std::find(xs.begin(), xs.end(), x);
    if (it == xs.end()) fail(key, "unknown label '" + x + "' in '" + key + "'");
    return static_cast<std::size_t>(it - xs.begin());
  }

  std::optional<std::string> expectation_name(const Json& doc) const {
    if (!doc.contains("expectation")) return std::nullopt;
    return doc.at("expectation").get<std::string>();
  }

  void caps(const std::vector<std::string>& states, std::size_t acts) const {
    if (states.size() > kMaxStates)
      throw Error(Errc::TooLarge, "more than " + std::to_string(kMaxStates) + " states");
    if (acts > kMaxActs) throw Error(Errc::TooLarge, "more than " + std::to_string(kMaxActs) + " acts");
  }

  DecisionProblem act_problem(const Json& doc) const {
    check_keys(doc, {"version", "kind", "utility_domain", "expectation", "states", "consequences", "acts", "utility",
                     "measure"},
               "document");
    auto states = labels(need(doc, "states", "document"), "states");
    auto consequences = labels(need(doc, "consequences", "document"), "consequences");
    const auto& acts_json = need(doc, "acts", "document");
    if (!acts_json.is_array() || acts_json.empty()) fail("acts", "'acts' must be a nonempty list");
    caps(states, acts_json.size());
    std::vector<Act> acts;
    for (const auto& row : acts_json) {
      check_keys(row, {"name", "outcome"}, "acts");
      Act a{need(row, "name", "acts").get<std::string>(), {}};
      auto outcome = labels(need(row, "outcome", "acts"), "outcome");
      if (outcome.size() != states.size()) fail("outcome", "act '" + a.name + "' must give one consequence per state");
      for (const auto& c : outcome) a.outcome.push_back(index_of(consequences, c, "outcome"));
      acts.push_back(std::move(a));
    }
    auto sit = std::make_shared<DecisionSituation>(states, consequences, std::move(acts));
    if (doc.contains("measure")) {
      auto part = measure(doc.at("measure"), states, expectation_name(doc));
      if (doc.contains("utility_domain")) {
        auto u = domain(doc.at("utility_domain"), "utility_domain");
        if (!same_domain(u, part.expectation->u))
          fail("utility_domain", "utility domain differs from the expectation domain's");
      }
      auto u = part.expectation->u;
      return DecisionProblem(sit, u, utility(need(doc, "utility", "document"), consequences, false), std::move(part));
    }
    if (doc.contains("expectation")) fail("expectation", "an expectation domain needs a measure");
    auto u = doc.contains("utility_domain") ? domain(doc.at("utility_domain"), "utility_domain") : rationals_domain();
    bool real = u->kind() == DomainKind::Reals || u->kind() == DomainKind::RealsWithPosInf;
    return DecisionProblem(sit, u, utility(need(doc, "utility", "document"), consequences, real));
  }

  Lottery lottery(const Json& row, const DomainPtr& p) const {
    check_keys(row, {"name", "atoms", "support", "table", "degenerate"}, "lotteries");
    auto name = need(row, "name", "lotteries").get<std::string>();
    if (row.contains("degenerate")) {
      auto l = degenerate_lottery(row.at("degenerate").get<std::string>(), p);
      l.name = name;
      return l;
    }
    if (row.contains("atoms")) {
      if (p->kind() != DomainKind::UnitInterval) fail("atoms", "atoms describe [0,1]-valued lotteries");
      std::vector<std::pair<std::string, Rational>> atoms;
      for (const auto& [c, v] : row.at("atoms").items()) atoms.emplace_back(c, rational(v, "atoms"));
      return make_standard_lottery(name, atoms);
    }
    auto support = labels(need(row, "support", "lotteries"), "support");
    if (support.size() > kMaxStates) throw Error(Errc::TooLarge, "lottery support too large");
    return make_lottery(name, support, p, powerset_table(need(row, "table", "lotteries"), support, "table", false));
  }

  ExpectationPtr named_expectation(const std::string& name) const {
    if (name == "standard") return standard_expectation();
    if (name == "max") return max_expectation();
    if (name == "regret") return regret_expectation();
    fail("expectation", "unknown expectation domain '" + name + "'");
  }

  LotteryDecisionProblem lottery_problem(const Json& doc, const Json& section) const {
    auto consequences = labels(need(doc, "consequences", "document"), "consequences");
    auto e = named_expectation(section.contains("expectation") ? section.at("expectation").get<std::string>()
                                                               : "standard");
    const auto& ls = need(doc, "lotteries", "document");
    if (!ls.is_array() || ls.empty()) fail("lotteries", "'lotteries' must be a nonempty list");
    std::vector<Lottery> lotteries;
    for (const auto& row : ls) lotteries.push_back(lottery(row, e->p));
    LotteryDecisionSituation sit(std::move(lotteries), consequences, e->p);
    return LotteryDecisionProblem(std::move(sit), e, utility(need(doc, "utility", "document"), consequences, false));
  }

  Document parse(const Json& doc) const {
    if (!doc.is_object()) throw Error(Errc::ParseError, "line 1: document must be a JSON object");
    auto kind = doc.contains("kind") ? doc.at("kind").get<std::string>() : "act";
    if (doc.contains("version") && doc.at("version") != 1) fail("version", "unsupported version");
    if (kind == "act") return act_problem(doc);
    if (kind == "lottery") {
      check_keys(doc, {"version", "kind", "expectation", "consequences", "utility", "lotteries"}, "document");
      return lottery_problem(doc, doc);
    }
    if (kind == "aa") {
      check_keys(doc, {"version", "kind", "states", "consequences", "utility", "inner", "lotteries", "horses", "outer"},
                 "document");
      Json inner = doc.contains("inner") ? doc.at("inner") : Json::object();
      check_keys(inner, {"expectation"}, "inner");
      auto lp = lottery_problem(doc, inner);
      auto states = labels(need(doc, "states", "document"), "states");
      const auto& hs = need(doc, "horses", "document");
      if (!hs.is_array() || hs.empty()) fail("horses", "'horses' must be a nonempty list");
      caps(states, hs.size());
      auto names = lp.situation().names();
      std::vector<HorseLottery> horses;
      for (const auto& row : hs) {
        check_keys(row, {"name", "outcome"}, "horses");
        HorseLottery h{need(row, "name", "horses").get<std::string>(), {}};
        auto outcome = labels(need(row, "outcome", "horses"), "outcome");
        if (outcome.size() != states.size()) fail("outcome", "horse '" + h.name + "' must give one lottery per state");
        for (const auto& l : outcome) h.outcome.push_back(index_of(names, l, "outcome"));
        horses.push_back(std::move(h));
      }
      std::optional<OuterPart> outer;
      if (doc.contains("outer")) {
        const auto& o = doc.at("outer");
        check_keys(o, {"expectation", "measure"}, "outer");
        std::optional<std::string> en;
        if (o.contains("expectation")) en = o.at("expectation").get<std::string>();
        auto part = measure(need(o, "measure", "outer"), states, en);
        outer = OuterPart{part.expectation, part.measure};
      }
      return AADecisionProblem(states, std::move(lp), std::move(horses), std::move(outer));
    }
    fail("kind", "unknown document kind '" + kind + "'");
  }

 private:
  const std::string& text_;
};

}  // namespace io_detail

/// Parses a problem document; every domain and measure is validated.
inline Document parse_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto byte = std::min<std::size_t>(e.byte, text.size());
    auto line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n')) + 1;
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": malformed JSON");
  }
  try {
    return io_detail::Parser(text).parse(doc);
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, std::string("line 0: ") + e.what());
  }
}

inline Document load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

inline DecisionProblem load_act_problem(const std::string& path) {
  auto doc = load_problem(path);
  if (auto* d = std::get_if<DecisionProblem>(&doc)) return *d;
  throw Error(Errc::InvalidInput, "'" + path + "' is not an act problem");
}

// ---------------------------------------------------------------- Rendering

/// Relation classification of each unordered pair, in act order.
inline std::vector<std::string> relation_lines(const PreferenceRelation& r) {
  std::vector<std::string> out;
  const auto& u = r.universe();
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      if (r.tied(i, j)) out.push_back(u[i] + " ~ " + u[j]);
      else if (r.holds(i, j)) out.push_back(u[i] + " < " + u[j]);
      else if (r.holds(j, i)) out.push_back(u[j] + " < " + u[i]);
      else out.push_back(u[i] + " ? " + u[j]);
    }
  return out;
}

inline std::string render_matrix(const PreferenceRelation& r) {
  std::ostringstream os;
  std::size_t w = 0;
  for (const auto& a : r.universe()) w = std::max(w, a.size());
  os << std::string(w, ' ');
  for (const auto& a : r.universe()) os << ' ' << a;
  os << '\n';
  for (std::size_t i = 0; i < r.size(); ++i) {
    os << r.universe()[i] << std::string(w - r.universe()[i].size(), ' ');
    for (std::size_t j = 0; j < r.size(); ++j)
      os << ' ' << std::string(r.universe()[j].size() - 1, ' ') << (r.holds(i, j) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

inline Json relation_json(const PreferenceRelation& r) {
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairs()) pairs.push_back({a, b});
  Json j;
  j["acts"] = r.universe();
  j["pairs"] = pairs;
  j["classification"] = relation_lines(r);
  return j;
}

}  // namespace geu
