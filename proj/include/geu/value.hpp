#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace geu {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p", "-p" or "p/q" into a rational in lowest terms.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto digits_ok = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw bad();
  return Rational(n, d);
}

inline std::string to_string(const Rational& q) {
  auto n = boost::multiprecision::numerator(q);
  auto d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Immutable, structurally compared value housing elements of utility,
/// plausibility and valuation domains.
///
/// Composite kinds nest arbitrarily: pairs, finite sets (kept sorted and
/// duplicate free) and vectors indexed by names (kept sorted by name).
class Value {
 public:
  enum class Kind { Rational, Real, Infinity, Symbol, Pair, Set, Indexed };

  struct Infinity {};
  struct Symbol {
    std::string name;
  };
  struct PairRep {
    std::vector<Value> items;  // exactly two
  };
  struct SetRep {
    std::vector<Value> items;  // sorted, unique
  };
  struct IndexedRep {
    std::vector<std::pair<std::string, Value>> entries;  // sorted by key, unique keys
  };

  Value() : rep_(Rational(0)) {}
  Value(Rational q) : rep_(std::move(q)) {}  // NOLINT(google-explicit-constructor)
  Value(int q) : rep_(Rational(q)) {}        // NOLINT(google-explicit-constructor)
  Value(long q) : rep_(Rational(q)) {}       // NOLINT(google-explicit-constructor)
  Value(long long q) : rep_(Rational(q)) {}  // NOLINT(google-explicit-constructor)

  static Value rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Value(Rational(Integer(num), Integer(den)));
  }
  static Value real(double x) {
    if (std::isnan(x)) throw std::invalid_argument("NaN is not a value");
    if (std::isinf(x)) {
      if (x > 0) return infinity();
      throw std::invalid_argument("negative infinity is not a value");
    }
    Value v;
    v.rep_ = x;
    return v;
  }
  static Value infinity() {
    Value v;
    v.rep_ = Infinity{};
    return v;
  }
  static Value symbol(std::string name) {
    Value v;
    v.rep_ = Symbol{std::move(name)};
    return v;
  }
  static Value pair(Value first, Value second) {
    Value v;
    PairRep p;
    p.items.reserve(2);
    p.items.push_back(std::move(first));
    p.items.push_back(std::move(second));
    v.rep_ = std::move(p);
    return v;
  }
  static Value set(std::vector<Value> items);
  static Value set(std::initializer_list<Value> items) { return set(std::vector<Value>(items)); }
  static Value indexed(std::vector<std::pair<std::string, Value>> entries);

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  bool is_rational() const { return kind() == Kind::Rational; }
  bool is_real() const { return kind() == Kind::Real; }
  bool is_infinity() const { return kind() == Kind::Infinity; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_pair() const { return kind() == Kind::Pair; }
  bool is_set() const { return kind() == Kind::Set; }
  bool is_indexed() const { return kind() == Kind::Indexed; }
  bool is_numeric() const { return is_rational() || is_real(); }

  const Rational& as_rational() const { return std::get<Rational>(rep_); }
  double as_real() const { return std::get<double>(rep_); }
  const std::string& as_symbol() const { return std::get<Symbol>(rep_).name; }
  const Value& first() const { return std::get<PairRep>(rep_).items[0]; }
  const Value& second() const { return std::get<PairRep>(rep_).items[1]; }
  const std::vector<Value>& elements() const { return std::get<SetRep>(rep_).items; }
  const std::vector<std::pair<std::string, Value>>& entries() const {
    return std::get<IndexedRep>(rep_).entries;
  }
  /// Entry of an indexed value; throws if the key is absent.
  const Value& at(const std::string& key) const;

  /// Numeric view of Rational and Real values.
  double to_double() const {
    if (is_rational()) return geu::to_double(as_rational());
    if (is_real()) return as_real();
    throw std::logic_error("value is not numeric");
  }

  bool contains(const Value& element) const;

  friend std::strong_ordering compare(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

  /// Canonical literal: sets sorted, indexed entries sorted by key.
  std::string str() const;

 private:
  std::variant<Rational, double, Infinity, Symbol, PairRep, SetRep, IndexedRep> rep_;
};

inline std::strong_ordering compare_doubles(double a, double b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

template <typename Range>
std::strong_ordering compare_lex(const Range& a, const Range& b) {
  auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() <=> b.size();
}

inline std::strong_ordering compare(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return a.rep_.index() <=> b.rep_.index();
  switch (a.kind()) {
    case Value::Kind::Rational: {
      const auto& x = a.as_rational();
      const auto& y = b.as_rational();
      if (x == y) return std::strong_ordering::equal;
      const Integer lhs = numerator(x) * denominator(y);
      const Integer rhs = numerator(y) * denominator(x);
      return lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    case Value::Kind::Real:
      return compare_doubles(a.as_real(), b.as_real());
    case Value::Kind::Infinity:
      return std::strong_ordering::equal;
    case Value::Kind::Symbol:
      return a.as_symbol().compare(b.as_symbol()) <=> 0;
    case Value::Kind::Pair:
      return compare_lex(std::get<Value::PairRep>(a.rep_).items, std::get<Value::PairRep>(b.rep_).items);
    case Value::Kind::Set:
      return compare_lex(a.elements(), b.elements());
    case Value::Kind::Indexed: {
      const auto& x = a.entries();
      const auto& y = b.entries();
      auto n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        auto kc = x[i].first.compare(y[i].first) <=> 0;
        if (kc != 0) return kc;
        auto vc = compare(x[i].second, y[i].second);
        if (vc != 0) return vc;
      }
      return x.size() <=> y.size();
    }
  }
  return std::strong_ordering::equal;
}

inline Value Value::set(std::vector<Value> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Value v;
  v.rep_ = SetRep{std::move(items)};
  return v;
}

inline Value Value::indexed(std::vector<std::pair<std::string, Value>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("duplicate index '" + entries[i].first + "'");
  Value v;
  v.rep_ = IndexedRep{std::move(entries)};
  return v;
}

inline const Value& Value::at(const std::string& key) const {
  const auto& es = entries();
  auto it = std::lower_bound(es.begin(), es.end(), key,
                             [](const auto& e, const std::string& k) { return e.first < k; });
  if (it == es.end() || it->first != key) throw std::out_of_range("no index '" + key + "'");
  return it->second;
}

inline bool Value::contains(const Value& element) const {
  const auto& items = elements();
  return std::binary_search(items.begin(), items.end(), element);
}

inline std::string format_real(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  std::string s = os.str();
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

inline std::string Value::str() const {
  switch (kind()) {
    case Kind::Rational:
      return to_string(as_rational());
    case Kind::Real:
      return format_real(as_real());
    case Kind::Infinity:
      return "inf";
    case Kind::Symbol:
      return as_symbol();
    case Kind::Pair:
      return "(" + first().str() + ", " + second().str() + ")";
    case Kind::Set: {
      std::string out = "{";
      const auto& items = elements();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i].str();
      }
      return out + "}";
    }
    case Kind::Indexed: {
      std::string out = "[";
      const auto& es = entries();
      for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) out += ", ";
        out += es[i].first + ": " + es[i].second.str();
      }
      return out + "]";
    }
  }
  return {};
}

inline std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

inline Value set_union(const Value& x, const Value& y) {
  std::vector<Value> items;
  items.reserve(x.elements().size() + y.elements().size());
  std::set_union(x.elements().begin(), x.elements().end(), y.elements().begin(), y.elements().end(),
                 std::back_inserter(items));
  return Value::set(std::move(items));
}

inline bool is_subset(const Value& x, const Value& y) {
  return std::includes(y.elements().begin(), y.elements().end(), x.elements().begin(),
                       x.elements().end());
}

}  // namespace geu
