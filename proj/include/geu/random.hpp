#pragma once

#include "geu/value.hpp"

#include <cstdint>
#include <random>

namespace geu {

/// Seeded generator with platform-independent draws. The standard
/// distributions are implementation-defined, so bounded draws are derived
/// from the raw mt19937_64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (engine_() >> 17) & 1u; }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Rational p/q with q in [1, max_den] and value in [lo, hi].
  Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
    auto q = between(1, max_den);
    auto p = between(lo * q, hi * q);
    return Rational(Integer(p), Integer(q));
  }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace geu
