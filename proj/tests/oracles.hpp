#pragma once

// Independent reference implementations used by the tests. They work on
// explicit exponent vectors over a small prime universe and brute-force the
// lattice operations from their order-theoretic definitions.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "heyting/supernatural.hpp"

namespace oracle {

using heyting::Exponent;
using heyting::kInfinite;

inline constexpr std::array<std::uint64_t, 6> kPrimes{2, 3, 5, 7, 11, 13};
inline constexpr std::array<Exponent, 5> kLevels{0, 1, 2, 3, kInfinite};
// A prime outside the universe; its exponent is the default.
inline constexpr std::uint64_t kTailPrime = 17;

struct Vec {
  std::array<Exponent, 6> e{};
  Exponent tail = 0;
  friend bool operator==(const Vec&, const Vec&) = default;
};

inline Vec of(const heyting::SupernaturalNumber& x) {
  Vec v;
  for (std::size_t i = 0; i < kPrimes.size(); ++i) v.e[i] = x.exponent(kPrimes[i]);
  v.tail = x.exponent(kTailPrime);
  return v;
}

inline heyting::SupernaturalNumber to_sn(const Vec& v) {
  std::map<std::uint64_t, Exponent> ex;
  for (std::size_t i = 0; i < kPrimes.size(); ++i) {
    if (v.e[i] != v.tail) ex[kPrimes[i]] = v.e[i];
  }
  return heyting::SupernaturalNumber(v.tail, ex);
}

// Greatest x in the level set with min(a, x) <= b, found by search.
inline Exponent implies(Exponent a, Exponent b) {
  Exponent best = 0;
  bool found = false;
  for (Exponent x : kLevels) {
    if (std::min(a, x) <= b && (!found || x > best)) {
      best = x;
      found = true;
    }
  }
  return best;
}

template <typename F>
Vec pointwise(const Vec& a, const Vec& b, F f) {
  Vec out;
  for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = f(a.e[i], b.e[i]);
  out.tail = f(a.tail, b.tail);
  return out;
}

inline Vec implies(const Vec& a, const Vec& b) {
  return pointwise(a, b, [](Exponent x, Exponent y) { return implies(x, y); });
}

inline Vec meet(const Vec& a, const Vec& b) {
  return pointwise(a, b, [](Exponent x, Exponent y) { return std::min(x, y); });
}

inline Vec join(const Vec& a, const Vec& b) {
  return pointwise(a, b, [](Exponent x, Exponent y) { return std::max(x, y); });
}

inline bool leq(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.e.size(); ++i) {
    if (a.e[i] > b.e[i]) return false;
  }
  return a.tail <= b.tail;
}

// Random element with a default of 0 or INF and at most three exceptions.
inline Vec random_vec(std::mt19937_64& rng) {
  Vec v;
  v.tail = (rng() & 1) ? kInfinite : 0;
  v.e.fill(v.tail);
  std::array<std::size_t, 6> idx{0, 1, 2, 3, 4, 5};
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t k = rng() % 4;
  for (std::size_t i = 0; i < k; ++i) {
    Exponent x;
    do {
      x = kLevels[rng() % kLevels.size()];
    } while (x == v.tail);
    v.e[idx[i]] = x;
  }
  return v;
}

// Greatest divisor x of n with gcd(a, x) | b.
inline std::uint64_t divisor_implies(std::uint64_t n, std::uint64_t a, std::uint64_t b) {
  std::uint64_t best = 1;
  for (std::uint64_t x = 1; x <= n; ++x) {
    if (n % x == 0 && b % std::gcd(a, x) == 0 && x % best == 0) best = x;
  }
  return best;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t x = 1; x <= n; ++x) {
    if (n % x == 0) d.push_back(x);
  }
  return d;
}

inline std::uint64_t totient(std::uint64_t m) {
  std::uint64_t c = 0;
  for (std::uint64_t r = 0; r < m; ++r) {
    if (std::gcd(r, m) == 1) ++c;
  }
  return m == 1 ? 1 : c;
}

}  // namespace oracle
