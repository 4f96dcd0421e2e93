#pragma once

/**
 * @file supernatural.hpp
 * @brief Supernatural (Steinitz) numbers and their Heyting algebra.
 *
 * A supernatural number assigns an exponent in N u {inf} to every prime.
 * Elements are stored as a default exponent (0 or inf) plus finitely many
 * exceptions, which is enough to close meet, join, implication, negation and
 * equivalence: e.g. neg 2 = Omega(~{2}) has cofinitely many infinite exponents.
 *
 * Ordering is divisibility; meet is the generalized GCD and join the
 * generalized LCM. The bottom element is 1 and the top is Omega.
 */

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heyting/number_theory.hpp"

namespace heyting {

namespace detail {
struct SupernaturalAccess;
}

using Exponent = std::uint32_t;

/// The infinite exponent. Being the largest value of the type, min/max/<=
/// already follow the conventions min(x,inf)=x, max(x,inf)=inf, x<=inf.
inline constexpr Exponent kInfinite = std::numeric_limits<Exponent>::max();

/// Largest natural accepted as a literal (trial-division factorization bound).
inline constexpr std::uint64_t kMaxNaturalLiteral = 1'000'000'000'000ULL;

/// A finite or cofinite set of primes.
class PrimeSet {
 public:
  PrimeSet() = default;

  static PrimeSet finite(std::vector<Prime> members);
  static PrimeSet cofinite(std::vector<Prime> excluded);
  static PrimeSet all() { return cofinite({}); }

  bool contains(Prime p) const { return default_member_ != (exceptions_.count(p) != 0); }
  bool is_finite() const { return !default_member_; }
  bool empty() const { return !default_member_ && exceptions_.empty(); }
  bool is_all() const { return default_member_ && exceptions_.empty(); }

  bool default_member() const { return default_member_; }
  const std::set<Prime>& exceptions() const { return exceptions_; }

  PrimeSet operator|(const PrimeSet& other) const;
  PrimeSet operator&(const PrimeSet& other) const;
  PrimeSet operator~() const;
  PrimeSet operator-(const PrimeSet& other) const { return *this & ~other; }

  /// "{2,3}" for finite sets, "~{2}" for cofinite ones.
  std::string to_string() const;

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

 private:
  friend struct detail::SupernaturalAccess;

  PrimeSet(bool default_member, std::set<Prime> exceptions)
      : default_member_(default_member), exceptions_(std::move(exceptions)) {}

  bool default_member_ = false;
  std::set<Prime> exceptions_;
};

class SupernaturalNumber {
 public:
  /// The unit 1.
  SupernaturalNumber() = default;

  /// Canonicalizing constructor. `default_exponent` must be 0 or kInfinite and
  /// every key of `exceptions` must be prime.
  SupernaturalNumber(Exponent default_exponent, std::map<Prime, Exponent> exceptions);

  static SupernaturalNumber from_natural(std::uint64_t n);
  static SupernaturalNumber one() { return {}; }
  static SupernaturalNumber omega() { return {kInfinite, {}}; }
  static SupernaturalNumber omega(const PrimeSet& primes);

  /// Parses `900`, `2^inf`, `2^inf*3^2`, `Omega`, `Omega({2,3})`, `Omega(~{2})`.
  /// `*` multiplies (adds exponents).
  static SupernaturalNumber parse(std::string_view text);

  Exponent exponent(Prime p) const;
  Exponent default_exponent() const { return default_exponent_; }
  const std::map<Prime, Exponent>& exceptions() const { return exceptions_; }

  bool is_natural() const;
  /// The value as an integer when it is natural and fits 64 bits.
  bool to_natural(std::uint64_t& out) const;
  /// True for elements of the Boolean subalgebra, the Omega(pi).
  bool is_boolean() const;

  /// Canonical text form; parse(to_string()) round-trips.
  std::string to_string() const;

  friend bool operator==(const SupernaturalNumber&, const SupernaturalNumber&) = default;
  friend auto operator<=>(const SupernaturalNumber&, const SupernaturalNumber&) = default;

 private:
  friend struct detail::SupernaturalAccess;

  Exponent default_exponent_ = 0;
  std::map<Prime, Exponent> exceptions_;
};

bool divides(const SupernaturalNumber& a, const SupernaturalNumber& b);

SupernaturalNumber meet(const SupernaturalNumber& a, const SupernaturalNumber& b);
SupernaturalNumber join(const SupernaturalNumber& a, const SupernaturalNumber& b);
/// Finite-arity meet/join; the empty meet is Omega and the empty join is 1.
SupernaturalNumber meet(std::span<const SupernaturalNumber> xs);
SupernaturalNumber join(std::span<const SupernaturalNumber> xs);

/// Relative pseudocomplement: exponent inf where e_p(b) >= e_p(a), else e_p(b).
SupernaturalNumber implies(const SupernaturalNumber& a, const SupernaturalNumber& b);
SupernaturalNumber neg(const SupernaturalNumber& a);
SupernaturalNumber equiv(const SupernaturalNumber& a, const SupernaturalNumber& b);

/// Ordinary product (exponents add).
SupernaturalNumber multiply(const SupernaturalNumber& a, const SupernaturalNumber& b);

/// Primes with nonzero exponent.
PrimeSet prime_support(const SupernaturalNumber& a);

struct SupportPartition {
  PrimeSet finite;    ///< primes with finite nonzero exponent
  PrimeSet infinite;  ///< primes with infinite exponent
};
SupportPartition varpi_partition(const SupernaturalNumber& a);

struct ExponentComparison {
  PrimeSet greater;  ///< e_p(a) > e_p(b)
  PrimeSet equal;
  PrimeSet less;     ///< e_p(b) > e_p(a)
};
ExponentComparison varpi_compare(const SupernaturalNumber& a, const SupernaturalNumber& b);

}  // namespace heyting
