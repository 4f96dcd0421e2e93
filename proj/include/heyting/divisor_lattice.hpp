#pragma once

/**
 * @file divisor_lattice.hpp
 * @brief The finite Heyting algebra of divisors of a fixed modulus n.
 *
 * Meet is GCD, join is LCM, the bottom is 1 and the top is n. Negation maps a
 * divisor to the Hall divisor of n on the complementary primes; the Hall
 * divisors form the Boolean subalgebra. The lattice is a Stone lattice, so
 * both de Morgan laws hold while excluded middle fails off the Hall divisors.
 */

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heyting/number_theory.hpp"

namespace heyting {

inline constexpr std::uint64_t kLatticeCap = 1'000'000;

class ModulusMismatch : public std::invalid_argument {
 public:
  ModulusMismatch(std::uint64_t a, std::uint64_t b);
};

class NotADivisor : public std::invalid_argument {
 public:
  NotADivisor(std::uint64_t m, std::uint64_t n);
};

class Modulus {
 public:
  /// Throws for n = 0 and for n above `cap`.
  static std::shared_ptr<const Modulus> make(std::uint64_t n, std::uint64_t cap = kLatticeCap);

  std::uint64_t n() const { return n_; }
  const std::vector<PrimePower>& factorization() const { return factorization_; }
  /// Ascending; front() == 1, back() == n.
  const std::vector<std::uint64_t>& divisors() const { return divisors_; }

  bool has_divisor(std::uint64_t m) const { return m != 0 && n_ % m == 0; }
  /// Position of m in divisors(); m must divide n.
  std::size_t index_of(std::uint64_t m) const;

  /// Exponents of m aligned with factorization(); m must divide n.
  std::vector<unsigned> exponents_of(std::uint64_t m) const;
  std::uint64_t from_exponents(std::span<const unsigned> exponents) const;

  /// Number of prime factors of n counted with multiplicity.
  unsigned big_omega() const;

 private:
  explicit Modulus(std::uint64_t n);

  std::uint64_t n_;
  std::vector<PrimePower> factorization_;
  std::vector<std::uint64_t> divisors_;
};

using ModulusPtr = std::shared_ptr<const Modulus>;

class DivisorElement {
 public:
  /// Throws NotADivisor unless value | modulus->n().
  DivisorElement(ModulusPtr modulus, std::uint64_t value);

  std::uint64_t value() const { return value_; }
  const ModulusPtr& modulus() const { return modulus_; }
  std::uint64_t n() const { return modulus_->n(); }
  const std::vector<unsigned>& exponents() const { return exponents_; }

  friend bool operator==(const DivisorElement& a, const DivisorElement& b) {
    return a.value_ == b.value_ && a.n() == b.n();
  }

 private:
  ModulusPtr modulus_;
  std::uint64_t value_;
  std::vector<unsigned> exponents_;
};

/// Every divisor of the modulus as an element, ascending.
std::vector<DivisorElement> elements(const ModulusPtr& modulus);
DivisorElement bottom(const ModulusPtr& modulus);
DivisorElement top(const ModulusPtr& modulus);

bool divides(const DivisorElement& a, const DivisorElement& b);
DivisorElement meet(const DivisorElement& a, const DivisorElement& b);
DivisorElement join(const DivisorElement& a, const DivisorElement& b);
/// Implication: p^{e_p(n)} where e_p(b) >= e_p(a), else p^{e_p(b)}.
DivisorElement implies(const DivisorElement& a, const DivisorElement& b);
DivisorElement neg(const DivisorElement& a);
/// Meet of the two implications.
DivisorElement equiv(const DivisorElement& a, const DivisorElement& b);

/// Finite-arity forms; the empty meet is n and the empty join is 1.
DivisorElement meet(const ModulusPtr& modulus, std::span<const DivisorElement> xs);
DivisorElement join(const ModulusPtr& modulus, std::span<const DivisorElement> xs);

bool is_hall(const DivisorElement& a);
/// The Boolean subalgebra D^B(n), ascending.
std::vector<DivisorElement> hall_divisors(const ModulusPtr& modulus);

/// Totally ordered by divisibility. Throws ModulusMismatch on mixed moduli.
bool is_chain(std::span<const DivisorElement> members);

/// Every maximal chain 1 = c_0 | c_1 | ... | c_k = n, each of length big_omega()+1,
/// in lexicographic order of their value sequences.
std::vector<std::vector<std::uint64_t>> enumerate_maximal_chains(const Modulus& modulus);

/// Covering pairs (a, a*p) sorted by (a, b).
std::vector<std::pair<std::uint64_t, std::uint64_t>> hasse_edges(const Modulus& modulus);

/// Graphviz digraph of the covering relation; Hall divisors get shape=box.
void write_dot(std::ostream& out, const Modulus& modulus);

enum class Connective { meet, join, implies, equiv, neg };

/// Parses "meet", "join", "implies", "equiv", "neg"; throws std::invalid_argument.
Connective parse_connective(const std::string& name);
const char* to_string(Connective c);

/// CSV truth table over D(n) x D(n) sorted by (a, b), header
/// `a,b,meet,join,implies,equiv`. With a connective only that column is
/// written; `neg` yields `a,neg` over D(n).
void write_truth_table(std::ostream& out, const ModulusPtr& modulus);
void write_truth_table(std::ostream& out, const ModulusPtr& modulus, Connective connective);

}  // namespace heyting
