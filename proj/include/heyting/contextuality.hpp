#pragma once

/**
 * @file contextuality.hpp
 * @brief Chains as contexts and logical Bell inequalities with Heyting factors.
 *
 * For m_1..m_l in D(n) - {1} and a state rho of the system on Z(n), a
 * non-contextual assignment of probabilities would satisfy
 *
 *     sum_i tau~(m_i) <= l - tau(r) - sum_i f_i,
 *     r   = neg(m_1 ^ ... ^ m_l),
 *     f_i = 1 - tau(m_i v neg m_i)            (Heyting factor, 0 on Hall divisors)
 *
 * which reduces to the bound l - 1 - sum f_i when the meet is 1. Quantum
 * probabilities break it off chains; within a chain they stay a valuation.
 */

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heyting/divisor_lattice.hpp"
#include "heyting/quantum.hpp"
#include "json.hpp"

namespace heyting {

/// A report counts as a violation when margin = lhs - bound exceeds this.
inline constexpr double kViolationThreshold = 1e-9;

/// A chain of divisors. Every pair has an empty disjunction space S(m_i, m_j).
class Context {
 public:
  /// Throws std::invalid_argument unless the members form a chain.
  Context(ModulusPtr modulus, std::vector<std::uint64_t> members);

  const ModulusPtr& modulus() const { return modulus_; }
  /// Ascending.
  const std::vector<DivisorElement>& members() const { return members_; }

 private:
  ModulusPtr modulus_;
  std::vector<DivisorElement> members_;
};

/// dim S(m1, m2) = lcm + gcd - m1 - m2.
std::uint64_t disjunction_dimension(std::uint64_t m1, std::uint64_t m2);

/// True iff the members form a chain, i.e. dim S(m_i, m_j) = 0 for every pair.
bool is_context(std::span<const DivisorElement> members);

/// f = 1 - tau(m v neg m | rho). Requires rho.dim() == m.n().
double heyting_factor(const DivisorElement& m, const DensityMatrix& rho);

/// d(m, k | rho) = tau~(m v k) - tau~(m ^ k).
double pseudo_distance(const DivisorElement& m, const DivisorElement& k, const DensityMatrix& rho);

struct MemberReport {
  std::uint64_t m = 0;
  std::uint64_t neg = 0;       ///< neg m in D(n)
  std::uint64_t join_neg = 0;  ///< m v neg m
  double tau_tilde = 0.0;
  double tau_join_neg = 0.0;
  double f = 0.0;
};

struct BellReport {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> tuple;
  std::vector<MemberReport> members;
  std::uint64_t r = 0;  ///< neg(m_1 ^ ... ^ m_l)
  double tau_r = 0.0;
  double lhs = 0.0;
  double bound = 0.0;
  double margin = 0.0;  ///< lhs - bound
  bool violated = false;

  /// Keys in fixed order: n, tuple, members, r, tau_r, lhs, bound, margin, violated.
  nlohmann::ordered_json to_json() const;
};

/// Evaluates both sides of the inequality. Throws std::invalid_argument for an
/// empty tuple, a member equal to 1, or a state of the wrong dimension;
/// NotADivisor / ModulusMismatch as usual.
BellReport bell_check(std::span<const DivisorElement> tuple, const DensityMatrix& rho);
BellReport bell_check(const ModulusPtr& modulus, std::span<const std::uint64_t> tuple,
                      const DensityMatrix& rho);

/// The diagonal state a|X;i> + b|X;j> + (1-a-b)|X;k>.
DensityMatrix three_point_state(std::size_t n, std::size_t i, std::size_t j, std::size_t k,
                                double a, double b);

// ---------------------------------------------------------------------------
// Violation search

struct SearchConfig {
  std::size_t max_tuple = 4;    ///< largest tuple size l
  unsigned grid = 20;           ///< grid weights are multiples of 1/grid
  std::size_t samples = 1000;   ///< Ginibre states
  std::uint64_t seed = 0;
  std::size_t ginibre_rank = 8; ///< columns of G, capped at n
  int threads = 0;              ///< 0: OpenMP default
};

/// Identifies a candidate state of the search.
struct StateDescriptor {
  enum class Kind { grid, ginibre };

  Kind kind = Kind::grid;
  /// Grid states: diagonal weights (index, numerator / grid) on sector
  /// representatives, ascending by index, numerators positive.
  std::vector<std::pair<std::size_t, unsigned>> support;
  unsigned grid = 0;
  std::size_t sample = 0;  ///< Ginibre sample number

  std::string to_string() const;
  nlohmann::ordered_json to_json() const;

  friend bool operator==(const StateDescriptor&, const StateDescriptor&) = default;
};

/// Total order used to pick a unique best state: grid before Ginibre, smaller
/// supports first, then lexicographic.
bool descriptor_less(const StateDescriptor& a, const StateDescriptor& b);

/// Rebuilds the density matrix a descriptor stands for.
DensityMatrix realize(const StateDescriptor& state, std::size_t n, const SearchConfig& config);

struct TupleResult {
  std::vector<std::uint64_t> tuple;
  double margin = 0.0;
  StateDescriptor state;
};

struct SearchResult {
  BellReport best;
  StateDescriptor state;
  std::vector<TupleResult> per_tuple;  ///< in candidate order
  std::size_t states_examined = 0;

  nlohmann::ordered_json to_json(const SearchConfig& config) const;
  /// `tuple,margin,violated,state`, one row per candidate tuple.
  void write_csv(std::ostream& out) const;
};

/// Tuples of size 2..max_tuple from D(n) - {1}, ascending, with an incomparable
/// pair and, unless every divisor is a Hall divisor, a non-Hall member. When
/// nothing qualifies (D(n) a chain) every tuple of size 1..max_tuple is used.
std::vector<std::vector<std::uint64_t>> candidate_tuples(const Modulus& modulus,
                                                         std::size_t max_tuple);

/// Sector representatives (n/m) mod n, one per divisor m, ascending.
std::vector<std::size_t> sector_representatives(const Modulus& modulus);

/// Best report over candidate tuples x (grid states u Ginibre samples).
/// Deterministic for a given (n, config) regardless of thread count.
SearchResult search_violation(std::uint64_t n, const SearchConfig& config);

/// Serial brute force over every grid state and sample through bell_check.
SearchResult search_violation_reference(std::uint64_t n, const SearchConfig& config);

}  // namespace heyting
