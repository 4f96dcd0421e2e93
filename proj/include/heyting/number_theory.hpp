#pragma once

#include <cstdint>
#include <vector>

namespace heyting {

using Prime = std::uint64_t;

struct PrimePower {
  Prime prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization by trial division, primes ascending. factorize(1) is empty.
/// Throws std::invalid_argument for 0.
std::vector<PrimePower> factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// Euler's totient via the multiplicative formula.
std::uint64_t totient(std::uint64_t m);

std::vector<Prime> first_primes(std::size_t count);

/// a * b, or false when the product overflows 64 bits.
bool checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t& out);

}  // namespace heyting
