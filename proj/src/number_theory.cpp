#include "heyting/number_theory.hpp"

#include <stdexcept>

namespace heyting {

std::vector<PrimePower> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t p = 3; p <= n / p; p += 2) {
    if (n % p == 0) return false;
  }
  return true;
}

std::uint64_t totient(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("totient: m must be positive");
  std::uint64_t phi = m;
  for (const auto& [p, e] : factorize(m)) {
    phi = phi / p * (p - 1);
  }
  return phi;
}

std::vector<Prime> first_primes(std::size_t count) {
  std::vector<Prime> out;
  for (Prime c = 2; out.size() < count; ++c) {
    if (is_prime(c)) out.push_back(c);
  }
  return out;
}

bool checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

}  // namespace heyting
