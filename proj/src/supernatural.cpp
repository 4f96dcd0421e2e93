#include "heyting/supernatural.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace heyting {

// Builds values from primes that are already known to be prime.
struct detail::SupernaturalAccess {
  static SupernaturalNumber make(Exponent def, std::map<Prime, Exponent> exceptions) {
    SupernaturalNumber out;
    out.default_exponent_ = def;
    for (auto it = exceptions.begin(); it != exceptions.end();) {
      it = it->second == def ? exceptions.erase(it) : std::next(it);
    }
    out.exceptions_ = std::move(exceptions);
    return out;
  }

  static PrimeSet make_set(bool default_member, std::vector<Prime> exceptions) {
    return PrimeSet(default_member, std::set<Prime>(exceptions.begin(), exceptions.end()));
  }
};

namespace {

using Access = detail::SupernaturalAccess;

void require_prime(Prime p) {
  if (!is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  }
}

// Applies a pointwise exponent operation. Primes outside both exception maps
// take f(default_a, default_b).
template <typename F>
SupernaturalNumber combine(const SupernaturalNumber& a, const SupernaturalNumber& b, F f) {
  const Exponent def = f(a.default_exponent(), b.default_exponent());
  std::map<Prime, Exponent> out;
  auto emit = [&](Prime p) {
    const Exponent e = f(a.exponent(p), b.exponent(p));
    if (e != def) out.emplace(p, e);
  };
  for (const auto& [p, e] : a.exceptions()) emit(p);
  for (const auto& [p, e] : b.exceptions()) {
    if (!a.exceptions().count(p)) emit(p);
  }
  return Access::make(def, std::move(out));
}

// Set of primes where pred(e_p(a), e_p(b)) holds.
template <typename Pred>
PrimeSet select(const SupernaturalNumber& a, const SupernaturalNumber& b, Pred pred) {
  const bool def = pred(a.default_exponent(), b.default_exponent());
  std::vector<Prime> flipped;
  auto visit = [&](Prime p) {
    if (pred(a.exponent(p), b.exponent(p)) != def) flipped.push_back(p);
  };
  for (const auto& [p, e] : a.exceptions()) visit(p);
  for (const auto& [p, e] : b.exceptions()) {
    if (!a.exceptions().count(p)) visit(p);
  }
  return Access::make_set(def, std::move(flipped));
}

Exponent add_exponents(Exponent x, Exponent y) {
  if (x == kInfinite || y == kInfinite) return kInfinite;
  const std::uint64_t s = std::uint64_t{x} + y;
  if (s >= kInfinite) throw std::overflow_error("exponent overflow");
  return static_cast<Exponent>(s);
}

std::string power_string(Prime p, Exponent e) {
  if (e == 1) return std::to_string(p);
  return std::to_string(p) + "^" + std::to_string(e);
}

// Renders the finite part prod p^e, as one integer when it fits 64 bits.
std::string finite_part_string(const std::vector<PrimePower>& parts) {
  std::uint64_t value = 1;
  bool fits = true;
  for (const auto& [p, e] : parts) {
    for (unsigned i = 0; i < e && fits; ++i) fits = checked_mul(value, p, value);
  }
  if (fits) return std::to_string(value);
  std::string out;
  for (const auto& [p, e] : parts) {
    if (!out.empty()) out += '*';
    out += power_string(p, e);
  }
  return out;
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  SupernaturalNumber parse() {
    SupernaturalNumber acc = factor();
    skip_ws();
    while (peek() == '*') {
      ++pos_;
      acc = multiply(acc, factor());
      skip_ws();
    }
    if (pos_ != text_.size()) fail("unexpected character");
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("supernatural literal: " + what + " at position " +
                                std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept_word(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

  std::uint64_t integer() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (kMaxNaturalLiteral - digit) / 10) fail("integer too large");
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  PrimeSet prime_set() {
    expect('(');
    skip_ws();
    bool complement = false;
    if (peek() == '~') {
      complement = true;
      ++pos_;
    }
    expect('{');
    std::vector<Prime> primes;
    skip_ws();
    if (peek() != '}') {
      primes.push_back(integer());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        primes.push_back(integer());
        skip_ws();
      }
    }
    expect('}');
    expect(')');
    for (Prime p : primes) {
      if (!is_prime(p)) fail(std::to_string(p) + " is not prime");
    }
    return complement ? PrimeSet::cofinite(std::move(primes)) : PrimeSet::finite(std::move(primes));
  }

  SupernaturalNumber factor() {
    skip_ws();
    if (accept_word("Omega")) {
      skip_ws();
      if (peek() == '(') return SupernaturalNumber::omega(prime_set());
      return SupernaturalNumber::omega();
    }
    const std::uint64_t base = integer();
    if (base == 0) fail("zero is not a supernatural number");
    skip_ws();
    if (peek() != '^') return SupernaturalNumber::from_natural(base);
    ++pos_;
    if (accept_word("inf")) {
      std::map<Prime, Exponent> ex;
      for (const auto& pp : factorize(base)) ex.emplace(pp.prime, kInfinite);
      return Access::make(0, std::move(ex));
    }
    const std::uint64_t power = integer();
    std::map<Prime, Exponent> ex;
    for (const auto& [p, e] : factorize(base)) {
      const std::uint64_t total = std::uint64_t{e} * power;
      if (total >= kInfinite) fail("exponent too large");
      if (total > 0) ex.emplace(p, static_cast<Exponent>(total));
    }
    return Access::make(0, std::move(ex));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

// PrimeSet

PrimeSet PrimeSet::finite(std::vector<Prime> members) {
  for (Prime p : members) require_prime(p);
  return PrimeSet(false, std::set<Prime>(members.begin(), members.end()));
}

PrimeSet PrimeSet::cofinite(std::vector<Prime> excluded) {
  for (Prime p : excluded) require_prime(p);
  return PrimeSet(true, std::set<Prime>(excluded.begin(), excluded.end()));
}

PrimeSet PrimeSet::operator~() const { return PrimeSet(!default_member_, exceptions_); }

PrimeSet PrimeSet::operator|(const PrimeSet& other) const {
  const bool def = default_member_ || other.default_member_;
  std::set<Prime> ex;
  for (const auto* s : {&exceptions_, &other.exceptions_}) {
    for (Prime p : *s) {
      if ((contains(p) || other.contains(p)) != def) ex.insert(p);
    }
  }
  return PrimeSet(def, std::move(ex));
}

PrimeSet PrimeSet::operator&(const PrimeSet& other) const { return ~(~*this | ~other); }

std::string PrimeSet::to_string() const {
  std::string out = default_member_ ? "~{" : "{";
  bool first = true;
  for (Prime p : exceptions_) {
    if (!first) out += ',';
    out += std::to_string(p);
    first = false;
  }
  return out + "}";
}

// SupernaturalNumber

SupernaturalNumber::SupernaturalNumber(Exponent default_exponent,
                                       std::map<Prime, Exponent> exceptions)
    : default_exponent_(default_exponent) {
  if (default_exponent != 0 && default_exponent != kInfinite) {
    throw std::invalid_argument("default exponent must be 0 or infinite");
  }
  for (const auto& [p, e] : exceptions) {
    require_prime(p);
    if (e != default_exponent) exceptions_.emplace(p, e);
  }
}

SupernaturalNumber SupernaturalNumber::from_natural(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("0 is not a supernatural number");
  if (n > kMaxNaturalLiteral) {
    throw std::invalid_argument("natural " + std::to_string(n) + " exceeds literal cap");
  }
  SupernaturalNumber out;
  for (const auto& [p, e] : factorize(n)) out.exceptions_.emplace(p, e);
  return out;
}

SupernaturalNumber SupernaturalNumber::omega(const PrimeSet& primes) {
  SupernaturalNumber out;
  out.default_exponent_ = primes.default_member() ? kInfinite : 0;
  const Exponent flipped = primes.default_member() ? 0 : kInfinite;
  for (Prime p : primes.exceptions()) out.exceptions_.emplace(p, flipped);
  return out;
}

SupernaturalNumber SupernaturalNumber::parse(std::string_view text) {
  return LiteralParser(text).parse();
}

Exponent SupernaturalNumber::exponent(Prime p) const {
  auto it = exceptions_.find(p);
  return it == exceptions_.end() ? default_exponent_ : it->second;
}

bool SupernaturalNumber::is_natural() const {
  if (default_exponent_ != 0) return false;
  return std::none_of(exceptions_.begin(), exceptions_.end(),
                      [](const auto& kv) { return kv.second == kInfinite; });
}

bool SupernaturalNumber::to_natural(std::uint64_t& out) const {
  if (!is_natural()) return false;
  std::uint64_t v = 1;
  for (const auto& [p, e] : exceptions_) {
    for (Exponent i = 0; i < e; ++i) {
      if (!checked_mul(v, p, v)) return false;
    }
  }
  out = v;
  return true;
}

bool SupernaturalNumber::is_boolean() const {
  return std::all_of(exceptions_.begin(), exceptions_.end(), [](const auto& kv) {
    return kv.second == 0 || kv.second == kInfinite;
  });
}

std::string SupernaturalNumber::to_string() const {
  std::vector<PrimePower> finite;
  std::vector<Prime> flipped;  // infinite primes (default 0) or zero primes (default inf)
  for (const auto& [p, e] : exceptions_) {
    if (e == kInfinite || e == 0) {
      flipped.push_back(p);
    } else {
      finite.push_back({p, e});
    }
  }
  std::string omega_part;
  if (default_exponent_ == kInfinite) {
    // Primes with a finite part are left out of the cofinite set so that the
    // product reparses to the same exponents.
    for (const auto& pp : finite) flipped.push_back(pp.prime);
    std::sort(flipped.begin(), flipped.end());
    omega_part = flipped.empty() ? "Omega"
                                 : "Omega(" + Access::make_set(true, flipped).to_string() + ")";
  } else if (!flipped.empty()) {
    omega_part = "Omega(" + Access::make_set(false, flipped).to_string() + ")";
  }
  if (omega_part.empty()) return finite_part_string(finite);
  if (finite.empty()) return omega_part;
  return finite_part_string(finite) + "*" + omega_part;
}

// Lattice operations

bool divides(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  if (a.default_exponent() > b.default_exponent()) return false;
  for (const auto* m : {&a.exceptions(), &b.exceptions()}) {
    for (const auto& [p, e] : *m) {
      if (a.exponent(p) > b.exponent(p)) return false;
    }
  }
  return true;
}

SupernaturalNumber meet(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  return combine(a, b, [](Exponent x, Exponent y) { return std::min(x, y); });
}

SupernaturalNumber join(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  return combine(a, b, [](Exponent x, Exponent y) { return std::max(x, y); });
}

SupernaturalNumber meet(std::span<const SupernaturalNumber> xs) {
  SupernaturalNumber acc = SupernaturalNumber::omega();
  for (const auto& x : xs) acc = meet(acc, x);
  return acc;
}

SupernaturalNumber join(std::span<const SupernaturalNumber> xs) {
  SupernaturalNumber acc;
  for (const auto& x : xs) acc = join(acc, x);
  return acc;
}

SupernaturalNumber implies(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  return combine(a, b, [](Exponent x, Exponent y) { return y >= x ? kInfinite : y; });
}

SupernaturalNumber neg(const SupernaturalNumber& a) {
  return implies(a, SupernaturalNumber::one());
}

SupernaturalNumber equiv(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  return combine(a, b, [](Exponent x, Exponent y) { return x == y ? kInfinite : std::min(x, y); });
}

SupernaturalNumber multiply(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  return combine(a, b, add_exponents);
}

PrimeSet prime_support(const SupernaturalNumber& a) {
  return select(a, SupernaturalNumber::one(), [](Exponent x, Exponent) { return x >= 1; });
}

SupportPartition varpi_partition(const SupernaturalNumber& a) {
  const auto one = SupernaturalNumber::one();
  return {select(a, one, [](Exponent x, Exponent) { return x >= 1 && x != kInfinite; }),
          select(a, one, [](Exponent x, Exponent) { return x == kInfinite; })};
}

ExponentComparison varpi_compare(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  return {select(a, b, [](Exponent x, Exponent y) { return x > y; }),
          select(a, b, [](Exponent x, Exponent y) { return x == y; }),
          select(a, b, [](Exponent x, Exponent y) { return x < y; })};
}

}  // namespace heyting
