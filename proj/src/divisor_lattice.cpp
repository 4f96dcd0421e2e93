#include "heyting/divisor_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace heyting {

ModulusMismatch::ModulusMismatch(std::uint64_t a, std::uint64_t b)
    : std::invalid_argument("modulus mismatch: D(" + std::to_string(a) + ") vs D(" +
                            std::to_string(b) + ")") {}

NotADivisor::NotADivisor(std::uint64_t m, std::uint64_t n)
    : std::invalid_argument(std::to_string(m) + " does not divide " + std::to_string(n)) {}

// Modulus

std::shared_ptr<const Modulus> Modulus::make(std::uint64_t n, std::uint64_t cap) {
  if (n == 0) throw std::invalid_argument("modulus must be positive");
  if (n > cap) {
    throw std::invalid_argument("modulus " + std::to_string(n) + " exceeds cap " +
                                std::to_string(cap));
  }
  return std::shared_ptr<const Modulus>(new Modulus(n));
}

Modulus::Modulus(std::uint64_t n) : n_(n), factorization_(factorize(n)) {
  divisors_ = {1};
  for (const auto& [p, e] : factorization_) {
    const std::size_t base = divisors_.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divisors_.push_back(divisors_[i] * pk);
    }
  }
  std::sort(divisors_.begin(), divisors_.end());
}

std::size_t Modulus::index_of(std::uint64_t m) const {
  auto it = std::lower_bound(divisors_.begin(), divisors_.end(), m);
  if (it == divisors_.end() || *it != m) throw NotADivisor(m, n_);
  return static_cast<std::size_t>(it - divisors_.begin());
}

std::vector<unsigned> Modulus::exponents_of(std::uint64_t m) const {
  if (!has_divisor(m)) throw NotADivisor(m, n_);
  std::vector<unsigned> out(factorization_.size(), 0);
  for (std::size_t i = 0; i < factorization_.size(); ++i) {
    while (m % factorization_[i].prime == 0) {
      m /= factorization_[i].prime;
      ++out[i];
    }
  }
  return out;
}

std::uint64_t Modulus::from_exponents(std::span<const unsigned> exponents) const {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < factorization_.size(); ++i) {
    for (unsigned k = 0; k < exponents[i]; ++k) v *= factorization_[i].prime;
  }
  return v;
}

unsigned Modulus::big_omega() const {
  unsigned total = 0;
  for (const auto& pp : factorization_) total += pp.exponent;
  return total;
}

// DivisorElement

DivisorElement::DivisorElement(ModulusPtr modulus, std::uint64_t value)
    : modulus_(std::move(modulus)), value_(value), exponents_(modulus_->exponents_of(value)) {}

namespace {

void require_same(const DivisorElement& a, const DivisorElement& b) {
  if (a.n() != b.n()) throw ModulusMismatch(a.n(), b.n());
}

// Pointwise operation on exponent vectors; f receives (e_a, e_b, e_n).
template <typename F>
DivisorElement pointwise(const DivisorElement& a, const DivisorElement& b, F f) {
  require_same(a, b);
  const auto& fact = a.modulus()->factorization();
  std::vector<unsigned> out(fact.size());
  for (std::size_t i = 0; i < fact.size(); ++i) {
    out[i] = f(a.exponents()[i], b.exponents()[i], fact[i].exponent);
  }
  return DivisorElement(a.modulus(), a.modulus()->from_exponents(out));
}

}  // namespace

std::vector<DivisorElement> elements(const ModulusPtr& modulus) {
  std::vector<DivisorElement> out;
  out.reserve(modulus->divisors().size());
  for (std::uint64_t d : modulus->divisors()) out.emplace_back(modulus, d);
  return out;
}

DivisorElement bottom(const ModulusPtr& modulus) { return DivisorElement(modulus, 1); }
DivisorElement top(const ModulusPtr& modulus) { return DivisorElement(modulus, modulus->n()); }

bool divides(const DivisorElement& a, const DivisorElement& b) {
  require_same(a, b);
  return b.value() % a.value() == 0;
}

DivisorElement meet(const DivisorElement& a, const DivisorElement& b) {
  require_same(a, b);
  return DivisorElement(a.modulus(), std::gcd(a.value(), b.value()));
}

DivisorElement join(const DivisorElement& a, const DivisorElement& b) {
  require_same(a, b);
  return DivisorElement(a.modulus(), std::lcm(a.value(), b.value()));
}

DivisorElement implies(const DivisorElement& a, const DivisorElement& b) {
  return pointwise(a, b, [](unsigned ea, unsigned eb, unsigned en) { return eb >= ea ? en : eb; });
}

DivisorElement neg(const DivisorElement& a) { return implies(a, bottom(a.modulus())); }

DivisorElement equiv(const DivisorElement& a, const DivisorElement& b) {
  return meet(implies(a, b), implies(b, a));
}

DivisorElement meet(const ModulusPtr& modulus, std::span<const DivisorElement> xs) {
  DivisorElement acc = top(modulus);
  for (const auto& x : xs) acc = meet(acc, x);
  return acc;
}

DivisorElement join(const ModulusPtr& modulus, std::span<const DivisorElement> xs) {
  DivisorElement acc = bottom(modulus);
  for (const auto& x : xs) acc = join(acc, x);
  return acc;
}

bool is_hall(const DivisorElement& a) { return std::gcd(a.value(), a.n() / a.value()) == 1; }

std::vector<DivisorElement> hall_divisors(const ModulusPtr& modulus) {
  std::vector<DivisorElement> out;
  for (std::uint64_t d : modulus->divisors()) {
    if (std::gcd(d, modulus->n() / d) == 1) out.emplace_back(modulus, d);
  }
  return out;
}

bool is_chain(std::span<const DivisorElement> members) {
  if (members.empty()) return true;
  std::vector<std::uint64_t> values;
  for (const auto& m : members) {
    require_same(members.front(), m);
    values.push_back(m.value());
  }
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] % values[i - 1] != 0) return false;
  }
  return true;
}

std::vector<std::vector<std::uint64_t>> enumerate_maximal_chains(const Modulus& modulus) {
  std::vector<std::vector<std::uint64_t>> chains;
  std::vector<std::uint64_t> current{1};
  // Extending by primes in ascending order visits chains lexicographically.
  auto extend = [&](auto&& self, std::uint64_t value) -> void {
    if (value == modulus.n()) {
      chains.push_back(current);
      return;
    }
    for (const auto& pp : modulus.factorization()) {
      if ((modulus.n() / value) % pp.prime != 0) continue;
      current.push_back(value * pp.prime);
      self(self, value * pp.prime);
      current.pop_back();
    }
  };
  extend(extend, 1);
  return chains;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> hasse_edges(const Modulus& modulus) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::uint64_t a : modulus.divisors()) {
    for (const auto& pp : modulus.factorization()) {
      if ((modulus.n() / a) % pp.prime == 0) edges.emplace_back(a, a * pp.prime);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

void write_dot(std::ostream& out, const Modulus& modulus) {
  out << "digraph {\n";
  for (std::uint64_t d : modulus.divisors()) {
    out << "  \"" << d << '"';
    if (std::gcd(d, modulus.n() / d) == 1) out << " [shape=box]";
    out << ";\n";
  }
  for (const auto& [a, b] : hasse_edges(modulus)) {
    out << "  \"" << a << "\" -> \"" << b << "\";\n";
  }
  out << "}\n";
}

Connective parse_connective(const std::string& name) {
  if (name == "meet") return Connective::meet;
  if (name == "join") return Connective::join;
  if (name == "implies") return Connective::implies;
  if (name == "equiv") return Connective::equiv;
  if (name == "neg") return Connective::neg;
  throw std::invalid_argument("unknown connective '" + name + "'");
}

const char* to_string(Connective c) {
  switch (c) {
    case Connective::meet: return "meet";
    case Connective::join: return "join";
    case Connective::implies: return "implies";
    case Connective::equiv: return "equiv";
    case Connective::neg: return "neg";
  }
  return "?";
}

namespace {

std::uint64_t apply(Connective c, const DivisorElement& a, const DivisorElement& b) {
  switch (c) {
    case Connective::meet: return meet(a, b).value();
    case Connective::join: return join(a, b).value();
    case Connective::implies: return implies(a, b).value();
    case Connective::equiv: return equiv(a, b).value();
    case Connective::neg: return neg(a).value();
  }
  return 0;
}

}  // namespace

void write_truth_table(std::ostream& out, const ModulusPtr& modulus) {
  const auto xs = elements(modulus);
  out << "a,b,meet,join,implies,equiv\n";
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      out << a.value() << ',' << b.value() << ',' << meet(a, b).value() << ','
          << join(a, b).value() << ',' << implies(a, b).value() << ',' << equiv(a, b).value()
          << '\n';
    }
  }
}

void write_truth_table(std::ostream& out, const ModulusPtr& modulus, Connective connective) {
  const auto xs = elements(modulus);
  if (connective == Connective::neg) {
    out << "a,neg\n";
    for (const auto& a : xs) out << a.value() << ',' << neg(a).value() << '\n';
    return;
  }
  out << "a,b," << to_string(connective) << '\n';
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      out << a.value() << ',' << b.value() << ',' << apply(connective, a, b) << '\n';
    }
  }
}

}  // namespace heyting
