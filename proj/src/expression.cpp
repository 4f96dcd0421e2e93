#include "heyting/expression.hpp"

#include <cctype>
#include <optional>

#include "heyting/number_theory.hpp"

namespace heyting {

ParseError::ParseError(const std::string& what, std::string text, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)),
      text_(std::move(text)),
      position_(position) {}

std::string ParseError::caret() const {
  return text_ + "\n" + std::string(position_, ' ') + "^";
}

Expr Expr::atom(SupernaturalNumber v) {
  Expr e;
  e.value = std::move(v);
  return e;
}

Expr Expr::unary(Op op, Expr a) {
  Expr e;
  e.op = op;
  e.args.push_back(std::move(a));
  return e;
}

Expr Expr::binary(Op op, Expr a, Expr b) {
  Expr e;
  e.op = op;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr().tree;
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input");
    return e;
  }

 private:
  struct Parsed {
    Expr tree;
    bool bare_arrow = false;  // an unparenthesized => or <=> at the top
  };

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, std::string(text_), at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool accept(std::string_view symbol) {
    skip_ws();
    if (text_.substr(pos_, symbol.size()) != symbol) return false;
    pos_ += symbol.size();
    return true;
  }

  // Keywords must not run into a following identifier character.
  bool accept_word(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && is_word_char(text_[end])) return false;
    pos_ = end;
    return true;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Parsed expr() {
    Expr lhs = term();
    const std::size_t op_at = (skip_ws(), pos_);
    Expr::Op op;
    if (accept("<=>")) {
      op = Expr::Op::equiv;
    } else if (accept("=>")) {
      op = Expr::Op::implies;
    } else {
      return {std::move(lhs), false};
    }
    const std::size_t rhs_at = (skip_ws(), pos_);
    Parsed rhs = expr();
    if (rhs.bare_arrow) {
      const Expr::Op inner = rhs.tree.op;
      if (op == Expr::Op::equiv || inner == Expr::Op::equiv) {
        fail_at(op == inner ? "'<=>' does not chain; add parentheses"
                            : "mixing '=>' and '<=>' needs parentheses",
                op == Expr::Op::equiv ? op_at : rhs_at);
      }
    }
    return {Expr::binary(op, std::move(lhs), std::move(rhs.tree)), true};
  }

  Expr term() {
    Expr acc = factor();
    while (accept_word("v")) acc = Expr::binary(Expr::Op::join, std::move(acc), factor());
    return acc;
  }

  Expr factor() {
    Expr acc = atom();
    while (accept("^")) acc = Expr::binary(Expr::Op::meet, std::move(acc), atom());
    return acc;
  }

  Expr atom() {
    skip_ws();
    if (accept_word("neg")) return Expr::unary(Expr::Op::neg, atom());
    if (accept_word("Omega")) {
      skip_ws();
      if (peek() != '(') return Expr::atom(SupernaturalNumber::omega());
      return Expr::atom(SupernaturalNumber::omega(prime_set()));
    }
    if (peek() == '(') {
      ++pos_;
      Expr inner = expr().tree;
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::size_t at = pos_;
      const std::uint64_t v = integer();
      if (v == 0) fail_at("0 is not a supernatural number", at);
      try {
        return Expr::atom(SupernaturalNumber::from_natural(v));
      } catch (const std::invalid_argument& e) {
        fail_at(e.what(), at);
      }
    }
    if (pos_ == text_.size()) fail("unexpected end of input");
    fail("expected an atom");
  }

  std::uint64_t integer() {
    skip_ws();
    const std::size_t at = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (kMaxNaturalLiteral - digit) / 10) fail_at("integer too large", at);
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  PrimeSet prime_set() {
    expect('(');
    skip_ws();
    const bool complement = peek() == '~';
    if (complement) ++pos_;
    expect('{');
    std::vector<Prime> primes;
    skip_ws();
    if (peek() != '}') {
      do {
        skip_ws();
        const std::size_t at = pos_;
        const std::uint64_t p = integer();
        if (!is_prime(p)) fail_at(std::to_string(p) + " is not prime", at);
        primes.push_back(p);
        skip_ws();
      } while (peek() == ',' && (++pos_, true));
    }
    expect('}');
    expect(')');
    return complement ? PrimeSet::cofinite(std::move(primes)) : PrimeSet::finite(std::move(primes));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const char* symbol(Expr::Op op) {
  switch (op) {
    case Expr::Op::meet: return " ^ ";
    case Expr::Op::join: return " v ";
    case Expr::Op::implies: return " => ";
    case Expr::Op::equiv: return " <=> ";
    default: return "";
  }
}

std::string render_inner(const Expr& e) {
  switch (e.op) {
    case Expr::Op::atom: return e.value.to_string();
    case Expr::Op::neg: return "neg " + render_inner(e.args[0]);
    default: return "(" + render_inner(e.args[0]) + symbol(e.op) + render_inner(e.args[1]) + ")";
  }
}

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string render(const Expr& e) {
  if (e.op == Expr::Op::atom || e.op == Expr::Op::neg) return render_inner(e);
  return render_inner(e.args[0]) + symbol(e.op) + render_inner(e.args[1]);
}

SupernaturalNumber evaluate(const Expr& e) {
  switch (e.op) {
    case Expr::Op::atom: return e.value;
    case Expr::Op::neg: return neg(evaluate(e.args[0]));
    case Expr::Op::meet: return meet(evaluate(e.args[0]), evaluate(e.args[1]));
    case Expr::Op::join: return join(evaluate(e.args[0]), evaluate(e.args[1]));
    case Expr::Op::implies: return implies(evaluate(e.args[0]), evaluate(e.args[1]));
    case Expr::Op::equiv: return equiv(evaluate(e.args[0]), evaluate(e.args[1]));
  }
  throw std::logic_error("bad expression node");
}

DivisorElement evaluate(const Expr& e, const ModulusPtr& modulus) {
  switch (e.op) {
    case Expr::Op::atom: {
      std::uint64_t v = 0;
      if (e.value.to_natural(v)) return DivisorElement(modulus, v);
      // Omega atoms: exponent 0 or infinite per prime, so meeting with n keeps
      // the full p-part of n exactly for the primes in the set.
      const auto cut = meet(e.value, SupernaturalNumber::from_natural(modulus->n()));
      cut.to_natural(v);
      return DivisorElement(modulus, v);
    }
    case Expr::Op::neg: return neg(evaluate(e.args[0], modulus));
    case Expr::Op::meet: return meet(evaluate(e.args[0], modulus), evaluate(e.args[1], modulus));
    case Expr::Op::join: return join(evaluate(e.args[0], modulus), evaluate(e.args[1], modulus));
    case Expr::Op::implies:
      return implies(evaluate(e.args[0], modulus), evaluate(e.args[1], modulus));
    case Expr::Op::equiv: return equiv(evaluate(e.args[0], modulus), evaluate(e.args[1], modulus));
  }
  throw std::logic_error("bad expression node");
}

}  // namespace heyting
