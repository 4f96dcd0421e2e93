#pragma once

/**
 * @file expression.hpp
 * @brief Lattice formulas over integers and Omega atoms.
 *
 *     expr   := term (("=>" | "<=>") expr)?
 *     term   := factor ("v" factor)*
 *     factor := atom ("^" atom)*
 *     atom   := "neg" atom | INT | Omega | Omega({..}) | Omega(~{..}) | "(" expr ")"
 *
 * `^` is meet and `v` is join. `=>` associates to the right; `<=>` does not
 * chain, and mixing it with `=>` needs parentheses.
 */

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heyting/divisor_lattice.hpp"
#include "heyting/supernatural.hpp"

namespace heyting {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::string text, std::size_t position);

  std::size_t position() const { return position_; }
  /// The input with a caret under the offending position, two lines.
  std::string caret() const;

 private:
  std::string text_;
  std::size_t position_;
};

struct Expr {
  enum class Op { atom, neg, meet, join, implies, equiv };

  Op op = Op::atom;
  SupernaturalNumber value;  ///< atoms only
  std::vector<Expr> args;

  static Expr atom(SupernaturalNumber v);
  static Expr unary(Op op, Expr a);
  static Expr binary(Op op, Expr a, Expr b);

  friend bool operator==(const Expr&, const Expr&) = default;
};

Expr parse_expression(std::string_view text);

/// Fully parenthesized except at the top level; parses back to an equal tree.
std::string render(const Expr& e);

/// Evaluation in the Heyting algebra of supernatural numbers.
SupernaturalNumber evaluate(const Expr& e);

/// Evaluation in D(n). Integer atoms must divide n (NotADivisor otherwise);
/// Omega(pi) stands for the largest pi-divisor of n, a Hall divisor.
DivisorElement evaluate(const Expr& e, const ModulusPtr& modulus);

}  // namespace heyting
