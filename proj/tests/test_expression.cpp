#include <random>

#include "doctest.h"
#include "heyting/expression.hpp"

using namespace heyting;

namespace {

std::string eval_in(std::uint64_t n, const char* text) {
  return std::to_string(evaluate(parse_expression(text), Modulus::make(n)).value());
}

std::string eval_sn(const char* text) { return evaluate(parse_expression(text)).to_string(); }

std::size_t error_position(const char* text) {
  try {
    parse_expression(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

// Random expression text from the grammar, parenthesizing arrow operands.
std::string generate(std::mt19937_64& rng, int depth) {
  static const char* atoms[] = {"1", "2", "10", "75", "900", "Omega", "Omega({2,3})", "Omega(~{5})"};
  if (depth == 0 || rng() % 4 == 0) return atoms[rng() % 8];
  const auto a = generate(rng, depth - 1);
  const auto b = generate(rng, depth - 1);
  switch (rng() % 5) {
    case 0: return "neg " + (rng() % 2 ? a : "(" + a + ")");
    case 1: return "(" + a + ") ^ (" + b + ")";
    case 2: return "(" + a + ") v (" + b + ")";
    case 3: return "(" + a + ") => (" + b + ")";
    default: return "(" + a + ") <=> (" + b + ")";
  }
}

}  // namespace

TEST_SUITE("expression") {
  TEST_CASE("evaluation in D(n)") {
    CHECK(eval_in(900, "neg 10") == "9");
    CHECK(eval_in(900, "10 => 75") == "225");
    CHECK(eval_in(900, "10 <=> 75") == "5");
    CHECK(eval_in(900, "10 v neg 10") == "90");
    CHECK(eval_in(900, "10 ^ 75 v 36") == "180");
    CHECK(eval_in(900, "Omega") == "900");
    CHECK(eval_in(900, "Omega({2,7})") == "4");
    CHECK(eval_in(900, "neg Omega(~{3})") == "9");
    CHECK_THROWS_AS(eval_in(900, "7"), NotADivisor);
  }

  TEST_CASE("evaluation in the supernatural numbers") {
    CHECK(eval_sn("neg 2") == "Omega(~{2})");
    CHECK(eval_sn("10 => 75") == "Omega(~{2})");
    CHECK(eval_sn("neg neg 10") == "Omega({2,5})");
    CHECK(eval_sn("12 ^ Omega({2,5})") == "4");
    CHECK(eval_sn("4 v Omega({3})") == "4*Omega({3})");
  }

  TEST_CASE("precedence and associativity") {
    // neg binds tightest, then ^, then v, then the arrows.
    CHECK(parse_expression("neg 2 ^ 3 v 5") == parse_expression("((neg 2) ^ 3) v 5"));
    CHECK(parse_expression("2 v 3 ^ 5") == parse_expression("2 v (3 ^ 5)"));
    CHECK(parse_expression("2 => 3 => 5") == parse_expression("2 => (3 => 5)"));
    CHECK(parse_expression("2 v 3 => 5") == parse_expression("(2 v 3) => 5"));
    CHECK_NOTHROW(parse_expression("(2 <=> 3) <=> 5"));
    CHECK_NOTHROW(parse_expression("2 => (3 <=> 5)"));
  }

  TEST_CASE("parse errors carry a position") {
    CHECK(error_position("2 <=> 3 <=> 5") == 2);
    CHECK(error_position("2 => 3 <=> 5") == 5);
    CHECK(error_position("2 <=> 3 => 5") == 2);
    CHECK(error_position("2 ^") == 3);
    CHECK(error_position("(2 v 3") == 6);
    CHECK(error_position("2 3") == 2);
    CHECK(error_position("Omega({4})") == 7);
    CHECK(error_position("0") == 0);
    CHECK(error_position("vv") == 0);
    CHECK(error_position("negate") == 0);
    try {
      parse_expression("10 => ");
    } catch (const ParseError& e) {
      CHECK(e.caret() == "10 => \n      ^");
    }
  }

  TEST_CASE("rendering round-trips") {
    CHECK(render(parse_expression("neg 2 ^ 3 v 5")) == "(neg 2 ^ 3) v 5");
    CHECK(render(parse_expression("2 => 3 => 5")) == "2 => (3 => 5)");
    CHECK(render(parse_expression("neg (2 v 3)")) == "neg (2 v 3)");
    std::mt19937_64 rng(77);
    for (int i = 0; i < 500; ++i) {
      const auto text = generate(rng, 4);
      const auto tree = parse_expression(text);
      const auto again = parse_expression(render(tree));
      REQUIRE_MESSAGE(again == tree, text);
      CHECK(evaluate(again) == evaluate(tree));
    }
  }
}
