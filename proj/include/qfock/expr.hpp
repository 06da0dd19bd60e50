#pragma once

// Operator expression language:
//
//   expr  := sum
//   sum   := prod (("+" | "-") prod)*
//   prod  := coeff? atom+
//   atom  := "a(" int ")" | "a+(" int ")" | "s(" int ")"
//          | "alpha^" int "(" expr ")" | atom "^" uint | "(" expr ")"
//   coeff := int | "q^" uint | int "*" "q^" uint
//
// s(i) is a(i) + a+(i); alpha^k shifts every mode by k. Whitespace is
// insignificant. A bare "q" is read as "q^1", and a coefficient may stand
// alone as a scalar term.

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfock/qcombinat.hpp"
#include "qfock/wickalg.hpp"

namespace qfock {

struct ExprAst;
using ExprPtr = std::shared_ptr<const ExprAst>;

/// value * q^q_power
struct Coefficient {
  long long value = 1;
  unsigned q_power = 0;

  QPolynomial polynomial() const { return QPolynomial::monomial(value, q_power); }
  bool operator==(const Coefficient&) const = default;
};

namespace ast {
struct Creator { int mode; };
struct Annihilator { int mode; };
struct Field { int mode; };
struct Product { std::vector<ExprPtr> factors; };
struct SumTerm { Coefficient coeff; ExprPtr term; };
struct Sum { std::vector<SumTerm> terms; };
struct Power { ExprPtr base; unsigned exponent; };
struct ShiftApply { int k; ExprPtr body; };
}  // namespace ast

struct ExprAst {
  std::variant<ast::Creator, ast::Annihilator, ast::Field, ast::Product, ast::Sum, ast::Power, ast::ShiftApply> node;
};

/// Structural equality.
bool operator==(const ExprAst& a, const ExprAst& b);

/// Throws ErrorCode::Parse with the 1-based column of the offending token.
ExprAst parse_expr(std::string_view src);

/// Canonical text; parse_expr(to_string(e)) == e.
std::string to_string(const ExprAst& e);

/// Removes every ShiftApply node by translating the modes beneath it.
ExprAst lower_shifts(const ExprAst& e);

/// Exact normal-ordered form. Throws ErrorCode::Size past the word cap.
WickExpr to_wick(const ExprAst& e, std::size_t cap = kDefaultWordCap);

/// Modes of all generators after shift lowering.
std::set<int> modes_of(const ExprAst& e);

}  // namespace qfock
