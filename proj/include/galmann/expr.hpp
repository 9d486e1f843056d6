#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "galmann/jet.hpp"

namespace galmann {

enum class NodeKind { number, variable, negate, add, subtract, multiply, divide, power, call };

enum class FuncId { sin, cos, tan, exp, log, sqrt, sinh, cosh, tanh, abs };

const char* func_name(FuncId id);

// Immutable expression tree node. `begin`/`end` give the byte span in the
// original source for parser-produced nodes (0,0 for synthesized ones).
struct ExprNode {
    NodeKind kind;
    double value = 0.0;                            // number
    FuncId func = FuncId::sin;                     // call
    std::shared_ptr<const ExprNode> lhs, rhs;      // children; unary operand and call argument use lhs
    std::size_t begin = 0, end = 0;
};

// A parsed scalar expression in a single named variable. Immutable and
// cheap to copy; evaluation is pure.
class Expression {
public:
    Expression() = default;
    Expression(std::shared_ptr<const ExprNode> root, std::string source, std::string variable)
        : root_(std::move(root)), source_(std::move(source)), variable_(std::move(variable)) {}

    bool empty() const { return root_ == nullptr; }
    const ExprNode& root() const;
    const std::string& source() const { return source_; }
    const std::string& variable() const { return variable_; }

    // Canonical text form; reparsing it yields a structurally identical tree.
    std::string print() const;

private:
    std::shared_ptr<const ExprNode> root_;
    std::string source_;
    std::string variable_;
};

// Recursive-descent parse of the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-'? atom
//   atom   := number | variable | func '(' expr ')' | '(' expr ')'
// with right-associative '^', functions sin cos tan exp log sqrt sinh cosh
// tanh abs, and predefined constants pi and e. Only `variable_name` may
// appear as a free identifier. Throws ParseError.
Expression parse_expression(std::string_view source, std::string_view variable_name);

// Value and first three derivatives at t, by jet arithmetic over the tree.
// Throws EvalDomainError naming the offending subexpression.
Jet3 eval_jet3(const Expression& expr, double t);

double eval_value(const Expression& expr, double t);

bool structurally_equal(const Expression& a, const Expression& b);

// Builds constant + sum(coefficient * term) as an expression tree. Negative
// coefficients become subtractions so the result stays parser-shaped. All
// terms must share one variable; zero coefficients are dropped.
Expression linear_combination(double constant, std::span<const std::pair<double, Expression>> terms);

}  // namespace galmann
