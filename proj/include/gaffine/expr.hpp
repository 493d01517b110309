#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gaffine/jet.hpp"

namespace gaffine {

struct ExprNode;

// Immutable expression tree over one free variable (default "t"), named
// parameters, the constants pi and e, and the elementary functions of jet.hpp.
//
// Grammar (whitespace ignored):
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := ("-" | "+") unary | power
//   power   := primary ("^" unary)?          right associative
//   primary := number | name | name "(" expr ")" | "(" expr ")"
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

    static Expr constant(double v);

    bool empty() const { return !root_; }
    const ExprNode& root() const { return *root_; }

    // Evaluates with `var` bound to `x` and the remaining names looked up in params.
    Jet eval(const Jet& x, const std::map<std::string, double>& params = {},
             std::string_view var = "t") const;
    double eval(double x, const std::map<std::string, double>& params = {},
                std::string_view var = "t") const;

    // Names referenced by the tree, excluding pi and e.
    std::set<std::string> symbols() const;
    std::string to_string() const;

private:
    std::shared_ptr<const ExprNode> root_;
};

struct ExprNode {
    enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow, Call };
    Kind kind = Kind::Number;
    double number = 0.0;
    std::string name;
    ElemFn fn = ElemFn::Exp;
    std::shared_ptr<const ExprNode> lhs, rhs;
};

Expr parse_expression(std::string_view src);

// "(e1, e2, ...)" -> one Expr per entry; a source without a top-level comma
// yields a single expression.
std::vector<Expr> parse_vector_expression(std::string_view src);

}  // namespace gaffine
