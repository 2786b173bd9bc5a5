#pragma once

#include "constforge/ball.hpp"
#include "constforge/elementary.hpp"
#include "constforge/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace constforge::cf {

/// Tiny expression trees for the right-hand sides of the catalog: rational
/// constants, pi, square roots of positive rationals, ln, integer powers,
/// negation, products, quotients and sums. Values are fixed at catalog
/// construction; evaluation returns a certified enclosure.
enum class Kind { Const, Pi, SqrtQ, Ln, Pow, Neg, Mul, Div, Add };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    Kind kind;
    BigRational value;        // Const payload, SqrtQ radicand
    unsigned long exponent{}; // Pow payload
    std::vector<ExprPtr> kids;
};

ExprPtr num(const BigRational& q);
ExprPtr num(long n);
ExprPtr num(long n, long d);
ExprPtr pi();
ExprPtr sqrt_q(const BigRational& radicand); // requires radicand > 0
ExprPtr ln(ExprPtr e);
ExprPtr pow(ExprPtr e, unsigned long n); // requires n >= 1
ExprPtr neg(ExprPtr e);
ExprPtr mul(std::vector<ExprPtr> kids);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr add(std::vector<ExprPtr> kids);

/// Ball containing the exact value of the expression.
real::Ball eval(const ExprPtr& e, mpfr_prec_t prec);

std::string to_string(const ExprPtr& e);

} // namespace constforge::cf
