#include "constforge/closed_form.hpp"

#include <stdexcept>

namespace constforge::cf {

namespace {

std::shared_ptr<Expr> make(Kind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

real::Ball eval_impl(const Expr& e, mpfr_prec_t wp) {
    using real::Ball;
    switch (e.kind) {
        case Kind::Const:
            return Ball::from_rat(e.value, wp);
        case Kind::Pi:
            return real::const_pi(wp);
        case Kind::SqrtQ:
            return Ball::sqrt(Ball::from_rat(e.value, wp), wp);
        case Kind::Ln:
            return real::ln(eval_impl(*e.kids[0], wp), wp);
        case Kind::Pow:
            return Ball::pow_ui(eval_impl(*e.kids[0], wp), e.exponent, wp);
        case Kind::Neg:
            return Ball::neg(eval_impl(*e.kids[0], wp));
        case Kind::Mul: {
            Ball acc = Ball::from_long(1, wp);
            for (const auto& kid : e.kids) acc = Ball::mul(acc, eval_impl(*kid, wp), wp);
            return acc;
        }
        case Kind::Div:
            return Ball::div(eval_impl(*e.kids[0], wp), eval_impl(*e.kids[1], wp), wp);
        case Kind::Add: {
            Ball acc = Ball::zero();
            for (const auto& kid : e.kids) acc = Ball::add(acc, eval_impl(*kid, wp), wp);
            return acc;
        }
    }
    throw std::logic_error("closed form: unknown node kind");
}

} // namespace

ExprPtr num(const BigRational& q) {
    auto e = make(Kind::Const);
    e->value = q;
    return e;
}

ExprPtr num(long n) { return num(BigRational(n)); }

ExprPtr num(long n, long d) { return num(make_rational(n, d)); }

ExprPtr pi() { return make(Kind::Pi); }

ExprPtr sqrt_q(const BigRational& radicand) {
    if (radicand <= 0)
        throw std::domain_error("closed form: sqrt radicand must be positive");
    auto e = make(Kind::SqrtQ);
    e->value = radicand;
    return e;
}

ExprPtr ln(ExprPtr arg) {
    auto e = make(Kind::Ln);
    e->kids = {std::move(arg)};
    return e;
}

ExprPtr pow(ExprPtr base, unsigned long n) {
    if (n == 0) throw std::domain_error("closed form: power must be >= 1");
    auto e = make(Kind::Pow);
    e->exponent = n;
    e->kids = {std::move(base)};
    return e;
}

ExprPtr neg(ExprPtr arg) {
    auto e = make(Kind::Neg);
    e->kids = {std::move(arg)};
    return e;
}

ExprPtr mul(std::vector<ExprPtr> kids) {
    auto e = make(Kind::Mul);
    e->kids = std::move(kids);
    return e;
}

ExprPtr div(ExprPtr a, ExprPtr b) {
    auto e = make(Kind::Div);
    e->kids = {std::move(a), std::move(b)};
    return e;
}

ExprPtr add(std::vector<ExprPtr> kids) {
    auto e = make(Kind::Add);
    e->kids = std::move(kids);
    return e;
}

real::Ball eval(const ExprPtr& e, mpfr_prec_t prec) {
    if (!e) throw std::logic_error("closed form: null expression");
    return eval_impl(*e, prec + 32).round_to(prec);
}

std::string to_string(const ExprPtr& e) {
    if (!e) return "?";
    switch (e->kind) {
        case Kind::Const:
            return e->value.get_str();
        case Kind::Pi:
            return "pi";
        case Kind::SqrtQ:
            return "sqrt(" + e->value.get_str() + ")";
        case Kind::Ln:
            return "ln(" + to_string(e->kids[0]) + ")";
        case Kind::Pow:
            return to_string(e->kids[0]) + "^" + std::to_string(e->exponent);
        case Kind::Neg:
            return "-" + to_string(e->kids[0]);
        case Kind::Mul: {
            std::string s;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (i) s += "*";
                s += to_string(e->kids[i]);
            }
            return s;
        }
        case Kind::Div:
            return to_string(e->kids[0]) + "/(" + to_string(e->kids[1]) + ")";
        case Kind::Add: {
            std::string s = "(";
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (i) s += "+";
                s += to_string(e->kids[i]);
            }
            return s + ")";
        }
    }
    return "?";
}

} // namespace constforge::cf
