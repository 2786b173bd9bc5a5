#include "constforge/ball.hpp"
#include "constforge/closed_form.hpp"
#include "constforge/elementary.hpp"
#include "constforge/quadext.hpp"

#include <doctest.h>

#include <random>

using namespace constforge;
using real::Ball;

namespace {

// independent high-precision oracle: MPFR's own transcendental code, which
// shares nothing with the Machin/atanh/Taylor paths under test
Ball mpfr_oracle_pi(mpfr_prec_t prec) {
    Ball out = Ball::from_long(0, prec);
    mpfr_const_pi(const_cast<mpfr_ptr>(out.center()), MPFR_RNDN);
    out.add_error_2exp(2 - prec);
    return out;
}

BigRational rand_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-10000, 10000);
    std::uniform_int_distribution<long> den(1, 10000);
    return make_rational(num(rng), den(rng));
}

} // namespace

TEST_CASE("exact integer arithmetic stays exact") {
    Ball one = Ball::from_long(1, 64);
    Ball two = Ball::add(one, one, 64);
    CHECK(two.exact());
    CHECK(two.contains_rational(BigRational(2)));

    Ball four = Ball::from_long(4, 64);
    Ball root = Ball::sqrt(four, 64);
    CHECK(root.exact());
    CHECK(root.contains_rational(BigRational(2)));
}

TEST_CASE("division radius honors the certified bound") {
    Ball one = Ball::from_long(1, 64);
    Ball three = Ball::from_long(3, 64);
    Ball third = Ball::div(one, three, 64);
    CHECK(third.contains_rational(make_rational(1, 3)));
    // radius <= 2^-62
    BigRational r = third.radius_rat();
    BigRational bound(1);
    bound /= BigRational(BigInt(1) << 62);
    CHECK(r <= bound);
}

TEST_CASE("divisor ball containing zero raises DomainError") {
    Ball num = Ball::from_long(1, 64);
    Ball den = Ball::from_long(0, 64);
    den.add_error_2exp(-10);
    CHECK_THROWS_AS(Ball::div(num, den, 64), DomainError);
    Ball neg = Ball::from_long(-4, 64);
    CHECK_THROWS_AS(Ball::sqrt(neg, 64), DomainError);
}

TEST_CASE("containment: exact rational results lie inside result balls") {
    std::mt19937 rng(12345);
    for (int i = 0; i < 500; ++i) {
        BigRational a = rand_rational(rng), b = rand_rational(rng);
        Ball ba = Ball::from_rat(a, 53), bb = Ball::from_rat(b, 53);
        CHECK(Ball::add(ba, bb, 53).contains_rational(a + b));
        CHECK(Ball::sub(ba, bb, 53).contains_rational(a - b));
        CHECK(Ball::mul(ba, bb, 53).contains_rational(a * b));
        if (b != 0 && !bb.contains_zero())
            CHECK(Ball::div(ba, bb, 53).contains_rational(a / b));
    }
}

TEST_CASE("refinement: higher-precision balls nest inside coarse ones") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<long> num(1, 4000);
    std::uniform_int_distribution<long> den(1, 4000);
    for (int i = 0; i < 60; ++i) {
        BigRational q = make_rational(num(rng), den(rng));
        Ball coarse = Ball::sqrt(Ball::from_rat(q, 64), 64);
        Ball fine = Ball::sqrt(Ball::from_rat(q, 256), 256);
        CHECK(coarse.contains_ball(fine));

        Ball lc = real::ln(Ball::from_rat(q, 64), 64);
        Ball lf = real::ln(Ball::from_rat(q, 256), 256);
        CHECK(lc.contains_ball(lf));

        Ball ac = real::arctan(Ball::from_rat(q, 64), 64);
        Ball af = real::arctan(Ball::from_rat(q, 256), 256);
        CHECK(ac.contains_ball(af));
    }
}

TEST_CASE("pi via Machin matches reference digits and the MPFR oracle") {
    // frozen reference digits (38 significant)
    BigRational ref(
        "31415926535897932384626433832795028842/10000000000000000000000000000000000000");
    Ball pi200 = real::const_pi(200);
    BigRational gap = pi200.center_rat() - ref;
    if (gap < 0) gap = -gap;
    BigRational tol(BigInt(1), BigInt("1000000000000000000000000000000000000")); // 1e-36
    CHECK(gap < tol);

    Ball oracle = mpfr_oracle_pi(512);
    CHECK(real::const_pi(300).contains_ball(oracle));

    // radius contract: <= 2^{2-prec}
    BigRational r = real::const_pi(128).radius_rat();
    BigRational bound(4);
    bound /= BigRational(BigInt(1) << 128);
    CHECK(r <= bound);
}

TEST_CASE("monotone refinement: const_pi(256) nests inside const_pi(64)") {
    CHECK(real::const_pi(64).contains_ball(real::const_pi(256)));
    CHECK(real::const_pi(64).radius_rat() >= real::const_pi(256).radius_rat());
}

TEST_CASE("ln agrees with the MPFR oracle") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> num(1, 100000);
    std::uniform_int_distribution<long> den(1, 100000);
    for (int i = 0; i < 40; ++i) {
        BigRational q = make_rational(num(rng), den(rng));
        Ball mine = real::ln(Ball::from_rat(q, 128), 128);
        Ball oracle = Ball::from_rat(q, 512);
        mpfr_log(const_cast<mpfr_ptr>(oracle.center()), oracle.center(), MPFR_RNDN);
        long e = mpfr_zero_p(oracle.center()) ? -510
                                              : mpfr_get_exp(oracle.center()) - 510;
        oracle.add_error_2exp(e);
        CHECK(mine.overlaps(oracle));
    }
    CHECK_THROWS_AS(real::ln(Ball::from_long(0, 64), 64), DomainError);
    CHECK_THROWS_AS(real::ln(Ball::from_long(-3, 64), 64), DomainError);
}

TEST_CASE("arcsin special and surd values") {
    mpfr_prec_t prec = 256;
    Ball half = Ball::from_rat(make_rational(1, 2), prec);
    Ball pi = real::const_pi(prec);

    // arcsin(1/2) = pi/6
    Ball lhs = real::arcsin(half, prec);
    Ball rhs = Ball::div(pi, Ball::from_long(6, prec), prec);
    CHECK(lhs.overlaps(rhs));

    // arcsin((sqrt5+1)/4) = 3 pi/10 and arcsin((sqrt5-1)/4) = pi/10
    Ball s5 = Ball::sqrt(Ball::from_long(5, prec), prec);
    Ball four = Ball::from_long(4, prec);
    Ball one = Ball::from_long(1, prec);
    Ball a1 = real::arcsin(Ball::div(Ball::add(s5, one, prec), four, prec), prec);
    Ball e1 = Ball::mul_rat(pi, make_rational(3, 10), prec);
    CHECK(a1.overlaps(e1));
    Ball a2 = real::arcsin(Ball::div(Ball::sub(s5, one, prec), four, prec), prec);
    Ball e2 = Ball::mul_rat(pi, make_rational(1, 10), prec);
    CHECK(a2.overlaps(e2));

    // exact endpoints map to ±pi/2 without DomainError
    Ball top = real::arcsin(Ball::from_long(1, prec), prec);
    CHECK(top.overlaps(Ball::mul_2exp(pi, -1)));
    Ball bottom = real::arcsin(Ball::from_long(-1, prec), prec);
    CHECK(bottom.overlaps(Ball::neg(Ball::mul_2exp(pi, -1))));

    CHECK_THROWS_AS(real::arcsin(Ball::from_long(2, prec), prec), DomainError);
}

TEST_CASE("ln phi equals arcsinh(1/2)") {
    mpfr_prec_t prec = 256;
    Ball s5 = Ball::sqrt(Ball::from_long(5, prec), prec);
    Ball phi = Ball::mul_2exp(Ball::add(s5, Ball::from_long(1, prec), prec), -1);
    Ball lhs = real::ln(phi, prec);
    Ball rhs = real::arcsinh(Ball::from_rat(make_rational(1, 2), prec), prec);
    CHECK(lhs.overlaps(rhs));

    // frozen reference: ln phi = 0.4812118250596034...
    BigRational ref = make_rational(4812118250596034LL, 10000000000000000LL);
    BigRational gap = lhs.center_rat() - ref;
    if (gap < 0) gap = -gap;
    CHECK(gap < make_rational(1, 1000000000000000LL));
}

TEST_CASE("sin(pi/5) and sin(2 pi/5) closed forms round-trip through arcsin") {
    mpfr_prec_t prec = 256;
    Ball s5 = Ball::sqrt(Ball::from_long(5, prec), prec);
    Ball five = Ball::from_long(5, prec);

    // (1/2) sqrt((5 - sqrt5)/2) = sin(pi/5)
    Ball inner = Ball::mul_2exp(Ball::sub(five, s5, prec), -1);
    Ball value = Ball::mul_2exp(Ball::sqrt(inner, prec), -1);
    Ball back = real::arcsin(value, prec);
    Ball expect = Ball::mul_rat(real::const_pi(prec), make_rational(1, 5), prec);
    CHECK(back.overlaps(expect));

    // (1/2) sqrt((5 + sqrt5)/2) = sin(2 pi/5)
    Ball inner2 = Ball::mul_2exp(Ball::add(five, s5, prec), -1);
    Ball value2 = Ball::mul_2exp(Ball::sqrt(inner2, prec), -1);
    Ball back2 = real::arcsin(value2, prec);
    Ball expect2 = Ball::mul_rat(real::const_pi(prec), make_rational(2, 5), prec);
    CHECK(back2.overlaps(expect2));
}

TEST_CASE("quadratic surd evaluation") {
    mpfr_prec_t prec = 128;
    QuadExt phi(BigInt(1), BigInt(1), BigInt(2), 5);
    Ball b = real::eval_quadext(phi, prec);
    // golden ratio reference digits
    BigRational ref("16180339887498948482/10000000000000000000");
    BigRational gap = b.center_rat() - ref;
    if (gap < 0) gap = -gap;
    CHECK(gap < BigRational("1/100000000000000000"));

    QuadExt rational_only(make_rational(3, 4));
    Ball r = real::eval_quadext(rational_only, prec);
    CHECK(r.contains_rational(make_rational(3, 4)));

    // (5 + sqrt5)/2 = 3.6180339887...
    QuadExt gamma(BigInt(5), BigInt(1), BigInt(2), 5);
    Ball g = real::eval_quadext(gamma, prec);
    BigRational gref("36180339887498948482/10000000000000000000");
    gap = g.center_rat() - gref;
    if (gap < 0) gap = -gap;
    CHECK(gap < BigRational("1/100000000000000000"));
}

TEST_CASE("quadext parsing round trips") {
    auto p1 = QuadExt::parse("3/4");
    REQUIRE(p1.has_value());
    CHECK(p1->is_rational());
    CHECK(p1->rational() == make_rational(3, 4));

    auto p2 = QuadExt::parse("(1+1*sqrt(5))/2");
    REQUIRE(p2.has_value());
    CHECK(p2->a() == 1);
    CHECK(p2->b() == 1);
    CHECK(p2->c() == 2);
    CHECK(p2->d() == 5);

    auto p3 = QuadExt::parse("-1/16");
    REQUIRE(p3.has_value());
    CHECK(p3->rational() == make_rational(-1, 16));

    auto p4 = QuadExt::parse("sqrt(2)");
    REQUIRE(p4.has_value());
    CHECK(p4->d() == 2);
    CHECK(p4->b() == 1);

    auto p5 = QuadExt::parse("(3-1*sqrt(5))/2");
    REQUIRE(p5.has_value());
    CHECK(p5->b() == -1);

    CHECK_FALSE(QuadExt::parse("").has_value());
    CHECK_FALSE(QuadExt::parse("sqrt(7)").has_value());
    CHECK_FALSE(QuadExt::parse("x+1").has_value());

    for (const char* text : {"3/4", "(1+1*sqrt(5))/2", "(3-1*sqrt(5))/2", "-7"}) {
        auto q = QuadExt::parse(text);
        REQUIRE(q.has_value());
        auto round = QuadExt::parse(q->str());
        REQUIRE(round.has_value());
        CHECK(*round == *q);
    }
}

TEST_CASE("quadext exact arithmetic and comparisons") {
    QuadExt phi(BigInt(1), BigInt(1), BigInt(2), 5);
    QuadExt phi2 = phi.squared();
    // phi^2 = (3+sqrt5)/2 = phi + 1
    CHECK(phi2 == phi + QuadExt(BigRational(1)));
    CHECK(phi2.compare(BigRational(2)) > 0);
    CHECK(phi2.compare(BigRational(3)) < 0);
    CHECK(phi.reciprocal() == phi - QuadExt(BigRational(1)));
    CHECK((phi * phi.reciprocal()).rational() == 1);
    CHECK(phi.sign() == 1);
    CHECK((-phi).sign() == -1);
    CHECK(QuadExt(BigRational(0)).sign() == 0);
}

TEST_CASE("closed-form expressions") {
    using namespace cf;
    mpfr_prec_t prec = 256;

    Ball zero = eval(num(0L), prec);
    CHECK(zero.exact());
    CHECK(zero.contains_rational(BigRational(0)));

    // pi^4/1944 against a pi power computed directly
    Ball e1 = eval(div(pow(pi(), 4), num(1944)), prec);
    Ball p = real::const_pi(prec + 32);
    Ball p4 = Ball::pow_ui(p, 4, prec + 32);
    Ball expect = Ball::mul_rat(p4, make_rational(1, 1944), prec + 32);
    CHECK(e1.overlaps(expect));

    // -(1/3) ln^3 phi = -0.0371439099765171...
    auto phi = div(add({num(1), sqrt_q(BigRational(5))}), num(2));
    Ball e2 = eval(neg(mul({num(1, 3), pow(ln(phi), 3)})), prec);
    CHECK(e2.is_negative());
    BigRational ref = make_rational(-371439099765171LL, 10000000000000000LL);
    BigRational gap = e2.center_rat() - ref;
    if (gap < 0) gap = -gap;
    CHECK(gap < make_rational(1, 1000000000000000LL));

    // refinement: higher precision never enlarges the ball
    Ball lo = eval(div(pow(pi(), 4), num(1944)), 64);
    Ball hi = eval(div(pow(pi(), 4), num(1944)), 256);
    CHECK(lo.contains_ball(hi));
    CHECK(lo.radius_rat() >= hi.radius_rat());
}

TEST_CASE("squares of zero-straddling balls stay non-negative") {
    Ball wide = Ball::from_long(0, 64);
    wide.add_error_2exp(3); // [-8, 8]
    Ball sq = Ball::sqr(wide, 64);
    CHECK_FALSE(sq.is_negative());
    CHECK(sq.contains_rational(BigRational(0)));
    CHECK(sq.contains_rational(BigRational(64)));
    CHECK_FALSE(sq.contains_rational(BigRational(-1)));

    // arctan stays defined on wide balls and encloses the endpoint values
    Ball a = real::arctan(wide, 64);
    CHECK(a.contains_rational(BigRational(0)));
    Ball at8 = real::arctan(Ball::from_long(8, 256), 256);
    CHECK(a.contains_ball(at8));

    // non-straddling squares keep the tight two-sided enclosure
    Ball off = Ball::from_long(3, 64);
    off.add_error_2exp(-4);
    Ball off2 = Ball::sqr(off, 64);
    CHECK(off2.contains_rational(BigRational(9)));
    CHECK_FALSE(off2.contains_rational(BigRational(8))); // well outside (3±1/16)^2
}

TEST_CASE("decimal output prints only certified digits") {
    Ball pi = real::const_pi(128);
    std::string s = pi.decimal();
    CHECK(s.substr(0, 12) == "3.1415926535");

    Ball fuzzy = Ball::from_rat(make_rational(355, 113), 64);
    fuzzy.add_error_2exp(-10);
    CHECK(fuzzy.certified_decimals() <= 4);
    CHECK(real::const_pi(256).certified_decimals() >= 70);
}
