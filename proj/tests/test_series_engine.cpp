#include "constforge/series.hpp"

#include "constforge/elementary.hpp"
#include "constforge/sequences.hpp"

#include <doctest.h>

using namespace constforge;
using namespace constforge::series;
using real::Ball;

namespace {

// brute-force term oracle, independent of the incremental stepping path:
// factorial binomials, repeated multiplication for x^k, weight_value for the
// full weight
BigRational brute_term(const SeriesSpec& spec, long k) {
    BigInt fact2k, factk;
    mpz_fac_ui(fact2k.get_mpz_t(), static_cast<unsigned long>(2 * k));
    mpz_fac_ui(factk.get_mpz_t(), static_cast<unsigned long>(k));
    BigInt binom = fact2k / (factk * factk);
    BigRational xq = spec.x.rational();
    BigRational xpow(1);
    for (long i = 0; i < k; ++i) xpow *= xq;
    BigRational w = weight_value(spec.weight, k);
    switch (spec.family) {
        case Family::InvCentralBinom: {
            BigInt km = spec.m == 1 ? BigInt(k) : BigInt(k) * k;
            return w * xpow / BigRational(km * binom);
        }
        case Family::CentralBinomOdd:
            return w * xpow * BigRational(binom) / BigRational(2 * k + 1);
        case Family::CentralBinomPlain:
            return w * xpow * BigRational(binom);
        case Family::Baseline:
            break;
    }
    throw std::logic_error("brute_term: baseline");
}

BigRational brute_partial(const SeriesSpec& spec, long terms) {
    BigRational sum(0);
    for (long k = spec.k_start; k < spec.k_start + terms; ++k)
        sum += brute_term(spec, k);
    return sum;
}

} // namespace

TEST_CASE("catalog lookups expose the expected structure") {
    const SeriesSpec* s11 = find("S1.1");
    REQUIRE(s11 != nullptr);
    CHECK(s11->family == Family::InvCentralBinom);
    CHECK(s11->m == 2);
    CHECK(s11->weight == Weight::H2Prev);
    CHECK(s11->x.rational() == 1);
    CHECK_FALSE(s11->profile_only);

    const SeriesSpec* s116 = find("S1.16");
    REQUIRE(s116 != nullptr);
    CHECK(s116->family == Family::CentralBinomOdd);
    CHECK(s116->weight == Weight::HBar);
    CHECK(s116->x.rational() == make_rational(-1, 16));

    const SeriesSpec* s12l = find("S1.2L");
    REQUIRE(s12l != nullptr);
    CHECK(s12l->weight == Weight::Lucas2kH2);
    // rhs = 41 pi^4 / 7500
    Ball rhs = cf::eval(s12l->rhs, 200);
    Ball pi4 = Ball::pow_ui(real::const_pi(232), 4, 232);
    CHECK(rhs.overlaps(Ball::mul_rat(pi4, make_rational(41, 7500), 232)));

    CHECK(find("NOPE") == nullptr);
    CHECK(catalog().size() == 27);
    long profile_only = 0;
    for (const auto& s : catalog()) profile_only += s.profile_only ? 1 : 0;
    CHECK(profile_only == 4);
}

TEST_CASE("weight values") {
    CHECK(weight_value(Weight::One, 5) == 1);
    CHECK(weight_value(Weight::H2Prev, 1) == 0);
    CHECK(weight_value(Weight::H2Prev, 4) == make_rational(49, 36));
    CHECK(weight_value(Weight::HBar, 2) == make_rational(10, 9));
    CHECK(weight_value(Weight::Lucas2kH2, 2) == 7);  // L_4 * H2_1
    CHECK(weight_value(Weight::Fib2k1HBar, 1) == 2); // F_3 * Hbar_1
    CHECK(weight_value(Weight::Lucas2k1HBar, 2) ==
          BigRational(11) * make_rational(10, 9)); // L_5 * Hbar_2
    CHECK(weight_value(Weight::UkH2, 3) == BigRational(20) * make_rational(5, 4));
}

TEST_CASE("tail bounds") {
    const SeriesSpec* s11 = find("S1.1");
    auto rho = tail_bound(*s11, 2);
    REQUIRE(rho.has_value());
    CHECK(*rho == make_rational(5, 16)); // (1/4)(1 + 1/4)

    const SeriesSpec* s12l = find("S1.2L");
    auto rho2 = tail_bound(*s12l, 4);
    REQUIRE(rho2.has_value());
    CHECK(*rho2 < make_rational(70, 100));
    CHECK(*rho2 > make_rational(60, 100));

    // GF2.1 at x = 4: limiting ratio exactly 1, no bound exists
    SeriesSpec boundary = gf_series_spec(GfFamily::Gf21, QuadExt(4));
    CHECK_FALSE(tail_bound(boundary, 8).has_value());

    CHECK_THROWS_AS(tail_bound(*s11, 1), std::invalid_argument);

    // every non-profile-only catalog entry admits a geometric bound
    for (const auto& s : catalog()) {
        if (s.profile_only) continue;
        bool found = false;
        for (long k0 = std::max<long>(s.k_start + 1, 2); k0 <= 64 && !found; k0 *= 2)
            found = tail_bound(s, k0).has_value();
        CHECK_MESSAGE(found, s.id);
    }
}

TEST_CASE("S1.1 exact partial sum through k = 4 equals 2009/40320") {
    const SeriesSpec* s11 = find("S1.1");
    CHECK(exact_partial_sum(*s11, 4) == make_rational(2009, 40320));
    CHECK(brute_partial(*s11, 4) == make_rational(2009, 40320));
}

TEST_CASE("incremental exact partial sums match the brute-force oracle") {
    for (const char* id : {"S1.1", "S1.2L", "S1.3u", "S1.6", "S1.8", "S1.11", "S1.14",
                           "S1.19", "S-S6"}) {
        const SeriesSpec* spec = find(id);
        REQUIRE(spec != nullptr);
        CHECK_MESSAGE(exact_partial_sum(*spec, 12) == brute_partial(*spec, 12), id);
    }
}

TEST_CASE("exact-prefix oracle: 25-term ball contains the exact partial sum") {
    for (const auto& spec : catalog()) {
        Ball ps = partial_sum_ball(spec, 25, 50);
        BigRational exact = exact_partial_sum(spec, 25);
        CHECK_MESSAGE(ps.contains_rational(exact), spec.id);
    }
}

TEST_CASE("exact partial sums in Q(sqrt d) for surd arguments") {
    QuadExt phi2(BigInt(3), BigInt(1), BigInt(2), 5);
    SeriesSpec spec = gf_series_spec(GfFamily::Gf21, phi2);
    QuadExt exact = exact_partial_sum_quad(spec, 20);
    CHECK(exact.d() == 5);
    Ball ps = partial_sum_ball(spec, 20, 50);
    Ball exact_ball = real::eval_quadext(exact, 400);
    CHECK(ps.contains_ball(exact_ball));
}

TEST_CASE("eval_series produces certified enclosures") {
    const SeriesSpec* s11 = find("S1.1");
    EvalResult r = eval_series_full(*s11, 30);
    // contains pi^4/1944 evaluated at much higher precision
    Ball target = cf::eval(s11->rhs, 500);
    CHECK(r.value.overlaps(target));
    // radius <= 10^{-30+4}
    BigRational radius = r.value.radius_rat();
    CHECK(radius <= BigRational("1/100000000000000000000000000"));

    const SeriesSpec* s116 = find("S1.16");
    Ball v = eval_series(*s116, 20);
    CHECK(v.is_negative());
    CHECK(v.overlaps(cf::eval(s116->rhs, 300)));
}

TEST_CASE("profile-only entries refuse certified evaluation") {
    const SeriesSpec* leibniz = find("B-LEIBNIZ");
    REQUIRE(leibniz != nullptr);
    CHECK_THROWS_AS(eval_series(*leibniz, 20), std::invalid_argument);
    CHECK_THROWS_AS(verify_identity("B-LEIBNIZ", 20), std::invalid_argument);
    CHECK_THROWS_AS(verify_identity("NOPE", 20), std::out_of_range);
}

TEST_CASE("verify_identity examples") {
    BigRational tol90("1/1000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000");
    for (const char* id : {"S1.5", "S1.20", "B-BBB"}) {
        EvalReport rep = verify_identity(id, 100);
        CHECK_MESSAGE(rep.pass, id);
        CHECK_MESSAGE(rep.gap < tol90, id); // far under the pass threshold
    }
}

TEST_CASE("report JSON has the fixed shape") {
    EvalReport rep = verify_identity("S1.11", 30);
    std::string j = rep.to_json();
    CHECK(j.find("{\"id\":\"S1.11\",\"digits\":30,\"terms\":") == 0);
    CHECK(j.find("\"lhs\":\"") != std::string::npos);
    CHECK(j.find("\"rhs\":\"") != std::string::npos);
    CHECK(j.find("\"gap\":\"") != std::string::npos);
    CHECK(j.find("\"status\":\"pass\"") != std::string::npos);
    CHECK(j.find("\"ms\":") != std::string::npos);
    CHECK(j.back() == '}');
}

TEST_CASE("gf_check reproduces catalog identities") {
    // GF1.4 at x = 1 is S1.5
    EvalReport r14 = gf_check(GfFamily::Gf14, QuadExt(1), 50);
    CHECK(r14.pass);
    CHECK(r14.lhs.overlaps(cf::eval(find("S1.5")->rhs, 200)));

    // GF1.7 at x = 3 has the S1.13 value pi^3/(81 sqrt 3)
    EvalReport r17 = gf_check(GfFamily::Gf17, QuadExt(3), 50);
    CHECK(r17.pass);
    CHECK(r17.lhs.overlaps(cf::eval(find("S1.13")->rhs, 200)));

    // GF1.10 at x = 4 has the S1.16 value -(1/3) ln^3 phi
    EvalReport r110 = gf_check(GfFamily::Gf110, QuadExt(4), 50);
    CHECK(r110.pass);
    CHECK(r110.lhs.overlaps(cf::eval(find("S1.16")->rhs, 200)));
}

TEST_CASE("gf_check rejects out-of-domain and boundary arguments") {
    CHECK_THROWS_AS(gf_check(GfFamily::Gf110, QuadExt(make_rational(1, 2)), 30),
                    DomainError);
    CHECK_THROWS_AS(gf_check(GfFamily::Gf110, QuadExt(1), 30), RefusedError);
    CHECK_THROWS_AS(gf_check(GfFamily::Gf14, QuadExt(4), 30), RefusedError);
    CHECK_THROWS_AS(gf_check(GfFamily::Gf14, QuadExt(5), 30), DomainError);
    CHECK_THROWS_AS(gf_check(GfFamily::Gf14, QuadExt(0L), 30), DomainError);
    CHECK_THROWS_AS(gf_check(GfFamily::Gf117, QuadExt(2), 30), RefusedError);
    CHECK_THROWS_AS(gf_check(GfFamily::Dk3, QuadExt(make_rational(1, 4)), 30),
                    RefusedError);
    CHECK_THROWS_AS(gf_check(GfFamily::Dk3, QuadExt(make_rational(1, 5)), 30),
                    DomainError);
}

TEST_CASE("route consistency: Lucas/Fibonacci splits match the surd sub-sums") {
    long digits = 60;
    QuadExt phi2(BigInt(3), BigInt(1), BigInt(2), 5);   // alpha^2
    QuadExt beta2(BigInt(3), BigInt(-1), BigInt(2), 5); // beta^2 = (phi-1)^2
    Ball sub_a = eval_series(gf_series_spec(GfFamily::Gf21, phi2), digits);
    Ball sub_b = eval_series(gf_series_spec(GfFamily::Gf21, beta2), digits);
    mpfr_prec_t wp = 300;

    // L_{2k} = alpha^{2k} + beta^{2k}: S1.2L = sub_a + sub_b
    Ball s12l = eval_series(*find("S1.2L"), digits);
    CHECK(s12l.overlaps(Ball::add(sub_a, sub_b, wp)));

    // sqrt5 F_{2k} = alpha^{2k} - beta^{2k}: sqrt5 * S1.2F = sub_a - sub_b
    Ball s12f = eval_series(*find("S1.2F"), digits);
    Ball sqrt5 = Ball::sqrt(Ball::from_long(5, wp), wp);
    CHECK(Ball::mul(s12f, sqrt5, wp).overlaps(Ball::sub(sub_a, sub_b, wp)));

    // odd-index variant through GF1.7 at the same arguments
    Ball t_a = eval_series(gf_series_spec(GfFamily::Gf17, phi2), digits);
    Ball t_b = eval_series(gf_series_spec(GfFamily::Gf17, beta2), digits);
    Ball phi_ball = real::eval_quadext(QuadExt(BigInt(1), BigInt(1), BigInt(2), 5), wp);
    Ball phim1_ball =
        real::eval_quadext(QuadExt(BigInt(-1), BigInt(1), BigInt(2), 5), wp);
    Ball lhs_f = Ball::mul(eval_series(*find("S1.8"), digits), sqrt5, wp);
    Ball rhs_f =
        Ball::add(Ball::mul(phi_ball, t_a, wp), Ball::mul(phim1_ball, t_b, wp), wp);
    CHECK(lhs_f.overlaps(rhs_f));
    Ball lhs_l = eval_series(*find("S1.9"), digits);
    Ball rhs_l =
        Ball::sub(Ball::mul(phi_ball, t_a, wp), Ball::mul(phim1_ball, t_b, wp), wp);
    CHECK(lhs_l.overlaps(rhs_l));
}

TEST_CASE("derivative relation between the GF2.1 and GF1.4 function sides") {
    // central difference of F(x) = (2/3) arcsin^4(sqrt x / 2) at x = 1 with
    // step 1e-25 at ~100-digit working precision matches G(1)/1 to 1e-20,
    // where G is the GF1.4 function side
    mpfr_prec_t wp = 340;
    BigRational h("1/10000000000000000000000000");
    BigRational inv2h = BigRational(1) / (h * 2);
    mpfr_t up, tol;
    mpfr_init2(up, 32);
    mpfr_init2(tol, 32);
    mpfr_set_ui_2exp(tol, 1, -67, MPFR_RNDU); // 2^-67 < 1e-20
    for (long sample : {1L, 2L}) {
        Ball xp = Ball::from_rat(BigRational(sample) + h, wp);
        Ball xm = Ball::from_rat(BigRational(sample) - h, wp);
        Ball fp = gf_function_side(GfFamily::Gf21, xp, wp);
        Ball fm = gf_function_side(GfFamily::Gf21, xm, wp);
        Ball deriv = Ball::mul_rat(Ball::sub(fp, fm, wp), inv2h, wp);

        // d/dx of the GF2.1 side equals the GF1.4 side divided by x
        Ball g = gf_function_side(GfFamily::Gf14, Ball::from_long(sample, wp), wp);
        g = Ball::mul_rat(g, make_rational(1, sample), wp);
        Ball gap = Ball::sub(deriv, g, wp);
        gap.abs_upper(up);
        CHECK(mpfr_cmp(up, tol) < 0);
    }
    mpfr_clear(up);
    mpfr_clear(tol);
}

TEST_CASE("monotone refinement of verification reports") {
    for (const char* id : {"S1.1", "S1.9", "S1.15"}) {
        EvalReport lo = verify_identity(id, 50);
        EvalReport hi = verify_identity(id, 200);
        CHECK(lo.pass);
        CHECK(hi.pass);
        CHECK_MESSAGE(lo.lhs.overlaps(hi.lhs), id);
        CHECK_MESSAGE(lo.rhs.overlaps(hi.rhs), id);
    }
}

TEST_CASE("profile") {
    CHECK(profile("S1.1", 0).empty());

    auto slow = profile("B-LEIBNIZ", 1000);
    REQUIRE_FALSE(slow.empty());
    CHECK(slow.back().k == 1000);
    CHECK(slow.back().correct_digits <= 4.0);
    CHECK(slow.back().correct_digits >= 2.0);

    auto fast = profile("S1.1", 100);
    REQUIRE_FALSE(fast.empty());
    CHECK(fast.back().k == 100);
    CHECK(fast.back().correct_digits >= 55.0);

    CHECK_THROWS_AS(profile("NOPE", 10), std::out_of_range);
}

TEST_CASE("enclosures contain the true value at every digit target") {
    // low digit targets make the tail bound carry most of the radius, so an
    // underestimated tail shows up here as a containment violation
    for (long digits : {10L, 12L, 15L, 30L, 60L}) {
        for (const auto& s : catalog()) {
            if (s.profile_only) continue;
            auto r = eval_series_full(s, digits);
            Ball truth = cf::eval(s.rhs, 600);
            CHECK_MESSAGE(r.value.overlaps(truth), s.id, " at ", digits, " digits");
        }
    }
}

TEST_CASE("every non-profile-only identity verifies at 50 and 200 digits") {
    for (long digits : {50L, 200L}) {
        for (const auto& rep : verify_all(digits, 2)) {
            CHECK_MESSAGE(rep.pass, rep.id, " at ", digits, " digits");
        }
    }
}

TEST_CASE("verify_all is deterministic across worker counts") {
    auto one = verify_all(40, 1);
    auto four = verify_all(40, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].id == four[i].id);
        CHECK(one[i].terms == four[i].terms);
        CHECK(one[i].pass == four[i].pass);
        CHECK(one[i].gap == four[i].gap);
        CHECK(one[i].lhs.center_rat() == four[i].lhs.center_rat());
    }
}
