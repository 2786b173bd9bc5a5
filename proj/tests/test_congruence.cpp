#include "constforge/congruence.hpp"

#include "constforge/sequences.hpp"

#include <doctest.h>

using namespace constforge;
using namespace constforge::cong;

TEST_CASE("modular inverses and rational residues") {
    ModCtx c49(7, 2);
    auto r = rational_residue(make_rational(1, 6), c49);
    REQUIRE(r.has_value());
    CHECK(*r == 41); // 6 * 41 = 246 = 5*49 + 1

    CHECK(rational_residue(BigRational(0), c49).value() == 0);

    ModCtx c5(5, 1);
    CHECK_FALSE(rational_residue(make_rational(1, 5), c5).has_value());
    // reduction happens first: 5/10 = 1/2 is invertible mod 5
    CHECK(rational_residue(make_rational(5, 10), c5).value() == 3);

    CHECK_FALSE(mod_inv(6, 9).has_value());
    CHECK(mod_inv(3, 7).value() == 5);
}

TEST_CASE("ModCtx rejects bad parameters") {
    CHECK_THROWS_AS(ModCtx(9, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModCtx(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModCtx(7, 4), std::invalid_argument);
}

TEST_CASE("harmonic sums modulo prime powers") {
    // H_4 = 25/12: divisible by 25
    CHECK(harmonic1_mod(5, 2) == 0);
    // H_2 = 3/2: 0 mod 3
    CHECK(harmonic1_mod(3, 1) == 0);
    CHECK(harmonic1_mod(7, 2) == 0);

    // exact check against the rational H_6 = 49/20 at p = 7, e = 5
    ModCtx c75(7, 5);
    BigRational h6(0);
    for (long k = 1; k <= 6; ++k) h6 += make_rational(1, k);
    CHECK(h6 == make_rational(49, 20));
    CHECK(harmonic1_mod(7, 5) == rational_residue(h6, c75).value());
}

TEST_CASE("Wolstenholme holds for 3 < p <= 10^4") {
    for (std::uint64_t p : primes_in(5, 10000)) {
        CHECK_MESSAGE(harmonic1_mod(p, 2) == 0, "p = ", p);
    }
}

TEST_CASE("wolstenholme quotient") {
    // p=5: H_4/p^2 = (25/12)/25 = 1/12; 12*73 = 876 = 7*125+1
    ModCtx c53(5, 3);
    CHECK(wolstenholme_quotient(5) == rational_residue(make_rational(1, 12), c53).value());
    // p=7: H_6/49 = 1/20 mod 343
    ModCtx c73(7, 3);
    CHECK(wolstenholme_quotient(7) == rational_residue(make_rational(1, 20), c73).value());
    CHECK_THROWS_AS(wolstenholme_quotient(3), std::invalid_argument);
}

TEST_CASE("bernoulli residues by power sums") {
    CHECK(bernoulli_mod(5) == 1);  // B_0 = 1
    CHECK(bernoulli_mod(7) == 6);  // B_2 = 1/6, 1/6 = 6 mod 7
    // p=11: B_6 = 1/42 mod 11 -> 42=9, inv(9)=5
    CHECK(bernoulli_mod(11) == 5);

    // cross-validation against the exact recurrence for 7 <= p <= 200
    auto primes = primes_in(7, 200);
    auto bern = seq::bernoulli_upto(200);
    for (std::uint64_t p : primes) {
        ModCtx ctx(p, 1);
        auto expect = rational_residue(bern[p - 5], ctx);
        REQUIRE(expect.has_value());
        CHECK_MESSAGE(bernoulli_mod(p) == *expect, "p = ", p);
    }
}

TEST_CASE("euler residues") {
    CHECK(euler_mod(5) == 4);  // E_2 = -1
    CHECK(euler_mod(7) == 5);  // E_4 = 5
    CHECK(euler_mod(11) == 1385 % 11); // E_8 = 1385

    auto eu = seq::euler_upto(200);
    for (std::uint64_t p : primes_in(5, 200)) {
        ModCtx ctx(p, 1);
        BigInt e = eu[p - 3] % BigInt(static_cast<unsigned long>(p));
        if (e < 0) e += BigInt(static_cast<unsigned long>(p));
        CHECK_MESSAGE(euler_mod(p) == e.get_ui(), "p = ", p);
    }
}

TEST_CASE("fermat quotients") {
    CHECK(fermat_quotient2(7) == 2);  // (64-1)/7 = 9 = 2 mod 7
    CHECK(fermat_quotient2(3) == 1);  // (4-1)/3 = 1
    CHECK(fermat_quotient2(5) == 3);  // (16-1)/5 = 3
}

TEST_CASE("legendre symbol (p/5) against the Euler criterion") {
    CHECK(legendre5(7) == -1);
    CHECK(legendre5(11) == 1);
    CHECK(legendre5(13) == -1);
    for (std::uint64_t p : primes_in(7, 1000)) {
        if (p == 5) continue;
        ModCtx ctx(p, 1);
        std::uint64_t crit = ctx.pow(5 % p, (p - 1) / 2);
        int expect = crit == 1 ? 1 : -1;
        CHECK_MESSAGE(legendre5(p) == expect, "p = ", p);
    }
}

TEST_CASE("fibonacci quotients") {
    CHECK(fib_quotient(7) == 3);       // F_8 = 21 = 3*7
    CHECK(fib_quotient(11) == 5);      // F_10 = 55 = 5*11
    CHECK(fib_quotient(13) == 29 % 13); // F_14 = 377 = 29*13
    CHECK_THROWS_AS(fib_quotient(5), std::invalid_argument);
}

TEST_CASE("incremental central binomial residues match the exact values") {
    for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 101ULL}) {
        for (int e : {1, 3}) {
            ModCtx ctx(p, e);
            std::uint64_t binom = 1;
            for (std::uint64_t k = 1; k < p; ++k) {
                std::uint64_t factor =
                    ctx.mul(2 * (2 * k - 1) % ctx.modulus(), *mod_inv(k, ctx.modulus()));
                binom = ctx.mul(binom, factor);
                BigInt expect = seq::central_binom(k) %
                                BigInt(static_cast<unsigned long>(ctx.modulus()));
                CHECK(binom == expect.get_ui());
            }
        }
    }
}

TEST_CASE("check_congruence spot values") {
    // CS6 at p = 5: lhs = 1, rhs = -E_2 = 1 (proven congruence)
    auto cs6 = check_congruence(CongruenceId::CS6, 5);
    CHECK(cs6.lhs == 1);
    CHECK(cs6.rhs == 1);
    CHECK(cs6.status == CongruenceReport::Status::Pass);

    // C2b at p = 7: rhs = (5/2)(-1) 3^2 = 2 mod 7
    auto c2b = check_congruence(CongruenceId::C2b, 7);
    CHECK(c2b.rhs == 2);
    CHECK(c2b.status == CongruenceReport::Status::Pass);

    // C2a at p = 7: rhs = (2/3) q_7(2)^2 = (2/3)*4 = 5 mod 7
    auto c2a = check_congruence(CongruenceId::C2a, 7);
    CHECK(c2a.rhs == 5);
    CHECK(c2a.status == CongruenceReport::Status::Pass);

    // C1a is applicable at p = 5 (76 p^2/135 reduces to 380/27)
    auto c1a = check_congruence(CongruenceId::C1a, 5);
    CHECK(c1a.status == CongruenceReport::Status::Pass);

    CHECK_THROWS_AS(check_congruence(CongruenceId::C2b, 5), std::invalid_argument);
    CHECK_THROWS_AS(check_congruence(CongruenceId::C1a, 4), std::invalid_argument);
}

TEST_CASE("C1b exact-rational cross-check of the p-regular reading") {
    // brute-force the truncated sum_{k<=(p-1)/2} C(2k,k)/8^k Hbar_k as an
    // exact rational; mod p it must agree with the O(p) modular pass
    for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL}) {
        BigRational sum(0);
        for (std::uint64_t k = 1; k <= (p - 1) / 2; ++k) {
            BigInt eight_k;
            mpz_ui_pow_ui(eight_k.get_mpz_t(), 8, static_cast<unsigned long>(k));
            sum += BigRational(seq::central_binom(k)) * seq::hbar2(k) /
                   BigRational(eight_k);
        }
        ModCtx ctx(p, 1);
        auto expect = rational_residue(sum, ctx);
        REQUIRE(expect.has_value());
        auto rep = check_congruence(CongruenceId::C1b, p);
        CHECK_MESSAGE(rep.lhs == *expect, "p = ", p);
        CHECK(rep.status == CongruenceReport::Status::Pass);
    }
}

TEST_CASE("sweeps are deterministic and respect range preconditions") {
    auto empty = sweep(CongruenceId::C2b, 3, 5);
    CHECK(empty.empty());

    auto single = sweep(CongruenceId::C1a, 5, 5);
    REQUIRE(single.size() == 1);
    CHECK(single[0].status == CongruenceReport::Status::Pass);

    auto one = sweep(CongruenceId::C2a, 5, 300, 1);
    auto four = sweep(CongruenceId::C2a, 5, 300, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].to_json() == four[i].to_json());
        CHECK(one[i].status == CongruenceReport::Status::Pass);
    }
}

TEST_CASE("congruence report JSON shape") {
    auto rep = check_congruence(CongruenceId::CS6, 7);
    CHECK(rep.to_json() ==
          "{\"id\":\"CS6\",\"p\":7,\"lhs\":2,\"rhs\":2,\"status\":\"pass\"}");
}
