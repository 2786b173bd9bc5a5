#pragma once

#include "constforge/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace constforge::cong {

/// Hard errors: these flag theorem violations, i.e. implementation bugs,
/// never data-dependent conditions.
struct WolstenholmeViolation : std::logic_error {
    using std::logic_error::logic_error;
};
struct DivisibilityViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Arithmetic context modulo p^e for an odd prime p, e in {1, 2, 3, 5}.
/// p is primality-checked against the sieve; p^e must fit comfortably in
/// 64 bits (guarded in the constructor).
class ModCtx {
public:
    ModCtx(std::uint64_t p, int e);

    std::uint64_t p() const { return p_; }
    int e() const { return e_; }
    std::uint64_t modulus() const { return pe_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;
    std::uint64_t reduce(const BigInt& z) const;

private:
    std::uint64_t p_;
    int e_;
    std::uint64_t pe_;
};

/// Sieve-backed primality for n <= 10^6.
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

/// Inverse of a modulo m (m need not be prime); nullopt when gcd(a, m) > 1.
std::optional<std::uint64_t> mod_inv(std::uint64_t a, std::uint64_t m);

/// Residue of an exact, fully reduced rational modulo p^e. nullopt when the
/// reduced denominator shares a factor with p (the NotInvertible signal).
std::optional<std::uint64_t> rational_residue(const BigRational& q, const ModCtx& ctx);

/// H_{p-1} = sum_{k<p} 1/k computed termwise with modular inverses mod p^e.
std::uint64_t harmonic1_mod(std::uint64_t p, int e);

/// H_{p-1}/p^2 mod p^3 for p > 3; Wolstenholme guarantees the division.
std::uint64_t wolstenholme_quotient(std::uint64_t p);

/// B_{p-5} mod p via power sums: sum_{x<p} x^{p-5} = p B_{p-5} (mod p^2).
/// p = 5 returns B_0 = 1 directly.
std::uint64_t bernoulli_mod(std::uint64_t p);

/// E_{p-3} mod p by the defining recursion reduced mod p (O(p^2) work).
std::uint64_t euler_mod(std::uint64_t p);

/// Fermat quotient q_p(2) = (2^{p-1} - 1)/p mod p.
std::uint64_t fermat_quotient2(std::uint64_t p);

/// Legendre symbol (p/5): +1 iff p = ±1 (mod 5). Requires p != 5.
int legendre5(std::uint64_t p);

/// F_{p-(p/5)}/p mod p for p > 5; the index choice makes p divide the
/// Fibonacci number, asserted as a hard error.
std::uint64_t fib_quotient(std::uint64_t p);

enum class CongruenceId { C1a, C1b, C2a, C2b, CS6 };

std::optional<CongruenceId> parse_congruence_id(const std::string& name);
std::string congruence_name(CongruenceId id);
/// Smallest prime the congruence is stated for.
std::uint64_t min_admissible_p(CongruenceId id);

struct CongruenceReport {
    CongruenceId id{};
    std::uint64_t p = 0;
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
    enum class Status { Pass, Fail, Inapplicable } status = Status::Fail;
    std::string note;

    std::string status_str() const;
    std::string to_json() const;
};

/// One congruence instance at one prime. Throws std::invalid_argument when p
/// is below the congruence's stated range or not prime.
CongruenceReport check_congruence(CongruenceId id, std::uint64_t p);

/// All admissible primes in [p_min, p_max], ascending. Deterministic output
/// independent of the worker count.
std::vector<CongruenceReport> sweep(CongruenceId id, std::uint64_t p_min,
                                    std::uint64_t p_max, int jobs = 1);

} // namespace constforge::cong
