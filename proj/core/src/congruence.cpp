#include "constforge/congruence.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace constforge::cong {

namespace {

constexpr std::uint64_t kSieveBound = 1000000;

const std::vector<bool>& sieve() {
    static const std::vector<bool> composite = [] {
        std::vector<bool> comp(kSieveBound + 1, false);
        comp[0] = comp[1] = true;
        for (std::uint64_t i = 2; i * i <= kSieveBound; ++i) {
            if (comp[i]) continue;
            for (std::uint64_t j = i * i; j <= kSieveBound; j += i) comp[j] = true;
        }
        return comp;
    }();
    return composite;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_or_throw(std::uint64_t a, std::uint64_t m, const char* what) {
    auto inv = mod_inv(a, m);
    if (!inv) throw std::logic_error(std::string("unexpected non-invertible ") + what);
    return *inv;
}

// (F_n, F_{n+1}) mod m by fast doubling
std::pair<std::uint64_t, std::uint64_t> fib_pair_mod(std::uint64_t n, std::uint64_t m) {
    if (n == 0) return {0, 1 % m};
    auto [a, b] = fib_pair_mod(n >> 1, m);
    std::uint64_t two_b = (2 * b) % m;
    std::uint64_t c = mulmod(a, (two_b + m - a) % m, m);
    std::uint64_t d = (mulmod(a, a, m) + mulmod(b, b, m)) % m;
    if (n & 1) return {d, (c + d) % m};
    return {c, d};
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n > kSieveBound)
        throw std::invalid_argument("primality sieve bounded at 10^6");
    return n >= 2 && !sieve()[n];
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi > kSieveBound) throw std::invalid_argument("prime range exceeds sieve bound");
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n)
        if (!sieve()[n]) out.push_back(n);
    return out;
}

ModCtx::ModCtx(std::uint64_t p, int e) : p_(p), e_(e) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("ModCtx: p must be an odd prime");
    if (e != 1 && e != 2 && e != 3 && e != 5)
        throw std::invalid_argument("ModCtx: exponent must be in {1,2,3,5}");
    pe_ = 1;
    for (int i = 0; i < e; ++i) {
        if (pe_ > (std::uint64_t(1) << 62) / p)
            throw std::invalid_argument("ModCtx: p^e too large for 64-bit arithmetic");
        pe_ *= p;
    }
}

std::uint64_t ModCtx::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    if (s >= pe_) s -= pe_;
    return s;
}

std::uint64_t ModCtx::sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + pe_ - b;
}

std::uint64_t ModCtx::mul(std::uint64_t a, std::uint64_t b) const {
    return mulmod(a, b, pe_);
}

std::uint64_t ModCtx::pow(std::uint64_t base, std::uint64_t exp) const {
    return powmod(base, exp, pe_);
}

std::uint64_t ModCtx::reduce(const BigInt& z) const {
    BigInt r = z % BigInt(static_cast<unsigned long>(pe_));
    if (r < 0) r += BigInt(static_cast<unsigned long>(pe_));
    return r.get_ui();
}

std::optional<std::uint64_t> mod_inv(std::uint64_t a, std::uint64_t m) {
    // extended Euclid on signed 128-bit intermediates
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m),
                 new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

std::optional<std::uint64_t> rational_residue(const BigRational& q, const ModCtx& ctx) {
    // mpq_class keeps q fully reduced; a p in the denominator after that
    // reduction means the value has no residue mod p^e
    BigInt den = q.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(ctx.p())))
        return std::nullopt;
    std::uint64_t n = ctx.reduce(q.get_num());
    std::uint64_t d = ctx.reduce(den);
    auto dinv = mod_inv(d, ctx.modulus());
    if (!dinv) return std::nullopt;
    return ctx.mul(n, *dinv);
}

std::uint64_t harmonic1_mod(std::uint64_t p, int e) {
    ModCtx ctx(p, e);
    std::uint64_t sum = 0;
    for (std::uint64_t k = 1; k < p; ++k)
        sum = ctx.add(sum, inv_or_throw(k, ctx.modulus(), "harmonic term"));
    return sum;
}

std::uint64_t wolstenholme_quotient(std::uint64_t p) {
    if (p <= 3) throw std::invalid_argument("wolstenholme_quotient: p > 3 required");
    std::uint64_t h = harmonic1_mod(p, 5);
    std::uint64_t p2 = p * p;
    if (h % p2 != 0)
        throw WolstenholmeViolation("H_{p-1} not divisible by p^2 at p = " +
                                    std::to_string(p));
    std::uint64_t p3 = p2 * p;
    return (h / p2) % p3;
}

std::uint64_t bernoulli_mod(std::uint64_t p) {
    if (p < 5) throw std::invalid_argument("bernoulli_mod: p >= 5 required");
    if (p == 5) return 1; // B_0
    std::uint64_t p2 = p * p;
    std::uint64_t s = 0;
    for (std::uint64_t x = 1; x < p; ++x) {
        s += powmod(x, p - 5, p2);
        if (s >= p2) s -= p2;
    }
    if (s % p != 0)
        throw std::logic_error("power sum not divisible by p in bernoulli_mod");
    return (s / p) % p;
}

std::uint64_t euler_mod(std::uint64_t p) {
    if (p < 5) throw std::invalid_argument("euler_mod: p >= 5 required");
    std::uint64_t n_max = p - 3;
    // inverse table 1..n_max+1 via the standard recurrence
    std::vector<std::uint64_t> inv(n_max + 2);
    inv[1] = 1;
    for (std::uint64_t i = 2; i <= n_max + 1; ++i)
        inv[i] = mulmod(p - p / i, inv[p % i], p);

    std::vector<std::uint64_t> eu(n_max + 1, 0);
    eu[0] = 1;
    for (std::uint64_t n = 2; n <= n_max; n += 2) {
        // E_n = - sum_{k even, 2<=k<=n} C(n,k) E_{n-k}, binomial walked
        // incrementally over k
        std::uint64_t binom = 1;
        std::uint64_t acc = 0;
        for (std::uint64_t k = 1; k <= n; ++k) {
            binom = mulmod(binom, mulmod(n - k + 1, inv[k], p), p);
            if (k % 2 == 0) acc = (acc + mulmod(binom, eu[n - k], p)) % p;
        }
        eu[n] = (p - acc) % p;
    }
    return eu[n_max];
}

std::uint64_t fermat_quotient2(std::uint64_t p) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("fermat_quotient2: odd prime required");
    std::uint64_t p2 = p * p;
    std::uint64_t t = powmod(2, p - 1, p2);
    if (t % p != 1) throw std::logic_error("Fermat's little theorem violated");
    return ((t - 1) / p) % p;
}

int legendre5(std::uint64_t p) {
    if (p == 5) throw std::invalid_argument("legendre5: p must differ from 5");
    std::uint64_t r = p % 5;
    return (r == 1 || r == 4) ? 1 : -1;
}

std::uint64_t fib_quotient(std::uint64_t p) {
    if (p <= 5) throw std::invalid_argument("fib_quotient: p > 5 required");
    int eps = legendre5(p);
    std::uint64_t n = eps > 0 ? p - 1 : p + 1;
    std::uint64_t p2 = p * p;
    std::uint64_t f = fib_pair_mod(n, p2).first;
    if (f % p != 0)
        throw DivisibilityViolation("p does not divide F_{p-(p/5)} at p = " +
                                    std::to_string(p));
    return (f / p) % p;
}

std::optional<CongruenceId> parse_congruence_id(const std::string& name) {
    if (name == "C1a") return CongruenceId::C1a;
    if (name == "C1b") return CongruenceId::C1b;
    if (name == "C2a") return CongruenceId::C2a;
    if (name == "C2b") return CongruenceId::C2b;
    if (name == "CS6") return CongruenceId::CS6;
    return std::nullopt;
}

std::string congruence_name(CongruenceId id) {
    switch (id) {
        case CongruenceId::C1a: return "C1a";
        case CongruenceId::C1b: return "C1b";
        case CongruenceId::C2a: return "C2a";
        case CongruenceId::C2b: return "C2b";
        case CongruenceId::CS6: return "CS6";
    }
    return "?";
}

std::uint64_t min_admissible_p(CongruenceId id) {
    return id == CongruenceId::C2b ? 7 : 5;
}

std::string CongruenceReport::status_str() const {
    switch (status) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inapplicable: return "inapplicable";
    }
    return "?";
}

std::string CongruenceReport::to_json() const {
    std::string s = "{\"id\":\"" + congruence_name(id) + "\"";
    s += ",\"p\":" + std::to_string(p);
    s += ",\"lhs\":" + std::to_string(lhs);
    s += ",\"rhs\":" + std::to_string(rhs);
    s += ",\"status\":\"" + status_str() + "\"";
    s += "}";
    return s;
}

namespace {

/// One O(p) pass over k = 1..p-1 maintaining C(2k,k) mod p^e by the exact
/// update C(2k,k) = C(2k-2,k-1) * 2(2k-1) / k (the multiplier 2k-1 may hit p;
/// multiplication by p is fine, only divisions need coprimality), the power
/// factor, and the running harmonic weight.
struct LhsPass {
    const ModCtx& ctx;
    // weight selector: plain H2_k or the p-regular part of Hbar_k
    bool hbar;
    // power factor per step: multiply by arg (already reduced)
    std::uint64_t arg;
    // extra per-term divisor k (for the C(2k,k)/k sums)
    bool div_k;

    std::uint64_t run() const {
        std::uint64_t m = ctx.modulus();
        std::uint64_t p = ctx.p();
        std::uint64_t binom = 1, power = 1, weight = 0, sum = 0;
        for (std::uint64_t k = 1; k < p; ++k) {
            std::uint64_t factor = mulmod(2 * (2 * k - 1) % m, inv_or_throw(k, m, "k"), m);
            binom = mulmod(binom, factor, m);
            power = mulmod(power, arg, m);
            if (hbar) {
                std::uint64_t odd = 2 * k - 1;
                if (odd % p != 0) {
                    // p-regular part: the 1/p^2 summand at 2k-1 = p is omitted
                    // (its companions C(2k,k) vanish mod p for those k)
                    std::uint64_t oi = inv_or_throw(odd % m, m, "odd harmonic term");
                    weight = ctx.add(weight, mulmod(oi, oi, m));
                }
            } else {
                std::uint64_t ki = inv_or_throw(k % m, m, "harmonic term");
                weight = ctx.add(weight, mulmod(ki, ki, m));
            }
            std::uint64_t term = mulmod(binom, power, m);
            if (div_k) term = mulmod(term, inv_or_throw(k, m, "k divisor"), m);
            term = mulmod(term, weight, m);
            sum = ctx.add(sum, term);
        }
        return sum;
    }
};

CongruenceReport make_report(CongruenceId id, std::uint64_t p, std::uint64_t lhs,
                             std::optional<std::uint64_t> rhs, std::string note = "") {
    CongruenceReport rep;
    rep.id = id;
    rep.p = p;
    rep.lhs = lhs;
    rep.note = std::move(note);
    if (!rhs) {
        rep.status = CongruenceReport::Status::Inapplicable;
        return rep;
    }
    rep.rhs = *rhs;
    rep.status = lhs == *rhs ? CongruenceReport::Status::Pass
                             : CongruenceReport::Status::Fail;
    return rep;
}

} // namespace

CongruenceReport check_congruence(CongruenceId id, std::uint64_t p) {
    if (!is_prime(p) || p < min_admissible_p(id))
        throw std::invalid_argument(congruence_name(id) + ": prime p >= " +
                                    std::to_string(min_admissible_p(id)) + " required");
    switch (id) {
        case CongruenceId::C1a: {
            // sum C(2k,k)/k H2_k = 2 H_{p-1}/(3 p^2) + (76/135) p^2 B_{p-5}  (mod p^3)
            ModCtx ctx(p, 3);
            std::uint64_t lhs = LhsPass{ctx, false, 1, true}.run();
            std::uint64_t wq = wolstenholme_quotient(p);
            auto two_thirds = rational_residue(make_rational(2, 3), ctx);
            BigRational coeff = make_rational(76, 135) *
                                BigRational(BigInt(static_cast<unsigned long>(p)) *
                                            static_cast<unsigned long>(p));
            auto coeff_res = rational_residue(coeff, ctx);
            if (!two_thirds || !coeff_res)
                return make_report(id, p, lhs, std::nullopt,
                                   "right-hand side has p in a reduced denominator");
            std::uint64_t rhs = ctx.add(ctx.mul(*two_thirds, wq),
                                        ctx.mul(*coeff_res, bernoulli_mod(p) % ctx.modulus()));
            return make_report(id, p, lhs, rhs);
        }
        case CongruenceId::C1b: {
            // sum C(2k,k)/8^k Hbar_k = (-2/p) E_{p-3}/4  (mod p)
            ModCtx ctx(p, 1);
            std::uint64_t inv8 = inv_or_throw(8 % p, p, "8");
            std::uint64_t lhs = LhsPass{ctx, true, inv8, false}.run();
            std::uint64_t l = powmod(p - 2, (p - 1) / 2, p); // (-2)^((p-1)/2) = ±1
            std::uint64_t e = euler_mod(p);
            std::uint64_t rhs = mulmod(e, inv_or_throw(4 % p, p, "4"), p);
            if (l == p - 1) rhs = (p - rhs) % p;
            return make_report(id, p, lhs, rhs,
                               "Hbar weight taken p-regularly (1/p^2 summand omitted)");
        }
        case CongruenceId::C2a: {
            // sum (-2)^k C(2k,k) H2_k = (2/3) q_p(2)^2  (mod p)
            ModCtx ctx(p, 1);
            std::uint64_t lhs = LhsPass{ctx, false, p - 2, false}.run();
            std::uint64_t q = fermat_quotient2(p);
            auto two_thirds = rational_residue(make_rational(2, 3), ctx);
            if (!two_thirds) return make_report(id, p, lhs, std::nullopt);
            std::uint64_t rhs = ctx.mul(*two_thirds, mulmod(q, q, p));
            return make_report(id, p, lhs, rhs);
        }
        case CongruenceId::C2b: {
            // sum (-1)^k C(2k,k) H2_k = (5/2)(p/5) (F_{p-(p/5)}/p)^2  (mod p)
            ModCtx ctx(p, 1);
            std::uint64_t lhs = LhsPass{ctx, false, p - 1, false}.run();
            std::uint64_t fq = fib_quotient(p);
            auto five_halves = rational_residue(make_rational(5, 2), ctx);
            if (!five_halves) return make_report(id, p, lhs, std::nullopt);
            std::uint64_t rhs = ctx.mul(*five_halves, mulmod(fq, fq, p));
            if (legendre5(p) < 0) rhs = (p - rhs) % p;
            return make_report(id, p, lhs, rhs);
        }
        case CongruenceId::CS6: {
            // sum C(2k,k)/2^k H2_k = -E_{p-3}  (mod p)
            ModCtx ctx(p, 1);
            std::uint64_t inv2 = inv_or_throw(2 % p, p, "2");
            std::uint64_t lhs = LhsPass{ctx, false, inv2, false}.run();
            std::uint64_t rhs = (p - euler_mod(p)) % p;
            return make_report(id, p, lhs, rhs);
        }
    }
    throw std::logic_error("unknown congruence id");
}

std::vector<CongruenceReport> sweep(CongruenceId id, std::uint64_t p_min,
                                    std::uint64_t p_max, int jobs) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p : primes_in(std::max(p_min, min_admissible_p(id)), p_max))
        ps.push_back(p);
    std::vector<CongruenceReport> reports(ps.size());
    jobs = std::clamp(jobs, 1, 64);
    if (jobs == 1) {
        for (std::size_t i = 0; i < ps.size(); ++i)
            reports[i] = check_congruence(id, ps[i]);
        return reports;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ps.size()) return;
            reports[i] = check_congruence(id, ps[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return reports;
}

} // namespace constforge::cong
