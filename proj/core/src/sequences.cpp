#include "constforge/sequences.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace constforge {

std::optional<BigRational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            BigInt n(text);
            return BigRational(n);
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) return std::nullopt;
        BigInt n(num), d(den);
        if (d == 0) return std::nullopt;
        BigRational q(n, d);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

} // namespace constforge

namespace constforge::seq {

namespace {

BigInt pow5(std::size_t e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 5, static_cast<unsigned long>(e));
    return r;
}

// (F_n, F_{n+1}) by fast doubling:
//   F_{2n}   = F_n (2 F_{n+1} - F_n)
//   F_{2n+1} = F_n^2 + F_{n+1}^2
std::pair<BigInt, BigInt> fib_pair(std::size_t n) {
    if (n == 0) return {BigInt(0), BigInt(1)};
    auto [a, b] = fib_pair(n >> 1);
    BigInt c = a * (2 * b - a);
    BigInt d = a * a + b * b;
    if (n & 1) return {d, c + d};
    return {c, d};
}

std::pair<BigInt, BigInt> fib_pair_mod(std::size_t n, const BigInt& m) {
    if (n == 0) return {BigInt(0), BigInt(1 % m)};
    auto [a, b] = fib_pair_mod(n >> 1, m);
    BigInt c = (a * (2 * b - a)) % m;
    if (c < 0) c += m;
    BigInt d = (a * a + b * b) % m;
    if (n & 1) {
        BigInt e = (c + d) % m;
        return {d, e};
    }
    return {c, d};
}

} // namespace

const BigRational& SequenceCache::harmonic2(std::size_t n) {
    while (h2_.size() <= n) {
        std::size_t k = h2_.size();
        h2_.push_back(h2_.back() + BigRational(1, static_cast<unsigned long>(k * k)));
    }
    return h2_[n];
}

const BigRational& SequenceCache::hbar2(std::size_t n) {
    while (hbar2_.size() <= n) {
        std::size_t k = hbar2_.size();
        unsigned long odd = static_cast<unsigned long>(2 * k - 1);
        hbar2_.push_back(hbar2_.back() + BigRational(1, odd * odd));
    }
    return hbar2_[n];
}

const BigRational& SequenceCache::harmonic1(std::size_t n) {
    while (h1_.size() <= n) {
        std::size_t k = h1_.size();
        h1_.push_back(h1_.back() + BigRational(1, static_cast<unsigned long>(k)));
    }
    return h1_[n];
}

const BigInt& SequenceCache::central_binom(std::size_t n) {
    while (cb_.size() <= n) {
        std::size_t k = cb_.size() - 1; // have C(2k,k), want C(2k+2,k+1)
        BigInt next = cb_.back() * 2 * BigInt(2 * k + 1);
        mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(),
                        static_cast<unsigned long>(k + 1));
        cb_.push_back(std::move(next));
    }
    return cb_[n];
}

const BigInt& SequenceCache::fib_rec(std::size_t n) {
    while (fib_.size() <= n) {
        std::size_t s = fib_.size();
        fib_.push_back(fib_[s - 1] + fib_[s - 2]);
    }
    return fib_[n];
}

const BigInt& SequenceCache::lucas_rec(std::size_t n) {
    while (lucas_.size() <= n) {
        std::size_t s = lucas_.size();
        lucas_.push_back(lucas_[s - 1] + lucas_[s - 2]);
    }
    return lucas_[n];
}

const BigInt& SequenceCache::weight_u(std::size_t k) {
    while (u_.size() <= k) {
        std::size_t s = u_.size();
        // u and v both satisfy X_{k+1} = 5 X_k - 5 X_{k-1}
        u_.push_back(5 * (u_[s - 1] - u_[s - 2]));
    }
    return u_[k];
}

const BigInt& SequenceCache::weight_v(std::size_t k) {
    while (v_.size() <= k) {
        std::size_t s = v_.size();
        v_.push_back(5 * (v_[s - 1] - v_[s - 2]));
    }
    return v_[k];
}

SequenceCache& thread_cache() {
    thread_local SequenceCache cache;
    return cache;
}

BigRational harmonic2(std::size_t n) { return thread_cache().harmonic2(n); }
BigRational hbar2(std::size_t n) { return thread_cache().hbar2(n); }
BigRational harmonic1(std::size_t n) { return thread_cache().harmonic1(n); }
BigInt central_binom(std::size_t k) { return thread_cache().central_binom(k); }

BigInt fib(std::size_t n) { return fib_pair(n).first; }

BigInt lucas(std::size_t n) {
    // L_n = 2 F_{n+1} - F_n
    auto [f, f1] = fib_pair(n);
    return 2 * f1 - f;
}

BigInt fib_mod(std::size_t n, const BigInt& modulus) {
    if (modulus < 2) throw std::domain_error("fib_mod: modulus must be >= 2");
    return fib_pair_mod(n, modulus).first;
}

BigInt lucas_mod(std::size_t n, const BigInt& modulus) {
    if (modulus < 2) throw std::domain_error("lucas_mod: modulus must be >= 2");
    auto [f, f1] = fib_pair_mod(n, modulus);
    BigInt l = (2 * f1 - f) % modulus;
    if (l < 0) l += modulus;
    return l;
}

BigInt weight_u(std::size_t k) {
    // direct definition; the cache recurrence cross-checks it in tests
    if (k % 2 == 0) return pow5(k / 2) * fib(k);
    return pow5((k - 1) / 2) * lucas(k);
}

BigInt weight_v(std::size_t k) {
    if (k % 2 == 0) return pow5(k / 2) * lucas(k);
    return pow5((k + 1) / 2) * fib(k);
}

std::vector<BigRational> bernoulli_upto(std::size_t m) {
    std::vector<BigRational> b;
    b.reserve(m + 1);
    b.emplace_back(1);
    for (std::size_t n = 1; n <= m; ++n) {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0  =>  solve for B_n
        BigRational acc(0);
        BigInt binom;
        for (std::size_t j = 0; j < n; ++j) {
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n + 1),
                         static_cast<unsigned long>(j));
            acc += BigRational(binom) * b[j];
        }
        b.push_back(-acc / BigRational(static_cast<unsigned long>(n + 1)));
    }
    return b;
}

std::vector<BigInt> euler_upto(std::size_t m) {
    std::vector<BigInt> e;
    e.reserve(m + 1);
    e.emplace_back(1);
    for (std::size_t n = 1; n <= m; ++n) {
        if (n % 2 == 1) {
            e.emplace_back(0);
            continue;
        }
        // sum_{k even, 0<=k<=n} C(n,k) E_{n-k} = 0
        BigInt acc(0);
        BigInt binom;
        for (std::size_t k = 2; k <= n; k += 2) {
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n),
                         static_cast<unsigned long>(k));
            acc += binom * e[n - k];
        }
        e.push_back(-acc);
    }
    return e;
}

} // namespace constforge::seq
