#pragma once

#include "constforge/rational.hpp"

#include <cstdint>
#include <vector>

namespace constforge::seq {

/// Append-only cache of exact sequence prefixes. Entries are pure functions
/// of the index: extending a cache never changes values already handed out.
/// The free functions below use a thread-local instance, so concurrent
/// callers never contend or observe partial updates.
class SequenceCache {
public:
    /// H^{(2)}_n = sum_{0<j<=n} 1/j^2
    const BigRational& harmonic2(std::size_t n);
    /// Hbar^{(2)}_n = sum_{0<j<=n} 1/(2j-1)^2
    const BigRational& hbar2(std::size_t n);
    /// H_n = sum_{0<j<=n} 1/j
    const BigRational& harmonic1(std::size_t n);
    /// C(2n, n), maintained by the ratio C(2n+2,n+1) = C(2n,n) * 2(2n+1)/(n+1)
    const BigInt& central_binom(std::size_t n);
    /// Fibonacci / Lucas prefixes from the defining recurrences
    const BigInt& fib_rec(std::size_t n);
    const BigInt& lucas_rec(std::size_t n);
    /// u_k = 5^{k/2} F_k (k even), 5^{(k-1)/2} L_k (k odd)
    const BigInt& weight_u(std::size_t k);
    /// v_k = 5^{k/2} L_k (k even), 5^{(k+1)/2} F_k (k odd)
    const BigInt& weight_v(std::size_t k);

private:
    // cumulative sums, so extending by one index is O(1) rational work
    std::vector<BigRational> h2_{BigRational(0)};
    std::vector<BigRational> hbar2_{BigRational(0)};
    std::vector<BigRational> h1_{BigRational(0)};
    std::vector<BigInt> cb_{BigInt(1)};
    std::vector<BigInt> fib_{BigInt(0), BigInt(1)};
    std::vector<BigInt> lucas_{BigInt(2), BigInt(1)};
    std::vector<BigInt> u_{BigInt(0), BigInt(1)};
    std::vector<BigInt> v_{BigInt(2), BigInt(5)};
};

SequenceCache& thread_cache();

// Pure accessors over the thread-local cache.
BigRational harmonic2(std::size_t n);
BigRational hbar2(std::size_t n);
BigRational harmonic1(std::size_t n);
BigInt central_binom(std::size_t k);
BigInt weight_u(std::size_t k);
BigInt weight_v(std::size_t k);

/// F_n and L_n by fast doubling (the cache recurrences serve as the oracle).
BigInt fib(std::size_t n);
BigInt lucas(std::size_t n);

/// Fast doubling in Z/m, m >= 2.
BigInt fib_mod(std::size_t n, const BigInt& modulus);
BigInt lucas_mod(std::size_t n, const BigInt& modulus);

/// B_0..B_m via sum_{j<=m} C(m+1,j) B_j = 0, B_0 = 1.
std::vector<BigRational> bernoulli_upto(std::size_t m);

/// E_0..E_m via E_0 = 1 and sum_{k even, k<=n} C(n,k) E_{n-k} = 0 (n >= 1).
std::vector<BigInt> euler_upto(std::size_t m);

} // namespace constforge::seq
