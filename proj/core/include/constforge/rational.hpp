#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace constforge {

/// Exact arbitrary-size integer and rational carriers. mpq_class keeps every
/// value canonical (lowest terms, positive denominator), which is exactly the
/// invariant the rest of the engine relies on.
using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigRational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "a" or "a/b" with optional sign. Returns nullopt on malformed input.
std::optional<BigRational> parse_rational(const std::string& text);

inline std::string to_string(const BigRational& q) { return q.get_str(); }

} // namespace constforge
