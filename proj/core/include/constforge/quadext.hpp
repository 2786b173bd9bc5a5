#pragma once

#include "constforge/rational.hpp"

#include <optional>
#include <string>

namespace constforge {

/// Exact quadratic-surd rational (a + b*sqrt(d))/c with d in {0, 2, 3, 5}.
/// Canonical form: c > 0, gcd(a, b, c) = 1, and d = 0 whenever b = 0.
/// Carries series arguments like the squared golden ratio (3+sqrt(5))/2
/// exactly; arithmetic within one Q(sqrt(d)) is closed and exact.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), c_(1), d_(0) {}
    QuadExt(const BigInt& a, const BigInt& b, const BigInt& c, int d);
    explicit QuadExt(const BigRational& q);
    explicit QuadExt(long n) : QuadExt(BigRational(n)) {}

    static QuadExt sqrt_of(int d); // sqrt(d) itself

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    int d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    /// The rational value; requires is_rational().
    BigRational rational() const;

    QuadExt operator-() const;
    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator*(const QuadExt& o) const;
    QuadExt operator/(const QuadExt& o) const;
    QuadExt operator*(const BigRational& q) const;
    bool operator==(const QuadExt& o) const;

    QuadExt squared() const { return *this * *this; }
    QuadExt reciprocal() const;
    QuadExt pow(unsigned long e) const;

    /// Exact sign of the represented real: -1, 0, +1.
    int sign() const;
    /// Exact comparison with a rational: sign of (*this - q).
    int compare(const BigRational& q) const;
    QuadExt abs() const { return sign() < 0 ? -*this : *this; }

    /// Bit size of the largest integer component (growth monitor).
    std::size_t coeff_bits() const;

    /// Loose double approximation (not certified; for sizing estimates only).
    double approx() const;

    std::string str() const;

    /// Accepts "a", "a/c", "sqrt(d)", "(a+b*sqrt(d))/c", "(a-b*sqrt(d))/c",
    /// with optional whitespace. Returns nullopt on malformed input.
    static std::optional<QuadExt> parse(const std::string& text);

private:
    void canonicalize();
    static void require_same_field(const QuadExt& x, const QuadExt& y);

    BigInt a_, b_, c_;
    int d_;
};

} // namespace constforge
