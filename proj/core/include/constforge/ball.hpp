#pragma once

#include "constforge/quadext.hpp"
#include "constforge/rational.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace constforge {

/// Raised when an operation's input ball straddles a singularity or leaves
/// the operation's domain (divisor containing 0, sqrt of a negative, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace real {

/// Center-plus-radius enclosure of a real number. The represented value is
/// guaranteed to lie in [center - radius, center + radius]; every operation
/// returns a ball containing the exact image of its inputs. The center is an
/// MPFR float at the precision requested per operation; the radius is a
/// low-precision upper bound, always rounded away from zero.
class Ball {
public:
    static constexpr mpfr_prec_t kRadiusPrec = 32;

    Ball();
    Ball(const Ball& o);
    Ball(Ball&& o) noexcept;
    Ball& operator=(const Ball& o);
    Ball& operator=(Ball&& o) noexcept;
    ~Ball();

    static Ball zero();
    static Ball from_long(long v, mpfr_prec_t prec);
    static Ball from_int(const BigInt& z, mpfr_prec_t prec);
    static Ball from_rat(const BigRational& q, mpfr_prec_t prec);

    mpfr_srcptr center() const { return c_; }
    mpfr_srcptr radius() const { return r_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(c_); }
    bool exact() const { return mpfr_zero_p(r_); }

    static Ball add(const Ball& a, const Ball& b, mpfr_prec_t prec);
    static Ball sub(const Ball& a, const Ball& b, mpfr_prec_t prec);
    static Ball mul(const Ball& a, const Ball& b, mpfr_prec_t prec);
    static Ball div(const Ball& a, const Ball& b, mpfr_prec_t prec);
    static Ball sqrt(const Ball& a, mpfr_prec_t prec);
    /// Square with the one-sided enclosure [0, (|c|+r)^2] for balls that
    /// straddle zero (a plain product ball would dip below zero).
    static Ball sqr(const Ball& a, mpfr_prec_t prec);
    static Ball neg(const Ball& a);
    static Ball abs(const Ball& a);

    /// Multiply by an exact rational (the workhorse of series loops).
    static Ball mul_rat(const Ball& a, const BigRational& q, mpfr_prec_t prec);
    static Ball mul_int(const Ball& a, const BigInt& z, mpfr_prec_t prec);
    /// Exact scaling by 2^e (error-free).
    static Ball mul_2exp(const Ball& a, long e);

    static Ball pow_ui(const Ball& a, unsigned long e, mpfr_prec_t prec);

    /// Re-rounds the center to `prec` bits, folding the rounding error into
    /// the radius. Never loses containment.
    Ball round_to(mpfr_prec_t prec) const;

    /// Inflate the radius by an extra bound (upper-rounded).
    void add_error(mpfr_srcptr extra);
    void add_error_2exp(long e); // adds 2^e

    bool contains_zero() const;
    bool is_positive() const; // entire ball > 0
    bool is_negative() const;

    /// Exact containment tests (the ball endpoints are rationals).
    bool contains_rational(const BigRational& q) const;
    bool contains_ball(const Ball& inner) const;
    bool overlaps(const Ball& other) const;

    /// Upper bound of |value| (center magnitude plus radius), rounded up.
    /// Returned at radius precision. Exponent of that bound via mag_exp.
    void abs_upper(mpfr_ptr out) const;
    /// floor(log2(upper bound of |value|)), or very small when zero.
    long mag_exp() const;

    /// |a.center - b.center| + a.radius + b.radius, rounded up.
    static void center_gap(const Ball& a, const Ball& b, mpfr_ptr out);

    /// Number of certified significant decimal digits:
    /// max n such that 2*radius <= |center| * 10^{-n} (0 when unknown sign).
    long certified_decimals() const;

    /// "d.dddd...e±x (±r.re±y)" with only certified digits printed.
    /// max_digits caps the output length; pass 0 for no cap.
    std::string decimal(std::size_t max_digits = 0) const;

    /// Center and radius as exact rationals (binary floats are rational).
    BigRational center_rat() const;
    BigRational radius_rat() const;

private:
    explicit Ball(mpfr_prec_t prec);
    void bump_ulp(int ternary); // add one ulp of c_ to r_ if inexact
    mpfr_t c_;
    mpfr_t r_;
};

/// Evaluates (a + b*sqrt(d))/c as a ball at the given precision.
Ball eval_quadext(const QuadExt& x, mpfr_prec_t prec);

} // namespace real
} // namespace constforge
