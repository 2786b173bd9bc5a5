#include "constforge/ball.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace constforge::real {

namespace {

// scratch at radius precision, upward rounding throughout
struct RadScratch {
    mpfr_t t;
    RadScratch() { mpfr_init2(t, Ball::kRadiusPrec); }
    ~RadScratch() { mpfr_clear(t); }
};

BigRational mpfr_to_rational(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return BigRational(0);
    BigInt mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    BigRational q(mant);
    if (e >= 0) {
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= BigRational(scale);
    } else {
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= BigRational(scale);
    }
    return q;
}

} // namespace

Ball::Ball() : Ball(kRadiusPrec) {}

Ball::Ball(mpfr_prec_t prec) {
    mpfr_init2(c_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
    mpfr_init2(r_, kRadiusPrec);
    mpfr_set_zero(c_, 1);
    mpfr_set_zero(r_, 1);
}

Ball::Ball(const Ball& o) {
    mpfr_init2(c_, mpfr_get_prec(o.c_));
    mpfr_init2(r_, kRadiusPrec);
    mpfr_set(c_, o.c_, MPFR_RNDN);
    mpfr_set(r_, o.r_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept {
    mpfr_init2(c_, MPFR_PREC_MIN);
    mpfr_init2(r_, kRadiusPrec);
    mpfr_swap(c_, o.c_);
    mpfr_swap(r_, o.r_);
}

Ball& Ball::operator=(const Ball& o) {
    if (this != &o) {
        mpfr_set_prec(c_, mpfr_get_prec(o.c_));
        mpfr_set(c_, o.c_, MPFR_RNDN);
        mpfr_set(r_, o.r_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
    if (this != &o) {
        mpfr_swap(c_, o.c_);
        mpfr_swap(r_, o.r_);
    }
    return *this;
}

Ball::~Ball() {
    mpfr_clear(c_);
    mpfr_clear(r_);
}

void Ball::bump_ulp(int ternary) {
    if (ternary == 0 || mpfr_zero_p(c_)) return;
    // round-to-nearest error is at most half an ulp of the result
    long e = mpfr_get_exp(c_) - mpfr_get_prec(c_) - 1;
    add_error_2exp(e);
}

void Ball::add_error_2exp(long e) {
    RadScratch s;
    mpfr_set_ui_2exp(s.t, 1, e, MPFR_RNDU);
    mpfr_add(r_, r_, s.t, MPFR_RNDU);
}

void Ball::add_error(mpfr_srcptr extra) {
    mpfr_add(r_, r_, extra, MPFR_RNDU);
}

Ball Ball::zero() { return Ball(); }

Ball Ball::from_long(long v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_si(b.c_, v, MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

Ball Ball::from_int(const BigInt& z, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_z(b.c_, z.get_mpz_t(), MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

Ball Ball::from_rat(const BigRational& q, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_q(b.c_, q.get_mpq_t(), MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

Ball Ball::add(const Ball& a, const Ball& b, mpfr_prec_t prec) {
    Ball out(prec);
    int t = mpfr_add(out.c_, a.c_, b.c_, MPFR_RNDN);
    mpfr_add(out.r_, a.r_, b.r_, MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

Ball Ball::sub(const Ball& a, const Ball& b, mpfr_prec_t prec) {
    Ball out(prec);
    int t = mpfr_sub(out.c_, a.c_, b.c_, MPFR_RNDN);
    mpfr_add(out.r_, a.r_, b.r_, MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

Ball Ball::mul(const Ball& a, const Ball& b, mpfr_prec_t prec) {
    Ball out(prec);
    int t = mpfr_mul(out.c_, a.c_, b.c_, MPFR_RNDN);
    // |a b - ac bc| <= |ac| rb + |bc| ra + ra rb
    RadScratch am, bm, acc;
    mpfr_abs(am.t, a.c_, MPFR_RNDU);
    mpfr_abs(bm.t, b.c_, MPFR_RNDU);
    mpfr_mul(acc.t, am.t, b.r_, MPFR_RNDU);
    mpfr_add(out.r_, out.r_, acc.t, MPFR_RNDU);
    mpfr_mul(acc.t, bm.t, a.r_, MPFR_RNDU);
    mpfr_add(out.r_, out.r_, acc.t, MPFR_RNDU);
    mpfr_mul(acc.t, a.r_, b.r_, MPFR_RNDU);
    mpfr_add(out.r_, out.r_, acc.t, MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

Ball Ball::div(const Ball& a, const Ball& b, mpfr_prec_t prec) {
    // need |bc| - rb > 0, i.e. the divisor ball excludes 0
    RadScratch blo;
    mpfr_abs(blo.t, b.c_, MPFR_RNDD);
    mpfr_sub(blo.t, blo.t, b.r_, MPFR_RNDD);
    if (!(mpfr_sgn(blo.t) > 0))
        throw DomainError("ball division: divisor ball contains zero");

    Ball out(prec);
    int t = mpfr_div(out.c_, a.c_, b.c_, MPFR_RNDN);
    // |a/b - ac/bc| <= (ra + |ac/bc| rb) / (|bc| - rb)
    RadScratch q, num;
    mpfr_abs(q.t, out.c_, MPFR_RNDU);
    // one ulp cover for |ac/bc| vs the rounded quotient
    if (!mpfr_zero_p(out.c_)) {
        RadScratch u;
        mpfr_set_ui_2exp(u.t, 1, mpfr_get_exp(out.c_) - prec, MPFR_RNDU);
        mpfr_add(q.t, q.t, u.t, MPFR_RNDU);
    }
    mpfr_mul(num.t, q.t, b.r_, MPFR_RNDU);
    mpfr_add(num.t, num.t, a.r_, MPFR_RNDU);
    mpfr_div(num.t, num.t, blo.t, MPFR_RNDU);
    mpfr_add(out.r_, out.r_, num.t, MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

Ball Ball::sqrt(const Ball& a, mpfr_prec_t prec) {
    if (mpfr_zero_p(a.c_) && mpfr_zero_p(a.r_)) return Ball(prec);
    RadScratch lo;
    mpfr_sub(lo.t, a.c_, a.r_, MPFR_RNDD);
    if (mpfr_sgn(lo.t) < 0) {
        // tolerate an exact zero center with zero radius only (handled above)
        throw DomainError("ball sqrt: ball extends below zero");
    }
    Ball out(prec);
    int t = mpfr_sqrt(out.c_, a.c_, MPFR_RNDN);
    if (!mpfr_zero_p(a.r_)) {
        // sqrt is concave increasing: deviation <= r / (sqrt(c) + sqrt(c - r))
        RadScratch slo, sc, den;
        mpfr_sqrt(slo.t, lo.t, MPFR_RNDD);
        mpfr_set(sc.t, out.c_, MPFR_RNDD); // low-prec copy of sqrt(c)
        mpfr_add(den.t, sc.t, slo.t, MPFR_RNDD);
        if (mpfr_sgn(den.t) > 0) {
            RadScratch dev;
            mpfr_div(dev.t, a.r_, den.t, MPFR_RNDU);
            mpfr_add(out.r_, out.r_, dev.t, MPFR_RNDU);
        } else {
            // center and lower bound both ~0: enclose by sqrt(c + r)
            RadScratch hi;
            mpfr_add(hi.t, a.c_, a.r_, MPFR_RNDU);
            mpfr_sqrt(hi.t, hi.t, MPFR_RNDU);
            mpfr_add(out.r_, out.r_, hi.t, MPFR_RNDU);
        }
    }
    out.bump_ulp(t);
    return out;
}

Ball Ball::sqr(const Ball& a, mpfr_prec_t prec) {
    if (!a.contains_zero()) return mul(a, a, prec);
    // true range is [0, (|c|+r)^2]; re-center so the ball stays non-negative
    RadScratch hi;
    a.abs_upper(hi.t);
    mpfr_sqr(hi.t, hi.t, MPFR_RNDU);
    Ball out(prec);
    int t = mpfr_set(out.c_, hi.t, MPFR_RNDN);
    mpfr_mul_2si(out.c_, out.c_, -1, MPFR_RNDN); // exact halving
    mpfr_mul_2si(hi.t, hi.t, -1, MPFR_RNDU);
    mpfr_set(out.r_, hi.t, MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

Ball Ball::neg(const Ball& a) {
    Ball out = a;
    mpfr_neg(out.c_, out.c_, MPFR_RNDN); // exact
    return out;
}

Ball Ball::abs(const Ball& a) {
    Ball out = a;
    mpfr_abs(out.c_, out.c_, MPFR_RNDN); // exact
    return out;
}

Ball Ball::mul_rat(const Ball& a, const BigRational& q, mpfr_prec_t prec) {
    if (q == 0) return Ball(prec);
    Ball out(prec);
    int t;
    if (q.get_den() == 1) {
        t = mpfr_mul_z(out.c_, a.c_, q.get_num().get_mpz_t(), MPFR_RNDN);
    } else {
        t = mpfr_mul_q(out.c_, a.c_, q.get_mpq_t(), MPFR_RNDN);
    }
    // exact multiplier: radius scales by |q|
    RadScratch qm;
    mpfr_set_q(qm.t, q.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(qm.t, qm.t, MPFR_RNDU);
    mpfr_mul(out.r_, a.r_, qm.t, MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

Ball Ball::mul_int(const Ball& a, const BigInt& z, mpfr_prec_t prec) {
    if (z == 0) return Ball(prec);
    Ball out(prec);
    int t = mpfr_mul_z(out.c_, a.c_, z.get_mpz_t(), MPFR_RNDN);
    RadScratch zm;
    mpfr_set_z(zm.t, z.get_mpz_t(), MPFR_RNDU);
    mpfr_abs(zm.t, zm.t, MPFR_RNDU);
    mpfr_mul(out.r_, a.r_, zm.t, MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

Ball Ball::mul_2exp(const Ball& a, long e) {
    Ball out = a;
    mpfr_mul_2si(out.c_, out.c_, e, MPFR_RNDN); // exact
    mpfr_mul_2si(out.r_, out.r_, e, MPFR_RNDU); // exact
    return out;
}

Ball Ball::pow_ui(const Ball& a, unsigned long e, mpfr_prec_t prec) {
    Ball result = from_long(1, prec);
    Ball base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base, prec);
        e >>= 1;
        if (e > 0) base = mul(base, base, prec);
    }
    return result;
}

Ball Ball::round_to(mpfr_prec_t prec) const {
    Ball out(prec);
    int t = mpfr_set(out.c_, c_, MPFR_RNDN);
    mpfr_set(out.r_, r_, MPFR_RNDU);
    out.bump_ulp(t);
    return out;
}

bool Ball::contains_zero() const {
    RadScratch m;
    mpfr_abs(m.t, c_, MPFR_RNDD);
    return mpfr_cmp(m.t, r_) <= 0;
}

bool Ball::is_positive() const {
    RadScratch lo;
    mpfr_sub(lo.t, c_, r_, MPFR_RNDD);
    return mpfr_sgn(lo.t) > 0;
}

bool Ball::is_negative() const {
    RadScratch hi;
    mpfr_add(hi.t, c_, r_, MPFR_RNDU);
    return mpfr_sgn(hi.t) < 0;
}

bool Ball::contains_rational(const BigRational& q) const {
    // exact: centers and radii are dyadic rationals
    BigRational diff = q - center_rat();
    BigRational mag = diff >= 0 ? diff : BigRational(-diff);
    return mag <= radius_rat();
}

bool Ball::contains_ball(const Ball& inner) const {
    BigRational diff = inner.center_rat() - center_rat();
    BigRational mag = diff >= 0 ? diff : BigRational(-diff);
    return mag + inner.radius_rat() <= radius_rat();
}

bool Ball::overlaps(const Ball& other) const {
    BigRational diff = other.center_rat() - center_rat();
    BigRational mag = diff >= 0 ? diff : BigRational(-diff);
    return mag <= radius_rat() + other.radius_rat();
}

void Ball::abs_upper(mpfr_ptr out) const {
    mpfr_abs(out, c_, MPFR_RNDU);
    mpfr_add(out, out, r_, MPFR_RNDU);
}

long Ball::mag_exp() const {
    RadScratch m;
    abs_upper(m.t);
    if (mpfr_zero_p(m.t)) return mpfr_get_emin();
    return mpfr_get_exp(m.t);
}

void Ball::center_gap(const Ball& a, const Ball& b, mpfr_ptr out) {
    mpfr_sub(out, a.c_, b.c_, MPFR_RNDA);
    mpfr_abs(out, out, MPFR_RNDU);
    mpfr_add(out, out, a.r_, MPFR_RNDU);
    mpfr_add(out, out, b.r_, MPFR_RNDU);
}

BigRational Ball::center_rat() const { return mpfr_to_rational(c_); }
BigRational Ball::radius_rat() const { return mpfr_to_rational(r_); }

long Ball::certified_decimals() const {
    if (mpfr_zero_p(c_)) return 0;
    if (mpfr_zero_p(r_)) return 1000000000L; // exact
    // digits = floor(log10(|c| / (2r)))
    RadScratch m, ratio;
    mpfr_abs(m.t, c_, MPFR_RNDD);
    mpfr_mul_2ui(ratio.t, r_, 1, MPFR_RNDU);
    mpfr_div(ratio.t, m.t, ratio.t, MPFR_RNDD);
    if (mpfr_cmp_ui(ratio.t, 1) <= 0) return 0;
    mpfr_log10(ratio.t, ratio.t, MPFR_RNDD);
    long d = mpfr_get_si(ratio.t, MPFR_RNDD);
    return std::max(0L, d);
}

std::string Ball::decimal(std::size_t max_digits) const {
    auto radius_str = [&]() -> std::string {
        if (mpfr_zero_p(r_)) return "(exact)";
        char* s = nullptr;
        if (mpfr_asprintf(&s, "(±%.2Re)", r_) < 0) return "(±?)";
        std::string out(s);
        mpfr_free_str(s);
        return out;
    };

    if (mpfr_zero_p(c_)) {
        return std::string("0 ") + radius_str();
    }
    long digits = certified_decimals();
    if (digits <= 0) {
        // no certified significant digit: report only the enclosure scale
        return std::string("~0 ") + radius_str();
    }
    if (max_digits > 0) digits = std::min<long>(digits, static_cast<long>(max_digits));

    mpfr_exp_t e10 = 0;
    char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<std::size_t>(digits), c_,
                             MPFR_RNDN);
    if (raw == nullptr) return "?";
    std::string mant(raw);
    mpfr_free_str(raw);

    std::string sign;
    if (!mant.empty() && mant.front() == '-') {
        sign = "-";
        mant.erase(mant.begin());
    }
    std::string out = sign;
    out += mant.substr(0, 1);
    if (mant.size() > 1) {
        out += ".";
        out += mant.substr(1);
    }
    out += "e";
    long sci = static_cast<long>(e10) - 1; // get_str exponent is for 0.ddd form
    out += (sci >= 0 ? "+" : "") + std::to_string(sci);
    out += " ";
    out += radius_str();
    return out;
}

Ball eval_quadext(const QuadExt& x, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 16;
    Ball num = Ball::from_int(x.a(), wp);
    if (x.d() != 0) {
        Ball root = Ball::sqrt(Ball::from_long(x.d(), wp), wp);
        Ball surd = Ball::mul_int(root, x.b(), wp);
        num = Ball::add(num, surd, wp);
    }
    Ball den = Ball::from_int(x.c(), wp);
    return Ball::div(num, den, wp).round_to(prec);
}

} // namespace constforge::real
