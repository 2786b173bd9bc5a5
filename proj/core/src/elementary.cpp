#include "constforge/elementary.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace constforge::real {

namespace {

struct Rad {
    mpfr_t t;
    Rad() { mpfr_init2(t, Ball::kRadiusPrec); }
    ~Rad() { mpfr_clear(t); }
};

/// sum_{j>=0} s_j u^{2j+1}/(2j+1) with s_j = (-1)^j (arctan) or 1 (atanh).
/// Requires |u| bounded well below 1; callers reduce to |u| <= ~0.18 so the
/// geometric tail ratio u^2 stays small. Tail after the term with exponent
/// 2j+1 is at most |u|^{2j+3} / ((2j+3)(1 - u^2)).
Ball odd_power_series(const Ball& u, mpfr_prec_t wp, bool alternating) {
    Rad uu;
    u.abs_upper(uu.t);
    if (mpfr_zero_p(uu.t)) return Ball::zero();
    if (mpfr_cmp_d(uu.t, 0.5) >= 0)
        throw DomainError("series argument ball too wide to certify");

    Ball u2 = Ball::mul(u, u, wp);
    Rad q, geom;
    u2.abs_upper(q.t); // q = upper bound of u^2 < 0.25
    mpfr_ui_sub(geom.t, 1, q.t, MPFR_RNDD);
    mpfr_ui_div(geom.t, 1, geom.t, MPFR_RNDU); // 1/(1-q)

    long target_exp = u.mag_exp() - wp - 2;

    Ball sum = u;
    Ball p = u;
    Rad tail, pu;
    for (unsigned long j = 1;; ++j) {
        p = Ball::mul(p, u2, wp);
        Ball term = Ball::mul_rat(p, BigRational(1, 2 * j + 1), wp);
        sum = alternating && (j & 1) ? Ball::sub(sum, term, wp)
                                     : Ball::add(sum, term, wp);
        // tail <= |u|^{2j+3}/((2j+3)(1-q))
        p.abs_upper(pu.t);
        mpfr_mul(tail.t, pu.t, q.t, MPFR_RNDU);
        mpfr_div_ui(tail.t, tail.t, 2 * j + 3, MPFR_RNDU);
        mpfr_mul(tail.t, tail.t, geom.t, MPFR_RNDU);
        if (mpfr_zero_p(tail.t) ||
            mpfr_get_exp(tail.t) < target_exp) {
            sum.add_error(tail.t);
            break;
        }
        if (j > static_cast<unsigned long>(wp) + 64)
            throw std::logic_error("odd_power_series: failed to converge");
    }
    return sum;
}

/// Cache of deterministic constants keyed by exact precision. Append-only
/// under a mutex; entries are immutable once stored.
class ConstCache {
public:
    Ball get_or_compute(mpfr_prec_t prec, Ball (*compute)(mpfr_prec_t)) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = entries_.find(prec);
            if (it != entries_.end()) return it->second;
        }
        Ball value = compute(prec);
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = entries_.emplace(prec, value);
        return it->second;
    }

private:
    std::mutex mu_;
    std::map<mpfr_prec_t, Ball> entries_;
};

Ball compute_pi(mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    Ball a5 = arctan(Ball::from_rat(BigRational(1, 5), wp), wp);
    Ball a239 = arctan(Ball::from_rat(BigRational(1, 239), wp), wp);
    Ball quarter = Ball::sub(Ball::mul_rat(a5, BigRational(4), wp), a239, wp);
    return Ball::mul_2exp(quarter, 2).round_to(prec);
}

Ball compute_ln2(mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    Ball u = Ball::from_rat(BigRational(1, 3), wp);
    Ball s = odd_power_series(u, wp, /*alternating=*/false);
    return Ball::mul_2exp(s, 1).round_to(prec);
}

ConstCache& pi_cache() {
    static ConstCache c;
    return c;
}

ConstCache& ln2_cache() {
    static ConstCache c;
    return c;
}

} // namespace

Ball const_pi(mpfr_prec_t prec) {
    if (prec < 16) prec = 16;
    return pi_cache().get_or_compute(prec, compute_pi);
}

Ball const_ln2(mpfr_prec_t prec) {
    if (prec < 16) prec = 16;
    return ln2_cache().get_or_compute(prec, compute_ln2);
}

Ball arctan(const Ball& x, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    Rad mag;
    x.abs_upper(mag.t);
    if (mpfr_zero_p(mag.t)) return Ball::zero();

    Ball t = x.round_to(wp);
    Ball one = Ball::from_long(1, wp);
    long halvings = 0;
    for (;;) {
        Rad m;
        t.abs_upper(m.t);
        if (mpfr_cmp_d(m.t, 0.125) < 0) break;
        Ball t2 = Ball::sqr(t, wp);
        Ball root = Ball::sqrt(Ball::add(one, t2, wp), wp);
        t = Ball::div(t, Ball::add(one, root, wp), wp);
        if (++halvings > 200)
            throw std::logic_error("arctan: argument reduction failed");
    }
    Ball s = odd_power_series(t, wp, /*alternating=*/true);
    return Ball::mul_2exp(s, halvings).round_to(prec);
}

Ball ln(const Ball& x, mpfr_prec_t prec) {
    if (!x.is_positive())
        throw DomainError("ln: ball must be entirely positive");
    mpfr_prec_t wp = prec + 32;

    // y = m * 2^e with the mantissa window [sqrt(2)/2, sqrt(2)); the window
    // choice only affects speed, the enclosure stays rigorous either way.
    long e = mpfr_get_exp(x.center());
    Ball m = Ball::mul_2exp(x, -e);
    if (mpfr_cmp_d(m.center(), 0.70710678118654752) < 0) {
        m = Ball::mul_2exp(m, 1);
        e -= 1;
    }

    Ball one = Ball::from_long(1, wp);
    Ball u = Ball::div(Ball::sub(m, one, wp), Ball::add(m, one, wp), wp);
    Ball s = Ball::mul_2exp(odd_power_series(u, wp, /*alternating=*/false), 1);
    if (e != 0) {
        Ball scaled = Ball::mul_rat(const_ln2(wp), BigRational(e), wp);
        s = Ball::add(s, scaled, wp);
    }
    return s.round_to(prec);
}

Ball arcsin(const Ball& x, mpfr_prec_t prec) {
    // exact endpoints first: arcsin(±1) = ±pi/2
    if (x.exact()) {
        if (mpfr_cmp_si(x.center(), 1) == 0)
            return Ball::mul_2exp(const_pi(prec), -1);
        if (mpfr_cmp_si(x.center(), -1) == 0)
            return Ball::neg(Ball::mul_2exp(const_pi(prec), -1));
    }
    Rad mag;
    x.abs_upper(mag.t);
    if (mpfr_cmp_ui(mag.t, 1) >= 0)
        throw DomainError("arcsin: ball must lie inside (-1, 1) or be exactly ±1");

    mpfr_prec_t wp = prec + 32;
    Ball one = Ball::from_long(1, wp);
    Ball y2 = Ball::sqr(x, wp);
    Ball root = Ball::sqrt(Ball::sub(one, y2, wp), wp);
    Ball t = Ball::div(x, root, wp);
    return arctan(t, wp).round_to(prec);
}

Ball arcsinh(const Ball& x, mpfr_prec_t prec) {
    if (x.is_negative()) return Ball::neg(arcsinh(Ball::neg(x), prec));
    mpfr_prec_t wp = prec + 32;
    Ball one = Ball::from_long(1, wp);
    Ball root = Ball::sqrt(Ball::add(one, Ball::sqr(x, wp), wp), wp);
    return ln(Ball::add(x, root, wp), wp).round_to(prec);
}

Ball elem_fn(ElemFn fn, const Ball& x, mpfr_prec_t prec) {
    switch (fn) {
        case ElemFn::Ln: return ln(x, prec);
        case ElemFn::Arctan: return arctan(x, prec);
        case ElemFn::Arcsin: return arcsin(x, prec);
        case ElemFn::Arcsinh: return arcsinh(x, prec);
    }
    throw std::logic_error("elem_fn: unknown function");
}

} // namespace constforge::real
