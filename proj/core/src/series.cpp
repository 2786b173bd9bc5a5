#include "constforge/series.hpp"

#include "constforge/elementary.hpp"
#include "constforge/sequences.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace constforge::series {

using real::Ball;

namespace {

struct Rad {
    mpfr_t t;
    Rad() { mpfr_init2(t, Ball::kRadiusPrec); }
    ~Rad() { mpfr_clear(t); }
};

// rational upper covers of the limiting weight ratios:
// phi^2 = 2.6180339... < 2619/1000,  (5+sqrt(5))/2 = 3.6180339... < 36181/10000
const BigRational kPhi2Upper = make_rational(2619, 1000);
const BigRational kGammaUpper = make_rational(36181, 10000);

BigRational abs_upper_rat(const QuadExt& x) {
    if (x.is_rational()) {
        BigRational q = x.rational();
        return q >= 0 ? q : BigRational(-q);
    }
    Ball b = real::eval_quadext(x.abs(), 64);
    return b.center_rat() + b.radius_rat();
}

bool weight_uses_h2prev(Weight w) {
    switch (w) {
        case Weight::H2Prev:
        case Weight::Lucas2kH2:
        case Weight::Fib2kH2:
        case Weight::UkH2:
        case Weight::VkH2:
            return true;
        default:
            return false;
    }
}

bool weight_uses_hbar(Weight w) {
    switch (w) {
        case Weight::HBar:
        case Weight::Fib2k1HBar:
        case Weight::Lucas2k1HBar:
            return true;
        default:
            return false;
    }
}

bool weight_has_int_part(Weight w) {
    switch (w) {
        case Weight::Lucas2kH2:
        case Weight::Fib2kH2:
        case Weight::UkH2:
        case Weight::VkH2:
        case Weight::Fib2k1HBar:
        case Weight::Lucas2k1HBar:
            return true;
        default:
            return false;
    }
}

/// Growth bound for the full weight on k >= k0. The Binet-form integer
/// ratios approach their limit monotonically (from above for the difference
/// sequences F, u; from below for the sum sequences L, v), so the max of the
/// exact ratio at k0 and a rational cover of the limit dominates all later
/// ratios. Harmonic factors contribute 1 + 1/k0^2 resp. 1 + 1/(2k0+1)^2.
BigRational weight_ratio_bound(Weight w, long k0) {
    auto h2_factor = [&]() -> BigRational {
        if (k0 < 2) throw std::invalid_argument("tail bound needs k0 >= 2 here");
        return BigRational(1) + make_rational(1, k0 * k0);
    };
    auto hbar_factor = [&]() -> BigRational {
        long odd = 2 * k0 + 1;
        return BigRational(1) + make_rational(1, odd * odd);
    };
    auto int_ratio = [&](const BigInt& num, const BigInt& den,
                         const BigRational& limit_cover) -> BigRational {
        BigRational r = make_rational(num, den);
        return std::max(r, limit_cover);
    };
    using namespace seq;
    switch (w) {
        case Weight::One:
            return BigRational(1);
        case Weight::H2Prev:
            return h2_factor();
        case Weight::HBar:
            return hbar_factor();
        case Weight::Lucas2kH2:
            return int_ratio(lucas(2 * k0 + 2), lucas(2 * k0), kPhi2Upper) * h2_factor();
        case Weight::Fib2kH2:
            return int_ratio(fib(2 * k0 + 2), fib(2 * k0), kPhi2Upper) * h2_factor();
        case Weight::UkH2:
            return int_ratio(weight_u(k0 + 1), weight_u(k0), kGammaUpper) * h2_factor();
        case Weight::VkH2:
            return int_ratio(weight_v(k0 + 1), weight_v(k0), kGammaUpper) * h2_factor();
        case Weight::Fib2k1HBar:
            return int_ratio(fib(2 * k0 + 3), fib(2 * k0 + 1), kPhi2Upper) * hbar_factor();
        case Weight::Lucas2k1HBar:
            return int_ratio(lucas(2 * k0 + 3), lucas(2 * k0 + 1), kPhi2Upper) *
                   hbar_factor();
    }
    throw std::logic_error("unknown weight");
}

/// |hyper(k+1) x^{k+1} / (hyper(k) x^k)| <= bound, valid for every k >= 1.
BigRational hyper_ratio_bound(Family family, const BigRational& xabs) {
    switch (family) {
        case Family::InvCentralBinom:
            return xabs / 4;
        case Family::CentralBinomOdd:
        case Family::CentralBinomPlain:
            return xabs * 4;
        case Family::Baseline:
            break;
    }
    throw std::logic_error("hyper_ratio_bound: baseline has no hypergeometric part");
}

/// Certified ratio bounds for the fast baselines, valid for every k >= k0.
/// Monotone-decreasing factors are taken at k0, increasing ones at their
/// limit.
std::optional<BigRational> baseline_rho(Baseline kind, long k0) {
    switch (kind) {
        case Baseline::Gosper:
            // ratio = (25k+22)/(25k-3) * (1/6) * (2k+1)/(3k+1) * (2k+2)/(3k+2),
            // every factor decreasing in k
            if (k0 < 1) k0 = 1;
            return make_rational(25 * k0 + 22, 25 * k0 - 3) * make_rational(1, 6) *
                   make_rational(2 * k0 + 1, 3 * k0 + 1) *
                   make_rational(2 * k0 + 2, 3 * k0 + 2);
        case Baseline::Zeilberger:
            // (21k+13)/(21k-8) decreasing, k^3/(2k+1)^3 < 1/8
            return make_rational(21 * k0 + 13, 21 * k0 - 8) / 64;
        case Baseline::Bbb:
            // k^4/(k+1)^4 < 1 and (k+1)/(2(2k+1)) decreasing
            return make_rational(k0 + 1, 2 * (2 * k0 + 1));
        case Baseline::Log2Accel:
            // ratio (2k+1)/(9(2k+3)) increases toward 1/9; bound by the limit
            return make_rational(1, 9);
        default:
            return std::nullopt; // slow baselines have no geometric bound
    }
}

double estimate_rho(const SeriesSpec& spec) {
    if (spec.family == Family::Baseline) {
        switch (spec.baseline) {
            case Baseline::Gosper: return 2.0 / 27.0;
            case Baseline::Zeilberger: return 1.0 / 64.0;
            case Baseline::Bbb: return 0.25;
            case Baseline::Log2Accel: return 1.0 / 9.0;
            default: return 1.0;
        }
    }
    double xa = std::fabs(spec.x.approx());
    double hyper = spec.family == Family::InvCentralBinom ? xa / 4.0 : xa * 4.0;
    double wl = 1.0;
    switch (spec.weight) {
        case Weight::Lucas2kH2:
        case Weight::Fib2kH2:
        case Weight::Fib2k1HBar:
        case Weight::Lucas2k1HBar:
            wl = 2.6180339887498949;
            break;
        case Weight::UkH2:
        case Weight::VkH2:
            wl = 3.6180339887498949;
            break;
        default:
            break;
    }
    double rho = hyper * wl;
    return std::clamp(rho, 1e-9, 0.999999);
}

/// Exact per-term state for the fixed classical baselines.
class BaselineGen {
public:
    BaselineGen(Baseline kind, long k_start) : kind_(kind), k_(k_start) {
        switch (kind_) {
            case Baseline::Gosper:     // denom = 2^k C(3k,k), starting at k=0
            case Baseline::Log2Accel:  // denom = 9^k
                denom_ = 1;
                break;
            default:
                break;
        }
    }

    long k() const { return k_; }

    BigRational term() const {
        long k = k_;
        switch (kind_) {
            case Baseline::Gosper:
                return make_rational(BigInt(25 * k - 3), denom_);
            case Baseline::Zeilberger: {
                BigInt c = seq::central_binom(k);
                return make_rational(BigInt(21 * k - 8), BigInt(k) * k * k * c * c * c);
            }
            case Baseline::Bbb: {
                BigInt c = seq::central_binom(k);
                return make_rational(BigInt(1), BigInt(k) * k * k * k * c);
            }
            case Baseline::Log2Accel:
                return make_rational(BigInt(2), BigInt(3) * (2 * k + 1) * denom_);
            case Baseline::Leibniz: {
                BigRational t = make_rational(1, 2 * k + 1);
                return (k % 2 == 0) ? t : BigRational(-t);
            }
            case Baseline::Zeta2:
                return make_rational(1, k * k);
            case Baseline::Zeta4: {
                BigInt k4 = BigInt(k) * k * k * k;
                return make_rational(BigInt(1), k4);
            }
            case Baseline::Log2Alt: {
                BigRational t = make_rational(1, k);
                return (k % 2 == 1) ? t : BigRational(-t);
            }
            case Baseline::None:
                break;
        }
        throw std::logic_error("baseline term: bad kind");
    }

    void advance() {
        long k = k_;
        switch (kind_) {
            case Baseline::Gosper: {
                // 2^{k+1} C(3k+3,k+1) from 2^k C(3k,k)
                denom_ *= 2;
                denom_ *= BigInt(3 * k + 1) * (3 * k + 2) * (3 * k + 3);
                BigInt div = BigInt(k + 1) * (2 * k + 1) * (2 * k + 2);
                mpz_divexact(denom_.get_mpz_t(), denom_.get_mpz_t(), div.get_mpz_t());
                break;
            }
            case Baseline::Log2Accel:
                denom_ *= 9;
                break;
            default:
                break;
        }
        ++k_;
    }

private:
    Baseline kind_;
    long k_;
    BigInt denom_{1};
};

/// Per-term rational step of the hypergeometric part, from k to k+1.
/// `with_x` folds a rational argument into the factor.
BigRational hyper_step(const SeriesSpec& spec, long k, const BigRational* xq) {
    BigRational f;
    switch (spec.family) {
        case Family::InvCentralBinom:
            if (spec.m == 1) {
                f = make_rational(k, 2 * (2 * k + 1));
            } else {
                f = make_rational(BigInt(k) * k, BigInt(2) * (k + 1) * (2 * k + 1));
            }
            break;
        case Family::CentralBinomOdd:
            f = make_rational(BigInt(2) * (2 * k + 1) * (2 * k + 1),
                              BigInt(k + 1) * (2 * k + 3));
            break;
        case Family::CentralBinomPlain:
            f = make_rational(2 * (2 * k + 1), k + 1);
            break;
        case Family::Baseline:
            throw std::logic_error("hyper_step on baseline");
    }
    if (xq != nullptr) f *= *xq;
    return f;
}

/// hyper(k_start) excluding the argument (k_start is 1 for every family entry)
BigRational hyper_init(const SeriesSpec& spec) {
    switch (spec.family) {
        case Family::InvCentralBinom:
            return make_rational(1, 2); // 1 / (1^m C(2,1))
        case Family::CentralBinomOdd:
            return make_rational(2, 3); // C(2,1)/3
        case Family::CentralBinomPlain:
            return BigRational(2); // C(2,1)
        case Family::Baseline:
            break;
    }
    throw std::logic_error("hyper_init on baseline");
}

/// Incremental ball-valued term generator shared by full evaluation,
/// partial sums and profiling.
class BallTermGen {
public:
    BallTermGen(const SeriesSpec& spec, mpfr_prec_t wp)
        : spec_(spec), wp_(wp), k_(spec.k_start) {
        if (spec.family == Family::Baseline) {
            baseline_.emplace(spec.baseline, spec.k_start);
            return;
        }
        if (spec.k_start != 1)
            throw std::logic_error("family series start at k = 1");
        x_rational_ = spec.x.is_rational();
        if (x_rational_) {
            xq_ = spec.x.rational();
            hb_ = Ball::mul_rat(Ball::from_rat(hyper_init(spec), wp), xq_, wp);
        } else {
            hb_ = Ball::from_rat(hyper_init(spec), wp);
            x_ball_ = real::eval_quadext(spec.x, wp);
            xpow_exact_ = spec.x;
            xpow_is_exact_ = true;
            sqrt_d_ = Ball::sqrt(Ball::from_long(spec.x.d(), wp), wp);
            xpow_ball_ = quad_to_ball(xpow_exact_);
        }
        if (weight_uses_h2prev(spec.weight)) {
            hball_ = Ball::zero(); // H2_0
        } else if (weight_uses_hbar(spec.weight)) {
            hball_ = Ball::from_long(1, wp); // Hbar_1
        }
        switch (spec.weight) {
            case Weight::Lucas2kH2: g_prev_ = 2; g_cur_ = 3; break;  // L_0, L_2
            case Weight::Fib2kH2: g_prev_ = 0; g_cur_ = 1; break;    // F_0, F_2
            case Weight::UkH2: g_prev_ = 0; g_cur_ = 1; break;       // u_0, u_1
            case Weight::VkH2: g_prev_ = 2; g_cur_ = 5; break;       // v_0, v_1
            case Weight::Fib2k1HBar: g_prev_ = 1; g_cur_ = 2; break; // F_1, F_3
            case Weight::Lucas2k1HBar: g_prev_ = 1; g_cur_ = 4; break; // L_1, L_3
            default: break;
        }
    }

    long k() const { return k_; }

    Ball term() const {
        if (baseline_) return Ball::from_rat(baseline_->term(), wp_);
        Ball t = hb_;
        if (weight_uses_h2prev(spec_.weight) || weight_uses_hbar(spec_.weight))
            t = Ball::mul(t, hball_, wp_);
        if (weight_has_int_part(spec_.weight)) t = Ball::mul_int(t, g_cur_, wp_);
        if (!x_rational_) t = Ball::mul(t, xpow_ball_, wp_);
        return t;
    }

    void advance() {
        if (baseline_) {
            baseline_->advance();
            ++k_;
            return;
        }
        long k = k_;
        BigRational step = hyper_step(spec_, k, x_rational_ ? &xq_ : nullptr);
        hb_ = Ball::mul_rat(hb_, step, wp_);
        if (weight_uses_h2prev(spec_.weight)) {
            // H2_{k-1} -> H2_k
            hball_ = Ball::add(hball_, Ball::from_rat(make_rational(BigInt(1), BigInt(k) * k), wp_), wp_);
        } else if (weight_uses_hbar(spec_.weight)) {
            // Hbar_k -> Hbar_{k+1}
            BigInt odd(2 * k + 1);
            hball_ = Ball::add(hball_, Ball::from_rat(make_rational(BigInt(1), odd * odd), wp_), wp_);
        }
        switch (spec_.weight) {
            case Weight::Lucas2kH2:
            case Weight::Fib2kH2:
            case Weight::Fib2k1HBar:
            case Weight::Lucas2k1HBar: {
                BigInt next = 3 * g_cur_ - g_prev_; // even/odd-index 2-step rule
                g_prev_ = g_cur_;
                g_cur_ = next;
                break;
            }
            case Weight::UkH2:
            case Weight::VkH2: {
                BigInt next = 5 * (g_cur_ - g_prev_);
                g_prev_ = g_cur_;
                g_cur_ = next;
                break;
            }
            default:
                break;
        }
        if (!x_rational_) {
            // keep x^k exact in Q(sqrt d) while the integer parts stay small,
            // then switch to ball stepping
            if (xpow_is_exact_ && xpow_exact_.coeff_bits() < 512) {
                xpow_exact_ = xpow_exact_ * spec_.x;
                xpow_ball_ = quad_to_ball(xpow_exact_);
            } else {
                xpow_is_exact_ = false;
                xpow_ball_ = Ball::mul(xpow_ball_, x_ball_, wp_);
            }
        }
        ++k_;
    }

private:
    Ball quad_to_ball(const QuadExt& q) const {
        Ball num = Ball::from_int(q.a(), wp_);
        if (q.d() != 0)
            num = Ball::add(num, Ball::mul_int(sqrt_d_, q.b(), wp_), wp_);
        return Ball::mul_rat(num, make_rational(BigInt(1), q.c()), wp_);
    }

    const SeriesSpec& spec_;
    mpfr_prec_t wp_;
    long k_;
    std::optional<BaselineGen> baseline_;

    bool x_rational_ = true;
    BigRational xq_;
    Ball hb_;
    Ball hball_;
    BigInt g_prev_, g_cur_;

    Ball x_ball_;
    Ball sqrt_d_;
    QuadExt xpow_exact_;
    bool xpow_is_exact_ = false;
    Ball xpow_ball_;
};

mpfr_prec_t working_prec(long digits, double terms_est) {
    double bits = static_cast<double>(digits) * 3.3219280948873623;
    double slack = 32.0 + std::log2(terms_est + 2.0) + 16.0;
    return static_cast<mpfr_prec_t>(bits + slack) + 1;
}

double estimate_terms(const SeriesSpec& spec, long digits) {
    double rho = estimate_rho(spec);
    if (rho >= 0.9999995) return 1e7;
    double t = static_cast<double>(digits) * std::log(10.0) / -std::log(rho);
    return t + 64.0;
}

struct LoopOut {
    Ball sum;
    long terms = 0;
};

/// Shared summation loop. max_terms < 0 runs until the certified tail bound
/// drops below 10^{-(digits+2)}; otherwise exactly max_terms terms are added
/// with no tail accounting.
LoopOut run_sum(const SeriesSpec& spec, long digits, long max_terms) {
    double terms_est = estimate_terms(spec, digits);
    mpfr_prec_t wp = working_prec(digits, terms_est);

    long k0 = 0;
    Rad tail_factor;
    if (max_terms < 0) {
        long cand = std::max<long>(spec.k_start + 1, 2);
        std::optional<BigRational> rho;
        for (;;) {
            rho = tail_bound(spec, cand);
            if (rho && *rho <= make_rational(97, 100)) break;
            if (cand >= 8192) break;
            cand *= 2;
        }
        if (!rho || *rho >= 1)
            throw RefusedError("series " + spec.id +
                               ": no geometric tail bound (argument at or beyond "
                               "the convergence boundary)");
        k0 = cand;
        BigRational factor = *rho / (BigRational(1) - *rho);
        mpfr_set_q(tail_factor.t, factor.get_mpq_t(), MPFR_RNDU);
    }

    Rad threshold;
    mpfr_ui_pow_ui(threshold.t, 10, static_cast<unsigned long>(digits + 2), MPFR_RNDU);
    mpfr_ui_div(threshold.t, 1, threshold.t, MPFR_RNDD);

    BallTermGen gen(spec, wp);
    Ball sum = Ball::zero();
    long count = 0;
    const long hard_cap =
        std::max<long>(static_cast<long>(terms_est) * 10 + 1000, 1000000);
    Rad term_up, tail_up;
    for (;;) {
        Ball t = gen.term();
        sum = Ball::add(sum, t, wp);
        ++count;
        if (max_terms >= 0) {
            if (count >= max_terms) break;
        } else if (gen.k() >= k0) {
            t.abs_upper(term_up.t);
            mpfr_mul(tail_up.t, term_up.t, tail_factor.t, MPFR_RNDU);
            if (mpfr_cmp(tail_up.t, threshold.t) < 0) {
                sum.add_error(tail_up.t);
                break;
            }
        }
        if (count > hard_cap)
            throw std::logic_error("series " + spec.id + ": failed to converge");
        gen.advance();
    }
    return {std::move(sum), count};
}

mpfr_prec_t report_prec(long digits) {
    return static_cast<mpfr_prec_t>(static_cast<double>(digits) * 3.3219280948873623) +
           16;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string rational_sci(const BigRational& q) {
    Rad t;
    mpfr_set_q(t.t, q.get_mpq_t(), MPFR_RNDU);
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.2Re", t.t) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

BigRational pow10_inv(long e) {
    if (e < 0) e = 0;
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return make_rational(BigInt(1), p);
}

EvalReport make_report(std::string id, long digits, long terms, Ball lhs, Ball rhs,
                       std::chrono::steady_clock::time_point t0) {
    EvalReport rep;
    rep.id = std::move(id);
    rep.digits = digits;
    rep.terms = terms;
    Rad gap;
    Ball::center_gap(lhs, rhs, gap.t);
    rep.lhs = std::move(lhs);
    rep.rhs = std::move(rhs);
    if (mpfr_zero_p(gap.t)) {
        rep.gap = BigRational(0);
    } else {
        // exact rational of the upward-rounded gap bound
        BigInt mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), gap.t);
        BigRational g(mant);
        BigInt scale;
        if (e >= 0) {
            mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(e));
            g *= BigRational(scale);
        } else {
            mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(-e));
            g /= BigRational(scale);
        }
        rep.gap = g;
    }
    rep.pass = rep.gap < pow10_inv(digits - 10);
    rep.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
    return rep;
}

} // namespace

std::string EvalReport::to_json() const {
    std::string s = "{\"id\":\"" + json_escape(id) + "\"";
    s += ",\"digits\":" + std::to_string(digits);
    s += ",\"terms\":" + std::to_string(terms);
    s += ",\"lhs\":\"" + json_escape(lhs.decimal(static_cast<std::size_t>(digits))) + "\"";
    s += ",\"rhs\":\"" + json_escape(rhs.decimal(static_cast<std::size_t>(digits))) + "\"";
    s += ",\"gap\":\"" + json_escape(rational_sci(gap)) + "\"";
    s += ",\"status\":\"" + status() + "\"";
    s += ",\"ms\":" + std::to_string(ms);
    s += "}";
    return s;
}

BigRational weight_value(Weight w, long k) {
    using namespace seq;
    switch (w) {
        case Weight::One:
            return BigRational(1);
        case Weight::H2Prev:
            return harmonic2(static_cast<std::size_t>(k - 1));
        case Weight::HBar:
            return hbar2(static_cast<std::size_t>(k));
        case Weight::Lucas2kH2:
            return BigRational(lucas(2 * k)) * harmonic2(static_cast<std::size_t>(k - 1));
        case Weight::Fib2kH2:
            return BigRational(fib(2 * k)) * harmonic2(static_cast<std::size_t>(k - 1));
        case Weight::UkH2:
            return BigRational(weight_u(k)) * harmonic2(static_cast<std::size_t>(k - 1));
        case Weight::VkH2:
            return BigRational(weight_v(k)) * harmonic2(static_cast<std::size_t>(k - 1));
        case Weight::Fib2k1HBar:
            return BigRational(fib(2 * k + 1)) * hbar2(static_cast<std::size_t>(k));
        case Weight::Lucas2k1HBar:
            return BigRational(lucas(2 * k + 1)) * hbar2(static_cast<std::size_t>(k));
    }
    throw std::logic_error("unknown weight");
}

std::optional<BigRational> tail_bound(const SeriesSpec& spec, long k0) {
    if (k0 < spec.k_start + 1)
        throw std::invalid_argument("tail_bound: k0 must be >= k_start + 1");
    if (spec.family == Family::Baseline) return baseline_rho(spec.baseline, k0);
    BigRational rho =
        hyper_ratio_bound(spec.family, abs_upper_rat(spec.x)) *
        weight_ratio_bound(spec.weight, k0);
    if (rho >= 1) return std::nullopt;
    return rho;
}

EvalResult eval_series_full(const SeriesSpec& spec, long digits) {
    if (spec.profile_only)
        throw std::invalid_argument("series " + spec.id +
                                    " is profile-only (no certified evaluation)");
    LoopOut out = run_sum(spec, digits, -1);
    return {out.sum.round_to(report_prec(digits)), out.terms};
}

real::Ball eval_series(const SeriesSpec& spec, long digits) {
    return eval_series_full(spec, digits).value;
}

real::Ball partial_sum_ball(const SeriesSpec& spec, long terms, long digits) {
    if (terms <= 0) return Ball::zero();
    return run_sum(spec, digits, terms).sum.round_to(report_prec(digits));
}

BigRational exact_partial_sum(const SeriesSpec& spec, long terms) {
    BigRational sum(0);
    if (terms <= 0) return sum;
    if (spec.family == Family::Baseline) {
        BaselineGen gen(spec.baseline, spec.k_start);
        for (long i = 0; i < terms; ++i) {
            sum += gen.term();
            gen.advance();
        }
        return sum;
    }
    if (!spec.x.is_rational())
        throw std::invalid_argument("exact_partial_sum: surd argument, use the "
                                    "Q(sqrt d) variant");
    BigRational xq = spec.x.rational();
    BigRational hyper = hyper_init(spec) * xq;
    for (long k = spec.k_start; k < spec.k_start + terms; ++k) {
        sum += hyper * weight_value(spec.weight, k);
        hyper *= hyper_step(spec, k, &xq);
    }
    return sum;
}

QuadExt exact_partial_sum_quad(const SeriesSpec& spec, long terms) {
    if (spec.family == Family::Baseline)
        throw std::invalid_argument("exact_partial_sum_quad: baseline series");
    QuadExt sum{BigRational(0)};
    if (terms <= 0) return sum;
    BigRational hyper = hyper_init(spec);
    QuadExt xpow = spec.x;
    for (long k = spec.k_start; k < spec.k_start + terms; ++k) {
        sum = sum + xpow * (hyper * weight_value(spec.weight, k));
        hyper *= hyper_step(spec, k, nullptr);
        xpow = xpow * spec.x;
    }
    return sum;
}

namespace {

std::vector<SeriesSpec> build_catalog() {
    using namespace cf;
    std::vector<SeriesSpec> cat;
    auto phi = div(add({num(1), sqrt_q(BigRational(5))}), num(2));

    auto push = [&](std::string id, Family fam, int m, Weight w, QuadExt x,
                    ExprPtr rhs, std::string formula) {
        SeriesSpec s;
        s.id = std::move(id);
        s.family = fam;
        s.m = m;
        s.weight = w;
        s.x = std::move(x);
        s.rhs = std::move(rhs);
        s.formula = std::move(formula);
        cat.push_back(std::move(s));
    };
    auto push_baseline = [&](std::string id, Baseline b, long k_start, bool slow,
                             ExprPtr rhs, std::string formula) {
        SeriesSpec s;
        s.id = std::move(id);
        s.family = Family::Baseline;
        s.baseline = b;
        s.k_start = k_start;
        s.profile_only = slow;
        s.rhs = std::move(rhs);
        s.formula = std::move(formula);
        cat.push_back(std::move(s));
    };

    QuadExt one{BigRational(1)};
    auto q = [](long n, long d) { return QuadExt(make_rational(n, d)); };

    push("S1.1", Family::InvCentralBinom, 2, Weight::H2Prev, one,
         div(pow(pi(), 4), num(1944)),
         "sum H2_{k-1} / (k^2 C(2k,k))");
    push("S1.2L", Family::InvCentralBinom, 2, Weight::Lucas2kH2, one,
         div(mul({num(41), pow(pi(), 4)}), num(7500)),
         "sum L_{2k} H2_{k-1} / (k^2 C(2k,k))");
    push("S1.2F", Family::InvCentralBinom, 2, Weight::Fib2kH2, one,
         div(mul({num(2), pow(pi(), 4)}), mul({num(375), sqrt_q(BigRational(5))})),
         "sum F_{2k} H2_{k-1} / (k^2 C(2k,k))");
    push("S1.3v", Family::InvCentralBinom, 2, Weight::VkH2, one,
         div(mul({num(34), pow(pi(), 4)}), num(1875)),
         "sum v_k H2_{k-1} / (k^2 C(2k,k))");
    push("S1.3u", Family::InvCentralBinom, 2, Weight::UkH2, one,
         div(mul({num(2), pow(pi(), 4)}), mul({num(125), sqrt_q(BigRational(5))})),
         "sum u_k H2_{k-1} / (k^2 C(2k,k))");
    push("S1.5", Family::InvCentralBinom, 1, Weight::H2Prev, one,
         div(pow(pi(), 3), mul({num(162), sqrt_q(BigRational(3))})),
         "sum H2_{k-1} / (k C(2k,k))");
    push("S1.6", Family::InvCentralBinom, 1, Weight::H2Prev, QuadExt(3),
         div(mul({num(4), pow(pi(), 3)}), mul({num(27), sqrt_q(BigRational(3))})),
         "sum 3^k H2_{k-1} / (k C(2k,k))");
    push("S1.8", Family::CentralBinomOdd, 1, Weight::Fib2k1HBar, q(1, 16),
         div(mul({num(7), pow(pi(), 3)}), mul({num(750), sqrt_q(BigRational(5))})),
         "sum C(2k,k) F_{2k+1} Hbar_k / ((2k+1) 16^k)");
    push("S1.9", Family::CentralBinomOdd, 1, Weight::Lucas2k1HBar, q(1, 16),
         div(mul({num(13), pow(pi(), 3)}), num(1500)),
         "sum C(2k,k) L_{2k+1} Hbar_k / ((2k+1) 16^k)");
    push("S1.11", Family::CentralBinomOdd, 1, Weight::HBar, q(1, 16),
         div(pow(pi(), 3), num(648)),
         "sum C(2k,k) Hbar_k / ((2k+1) 16^k)");
    push("S1.12", Family::CentralBinomOdd, 1, Weight::HBar, q(1, 8),
         div(pow(pi(), 3), mul({num(192), sqrt_q(BigRational(2))})),
         "sum C(2k,k) Hbar_k / ((2k+1) 8^k)");
    push("S1.13", Family::CentralBinomOdd, 1, Weight::HBar, q(3, 16),
         div(pow(pi(), 3), mul({num(81), sqrt_q(BigRational(3))})),
         "sum C(2k,k) Hbar_k (3/16)^k / (2k+1)");
    push("S1.14", Family::CentralBinomOdd, 1, Weight::HBar, q(-1, 32),
         neg(mul({div(sqrt_q(BigRational(2)), num(24)), pow(ln(num(2)), 3)})),
         "sum C(2k,k) Hbar_k / ((2k+1) (-32)^k)");
    push("S1.15", Family::CentralBinomOdd, 1, Weight::HBar, q(-1, 12),
         neg(mul({div(sqrt_q(BigRational(3)), num(48)), pow(ln(num(3)), 3)})),
         "sum C(2k,k) Hbar_k / ((2k+1) (-12)^k)");
    push("S1.16", Family::CentralBinomOdd, 1, Weight::HBar, q(-1, 16),
         neg(mul({num(1, 3), pow(ln(phi), 3)})),
         "sum C(2k,k) Hbar_k / ((2k+1) (-16)^k)");
    push("S1.18", Family::CentralBinomPlain, 1, Weight::HBar, q(1, 16),
         div(pow(pi(), 2), mul({num(36), sqrt_q(BigRational(3))})),
         "sum C(2k,k) Hbar_k / 16^k");
    push("S1.19", Family::CentralBinomPlain, 1, Weight::HBar, q(1, 8),
         div(pow(pi(), 2), mul({num(16), sqrt_q(BigRational(2))})),
         "sum C(2k,k) Hbar_k / 8^k");
    push("S1.20", Family::CentralBinomPlain, 1, Weight::HBar, q(3, 16),
         div(pow(pi(), 2), num(9)),
         "sum C(2k,k) Hbar_k (3/16)^k");
    push("S-S6", Family::InvCentralBinom, 1, Weight::H2Prev, QuadExt(2),
         div(pow(pi(), 3), num(48)),
         "sum 2^k H2_{k-1} / (k C(2k,k))");

    push_baseline("B-GOSPER", Baseline::Gosper, 0, false, div(pi(), num(2)),
                  "sum (25k-3) / (2^k C(3k,k))");
    push_baseline("B-ZEILBERGER", Baseline::Zeilberger, 1, false,
                  div(pow(pi(), 2), num(6)), "sum (21k-8) / (k^3 C(2k,k)^3)");
    push_baseline("B-BBB", Baseline::Bbb, 1, false,
                  div(mul({num(17), pow(pi(), 4)}), num(3240)),
                  "sum 1 / (k^4 C(2k,k))");
    push_baseline("B-LOG2-9K", Baseline::Log2Accel, 0, false, ln(num(2)),
                  "(2/3) sum 1 / ((2k+1) 9^k)");
    push_baseline("B-LEIBNIZ", Baseline::Leibniz, 0, true, div(pi(), num(4)),
                  "sum (-1)^k / (2k+1)");
    push_baseline("B-ZETA2", Baseline::Zeta2, 1, true, div(pow(pi(), 2), num(6)),
                  "sum 1/k^2");
    push_baseline("B-ZETA4", Baseline::Zeta4, 1, true, div(pow(pi(), 4), num(90)),
                  "sum 1/k^4");
    push_baseline("B-LOG2-ALT", Baseline::Log2Alt, 1, true, ln(num(2)),
                  "sum (-1)^{k-1} / k");
    return cat;
}

} // namespace

const std::vector<SeriesSpec>& catalog() {
    static const std::vector<SeriesSpec> cat = build_catalog();
    return cat;
}

const SeriesSpec* find(const std::string& id) {
    for (const auto& s : catalog())
        if (s.id == id) return &s;
    return nullptr;
}

EvalReport verify_identity(const std::string& id, long digits) {
    const SeriesSpec* spec = find(id);
    if (spec == nullptr) throw std::out_of_range("unknown catalog id: " + id);
    if (spec->profile_only)
        throw std::invalid_argument("series " + id + " is profile-only");
    auto t0 = std::chrono::steady_clock::now();
    EvalResult lhs = eval_series_full(*spec, digits);
    Ball rhs = cf::eval(spec->rhs, report_prec(digits));
    return make_report(id, digits, lhs.terms, std::move(lhs.value), std::move(rhs), t0);
}

std::vector<EvalReport> verify_all(long digits, int jobs) {
    std::vector<const SeriesSpec*> work;
    for (const auto& s : catalog())
        if (!s.profile_only) work.push_back(&s);

    std::vector<EvalReport> reports(work.size());
    jobs = std::clamp(jobs, 1, 64);
    if (jobs == 1) {
        for (std::size_t i = 0; i < work.size(); ++i)
            reports[i] = verify_identity(work[i]->id, digits);
        return reports;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= work.size()) return;
            reports[i] = verify_identity(work[i]->id, digits);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return reports;
}

std::optional<GfFamily> parse_gf_family(const std::string& name) {
    if (name == "GF1.4") return GfFamily::Gf14;
    if (name == "GF1.7") return GfFamily::Gf17;
    if (name == "GF1.10") return GfFamily::Gf110;
    if (name == "GF1.17") return GfFamily::Gf117;
    if (name == "GF2.1") return GfFamily::Gf21;
    if (name == "GF-DK3") return GfFamily::Dk3;
    if (name == "GF-DK4") return GfFamily::Dk4;
    return std::nullopt;
}

std::string gf_family_name(GfFamily f) {
    switch (f) {
        case GfFamily::Gf14: return "GF1.4";
        case GfFamily::Gf17: return "GF1.7";
        case GfFamily::Gf110: return "GF1.10";
        case GfFamily::Gf117: return "GF1.17";
        case GfFamily::Gf21: return "GF2.1";
        case GfFamily::Dk3: return "GF-DK3";
        case GfFamily::Dk4: return "GF-DK4";
    }
    return "?";
}

SeriesSpec gf_series_spec(GfFamily f, const QuadExt& x) {
    SeriesSpec s;
    s.id = gf_family_name(f) + "[x=" + x.str() + "]";
    s.k_start = 1;
    BigRational r16 = make_rational(1, 16);
    BigRational r4 = make_rational(1, 4);
    switch (f) {
        case GfFamily::Gf14:
            s.family = Family::InvCentralBinom;
            s.m = 1;
            s.weight = Weight::H2Prev;
            s.x = x;
            break;
        case GfFamily::Gf21:
            s.family = Family::InvCentralBinom;
            s.m = 2;
            s.weight = Weight::H2Prev;
            s.x = x;
            break;
        case GfFamily::Gf17:
            s.family = Family::CentralBinomOdd;
            s.weight = Weight::HBar;
            s.x = x * r16;
            break;
        case GfFamily::Gf110:
            s.family = Family::CentralBinomOdd;
            s.weight = Weight::HBar;
            s.x = -(x.reciprocal() * r4);
            break;
        case GfFamily::Gf117:
            s.family = Family::CentralBinomPlain;
            s.weight = Weight::HBar;
            s.x = x.squared() * r16;
            break;
        case GfFamily::Dk3:
            s.family = Family::InvCentralBinom;
            s.m = 1;
            s.weight = Weight::H2Prev;
            s.x = -x.reciprocal();
            break;
        case GfFamily::Dk4:
            s.family = Family::InvCentralBinom;
            s.m = 2;
            s.weight = Weight::H2Prev;
            s.x = -x.reciprocal();
            break;
    }
    return s;
}

real::Ball gf_function_side(GfFamily f, const Ball& x, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    Ball four = Ball::from_long(4, wp);
    Ball one = Ball::from_long(1, wp);
    switch (f) {
        case GfFamily::Gf14: {
            // (4/3) sqrt(x/(4-x)) arcsin^3(sqrt(x)/2)
            Ball s = Ball::sqrt(Ball::div(x, Ball::sub(four, x, wp), wp), wp);
            Ball a = real::arcsin(Ball::mul_2exp(Ball::sqrt(x, wp), -1), wp);
            Ball out = Ball::mul(s, Ball::pow_ui(a, 3, wp), wp);
            return Ball::mul_rat(out, make_rational(4, 3), wp).round_to(prec);
        }
        case GfFamily::Gf17: {
            // arcsin^3(sqrt(x)/2) / (3 sqrt(x))
            Ball sx = Ball::sqrt(x, wp);
            Ball a = real::arcsin(Ball::mul_2exp(sx, -1), wp);
            Ball out = Ball::div(Ball::pow_ui(a, 3, wp),
                                 Ball::mul_rat(sx, BigRational(3), wp), wp);
            return out.round_to(prec);
        }
        case GfFamily::Gf110: {
            // (sqrt(x)/6) ln^3((sqrt(x+1)-1)/sqrt(x))
            Ball sx = Ball::sqrt(x, wp);
            Ball sx1 = Ball::sqrt(Ball::add(x, one, wp), wp);
            Ball l = real::ln(Ball::div(Ball::sub(sx1, one, wp), sx, wp), wp);
            Ball out = Ball::mul(Ball::mul_rat(sx, make_rational(1, 6), wp),
                                 Ball::pow_ui(l, 3, wp), wp);
            return out.round_to(prec);
        }
        case GfFamily::Gf117: {
            // arcsin^2(x/2) / sqrt(4 - x^2)
            Ball a = real::arcsin(Ball::mul_2exp(x, -1), wp);
            Ball root = Ball::sqrt(Ball::sub(four, Ball::sqr(x, wp), wp), wp);
            return Ball::div(Ball::pow_ui(a, 2, wp), root, wp).round_to(prec);
        }
        case GfFamily::Gf21: {
            // (2/3) arcsin^4(sqrt(x)/2)
            Ball a = real::arcsin(Ball::mul_2exp(Ball::sqrt(x, wp), -1), wp);
            return Ball::mul_rat(Ball::pow_ui(a, 4, wp), make_rational(2, 3), wp)
                .round_to(prec);
        }
        case GfFamily::Dk3:
        case GfFamily::Dk4: {
            // r = sqrt(4x+1), L = ln((r+1)/(r-1));
            // DK3: L^3/(6r),  DK4: L^4/24
            Ball r = Ball::sqrt(Ball::add(Ball::mul_rat(x, BigRational(4), wp), one, wp),
                                wp);
            Ball l = real::ln(
                Ball::div(Ball::add(r, one, wp), Ball::sub(r, one, wp), wp), wp);
            if (f == GfFamily::Dk3) {
                Ball out = Ball::div(Ball::pow_ui(l, 3, wp),
                                     Ball::mul_rat(r, BigRational(6), wp), wp);
                return out.round_to(prec);
            }
            return Ball::mul_rat(Ball::pow_ui(l, 4, wp), make_rational(1, 24), wp)
                .round_to(prec);
        }
    }
    throw std::logic_error("gf_function_side: unknown family");
}

EvalReport gf_check(GfFamily f, const QuadExt& x, long digits) {
    auto refuse = [&](const std::string& where) {
        throw RefusedError(gf_family_name(f) + ": x = " + x.str() + " sits at the " +
                           where + " (certified tail bound degenerates; use profile "
                           "mode)");
    };
    auto reject = [&](const std::string& msg) {
        throw DomainError(gf_family_name(f) + ": " + msg + " (got x = " + x.str() +
                          ")");
    };
    switch (f) {
        case GfFamily::Gf14:
        case GfFamily::Gf21:
        case GfFamily::Gf17: {
            if (x.sign() <= 0) reject("x > 0 required");
            int c = x.compare(BigRational(4));
            if (c > 0) reject("x < 4 required");
            if (c == 0) refuse("geometric-convergence boundary x = 4");
            break;
        }
        case GfFamily::Gf110: {
            int c = x.compare(BigRational(1));
            if (c < 0) reject("x >= 1 required");
            if (c == 0) refuse("geometric-convergence boundary x = 1");
            break;
        }
        case GfFamily::Gf117: {
            if (x.sign() < 0) reject("x >= 0 required");
            int c = x.compare(BigRational(2));
            if (c > 0) reject("x < 2 required");
            if (c == 0) refuse("geometric-convergence boundary x = 2");
            break;
        }
        case GfFamily::Dk3:
        case GfFamily::Dk4: {
            int c = x.compare(make_rational(1, 4));
            if (c < 0) reject("x > 1/4 required");
            if (c == 0) refuse("geometric-convergence boundary x = 1/4");
            break;
        }
    }
    auto t0 = std::chrono::steady_clock::now();
    SeriesSpec spec = gf_series_spec(f, x);
    EvalResult lhs = eval_series_full(spec, digits);
    mpfr_prec_t prec = report_prec(digits);
    Ball rhs = gf_function_side(f, real::eval_quadext(x, prec + 32), prec);
    return make_report(spec.id, digits, lhs.terms, std::move(lhs.value), std::move(rhs),
                       t0);
}

std::vector<ProfilePoint> profile(const std::string& id, long terms) {
    const SeriesSpec* spec = find(id);
    if (spec == nullptr) throw std::out_of_range("unknown catalog id: " + id);
    std::vector<ProfilePoint> points;
    if (terms <= 0) return points;

    double rho = estimate_rho(*spec);
    double rate = rho < 1.0 ? -std::log10(rho) : 0.0;
    long wp_digits =
        std::min<long>(40 + static_cast<long>(rate * static_cast<double>(terms)), 20000);
    mpfr_prec_t wp = working_prec(wp_digits, static_cast<double>(terms));

    Ball rhs = cf::eval(spec->rhs, wp);

    // 1-2-3-5-7 checkpoint ladder plus the final term count
    std::vector<long> checkpoints;
    static const long steps[] = {1, 2, 3, 5, 7};
    for (long scale = 1; scale <= terms; scale *= 10) {
        for (long s : steps) {
            long c = s * scale;
            if (c <= terms) checkpoints.push_back(c);
        }
    }
    if (checkpoints.empty() || checkpoints.back() != terms) checkpoints.push_back(terms);

    BallTermGen gen(*spec, wp);
    Ball sum = Ball::zero();
    std::size_t ci = 0;
    Rad up;
    for (long count = 1; count <= terms && ci < checkpoints.size(); ++count) {
        sum = Ball::add(sum, gen.term(), wp);
        if (count == checkpoints[ci]) {
            Ball diff = Ball::sub(sum, rhs, wp);
            diff.abs_upper(up.t);
            double digits;
            double err = mpfr_get_d(up.t, MPFR_RNDN);
            if (mpfr_zero_p(up.t)) {
                digits = static_cast<double>(wp_digits);
            } else if (err > 0.0 && std::isfinite(err)) {
                digits = -std::log10(err);
            } else {
                // get_d under/overflowed; fall back on the binary exponent
                digits = -static_cast<double>(mpfr_get_exp(up.t)) * 0.3010299956639812;
            }
            if (digits < 0) digits = 0;
            points.push_back({count, digits});
            ++ci;
        }
        gen.advance();
    }
    return points;
}

} // namespace constforge::series
