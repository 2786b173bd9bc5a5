#include "constforge/power_series.hpp"

#include "constforge/sequences.hpp"

#include <algorithm>
#include <stdexcept>

namespace constforge::ps {

PowerSeries::PowerSeries(long order) {
    if (order < 0) throw std::invalid_argument("power series order must be >= 0");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, BigRational(0));
}

const BigRational& PowerSeries::coeff(long i) const {
    if (i < 0 || i > order()) throw std::out_of_range("power series coefficient index");
    return coeffs_[static_cast<std::size_t>(i)];
}

void PowerSeries::set_coeff(long i, const BigRational& v) {
    if (i < 0 || i > order()) throw std::out_of_range("power series coefficient index");
    coeffs_[static_cast<std::size_t>(i)] = v;
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    PowerSeries out(std::min(order(), o.order()));
    for (long i = 0; i <= out.order(); ++i)
        out.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return out;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    PowerSeries out(std::min(order(), o.order()));
    for (long i = 0; i <= out.order(); ++i)
        out.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return out;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    // naive O(N^2) Cauchy product; orders stay small here
    PowerSeries out(std::min(order(), o.order()));
    for (long i = 0; i <= out.order(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (long j = 0; i + j <= out.order() && j <= o.order(); ++j) {
            if (o.coeffs_[j] == 0) continue;
            out.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return out;
}

PowerSeries PowerSeries::scaled(const BigRational& c) const {
    PowerSeries out(order());
    for (long i = 0; i <= order(); ++i) out.coeffs_[i] = coeffs_[i] * c;
    return out;
}

PowerSeries ps_sin(long order) {
    if (order < 1) throw std::invalid_argument("ps_sin: order must be >= 1");
    PowerSeries s(order);
    BigRational c(1); // 1/(2m+1)! with alternating sign
    for (long m = 0; 2 * m + 1 <= order; ++m) {
        if (m > 0) {
            c /= BigRational(BigInt(2 * m) * (2 * m + 1));
            c = -c;
        }
        s.set_coeff(2 * m + 1, c);
    }
    return s;
}

PowerSeries ps_sinh(long order) {
    if (order < 1) throw std::invalid_argument("ps_sinh: order must be >= 1");
    PowerSeries s(order);
    BigRational c(1);
    for (long m = 0; 2 * m + 1 <= order; ++m) {
        if (m > 0) c /= BigRational(BigInt(2 * m) * (2 * m + 1));
        s.set_coeff(2 * m + 1, c);
    }
    return s;
}

PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b) { return a * b; }

PowerSeries ps_pow(const PowerSeries& a, unsigned long e) {
    PowerSeries out(a.order());
    out.set_coeff(0, BigRational(1));
    for (unsigned long i = 0; i < e; ++i) out = out * a;
    return out;
}

namespace {

/// Core of the (2.2)/(2.3) checks: builds
///   trig(z) * sum_{k>=1} C(2k,k) w(k)/(2k+1) * base(z)^k
/// where base = (sin^2 z)/4 or -(sinh^2 z)/4, and compares against
/// target_coeff * z^3 through z^order.
CheckResult check_sin_identity(long order, bool hyperbolic,
                               const std::function<BigRational(long)>& weight) {
    if (order < 3) throw std::invalid_argument("identity check needs order >= 3");
    PowerSeries trig = hyperbolic ? ps_sinh(order) : ps_sin(order);
    PowerSeries base = (trig * trig).scaled(make_rational(1, 4));
    if (hyperbolic) base = base.scaled(BigRational(-1));

    PowerSeries inner(order);
    PowerSeries power(order);
    power.set_coeff(0, BigRational(1));
    for (long k = 1; 2 * k + 1 <= order; ++k) {
        power = power * base; // memoized previous power
        BigRational c = BigRational(seq::central_binom(static_cast<std::size_t>(k))) *
                        weight(k) / BigRational(2 * k + 1);
        inner = inner + power.scaled(c);
    }
    PowerSeries lhs = trig * inner;

    BigRational target = make_rational(hyperbolic ? -1 : 1, 6);
    for (long i = 0; i <= order; ++i) {
        BigRational expect = (i == 3) ? target : BigRational(0);
        if (lhs.coeff(i) != expect) return {false, i};
    }
    return {true, -1};
}

PowerSeries inner_sum(long order, bool hyperbolic) {
    PowerSeries trig = hyperbolic ? ps_sinh(order) : ps_sin(order);
    PowerSeries base = (trig * trig).scaled(make_rational(1, 4));
    if (hyperbolic) base = base.scaled(BigRational(-1));
    PowerSeries inner(order);
    PowerSeries power(order);
    power.set_coeff(0, BigRational(1));
    for (long k = 1; 2 * k <= order; ++k) {
        power = power * base;
        BigRational c = BigRational(seq::central_binom(static_cast<std::size_t>(k))) *
                        seq::hbar2(static_cast<std::size_t>(k)) / BigRational(2 * k + 1);
        inner = inner + power.scaled(c);
    }
    return inner;
}

} // namespace

CheckResult verify_2_2(long order) {
    return check_sin_identity(order, false,
                              [](long k) { return seq::hbar2(static_cast<std::size_t>(k)); });
}

CheckResult verify_2_2_weighted(long order,
                                const std::function<BigRational(long)>& weight) {
    return check_sin_identity(order, false, weight);
}

CheckResult verify_2_3(long order) {
    return check_sin_identity(order, true,
                              [](long k) { return seq::hbar2(static_cast<std::size_t>(k)); });
}

PowerSeries inner_sum_2_2(long order) { return inner_sum(order, false); }
PowerSeries inner_sum_2_3(long order) { return inner_sum(order, true); }

const BigRational& RatPolynomial::coeff(long i) const {
    static const BigRational zero(0);
    if (i < 0 || i > degree()) return zero;
    return coeffs_[static_cast<std::size_t>(i)];
}

void RatPolynomial::mul_linear(const BigRational& c) {
    coeffs_.push_back(BigRational(0));
    for (std::size_t i = coeffs_.size() - 1; i >= 1; --i)
        coeffs_[i] += c * coeffs_[i - 1];
}

CheckResult verify_product_coeff(long k_max) {
    if (k_max < 1) throw std::invalid_argument("verify_product_coeff: k_max >= 1");
    RatPolynomial p; // in t = a^2
    for (long k = 1; k <= k_max; ++k) {
        BigInt odd(2 * k - 1);
        p.mul_linear(make_rational(BigInt(-1), odd * odd));
        if (p.coeff(0) != 1) return {false, k};
        if (p.coeff(1) != -seq::hbar2(static_cast<std::size_t>(k))) return {false, k};
    }
    return {true, -1};
}

CheckResult verify_coeff_ratio(long k_max) {
    if (k_max < 1) throw std::invalid_argument("verify_coeff_ratio: k_max >= 1");
    // lhs_k = prod_{j=0}^{k-1} (1/2+j)^2 / (k! prod_{j=1}^{k} (1/2+j)),
    // maintained incrementally
    BigRational num(1), den(1);
    for (long k = 1; k <= k_max; ++k) {
        BigRational half_step = make_rational(2 * k - 1, 2); // 1/2 + (k-1)
        num *= half_step * half_step;
        den *= BigRational(k) * make_rational(2 * k + 1, 2); // k * (1/2 + k)
        BigRational lhs = num / den;

        BigInt four_k;
        mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
        BigRational rhs = make_rational(seq::central_binom(static_cast<std::size_t>(k)),
                                        BigInt(2 * k + 1) * four_k);
        if (lhs != rhs) return {false, k};
    }
    return {true, -1};
}

} // namespace constforge::ps
