#pragma once

#include "constforge/rational.hpp"

#include <functional>
#include <vector>

namespace constforge::ps {

/// Truncated univariate power series with exact rational coefficients.
/// The truncation order is explicit; multiplication truncates to the smaller
/// operand order. All arithmetic is exact.
class PowerSeries {
public:
    explicit PowerSeries(long order);

    long order() const { return static_cast<long>(coeffs_.size()) - 1; }
    const BigRational& coeff(long i) const;
    void set_coeff(long i, const BigRational& v);

    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator*(const PowerSeries& o) const; // order = min of operands
    PowerSeries scaled(const BigRational& c) const;
    bool operator==(const PowerSeries& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<BigRational> coeffs_; // coefficient of z^0 .. z^order
};

/// Taylor prefixes of sin and sinh through z^order, exact.
PowerSeries ps_sin(long order);
PowerSeries ps_sinh(long order);

/// Exact Cauchy product / repeated product, truncated.
PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_pow(const PowerSeries& a, unsigned long e);

struct CheckResult {
    bool ok = false;
    long first_bad = -1; // failing coefficient index (z-power or k), -1 if ok
};

/// sin z * sum_k C(2k,k) w(k)/(2k+1) (sin^2 z / 4)^k == z^3/6 through z^order.
/// The weight defaults to Hbar_k; injectable for mutation tests.
CheckResult verify_2_2(long order);
CheckResult verify_2_2_weighted(long order,
                                const std::function<BigRational(long)>& weight);

/// sinh variant with argument -(sinh^2 z)/4 and target -z^3/6.
CheckResult verify_2_3(long order);

/// Inner sums above without the final sin/sinh factor, for substitution
/// coherence checks (the z -> iz relation between them).
PowerSeries inner_sum_2_2(long order);
PowerSeries inner_sum_2_3(long order);

/// Polynomial in t = a^2 with exact rational coefficients.
class RatPolynomial {
public:
    RatPolynomial() : coeffs_{BigRational(1)} {}
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const BigRational& coeff(long i) const;
    /// Multiply by (1 + c t).
    void mul_linear(const BigRational& c);

private:
    std::vector<BigRational> coeffs_;
};

/// For each k <= k_max: the t-coefficient of prod_{j=1}^{k} (1 - t/(2j-1)^2)
/// equals -Hbar_k, and the constant term is 1. first_bad is the failing k.
CheckResult verify_product_coeff(long k_max);

/// For each k <= k_max, exactly:
/// prod_{j=0}^{k-1} (1/2+j)^2 / (k! prod_{j=1}^{k} (1/2+j)) = C(2k,k)/((2k+1)4^k)
CheckResult verify_coeff_ratio(long k_max);

} // namespace constforge::ps
