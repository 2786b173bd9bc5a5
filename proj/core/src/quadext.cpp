#include "constforge/quadext.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace constforge {

namespace {

bool valid_d(int d) { return d == 0 || d == 2 || d == 3 || d == 5; }

// strips surrounding whitespace
std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

QuadExt::QuadExt(const BigInt& a, const BigInt& b, const BigInt& c, int d)
    : a_(a), b_(b), c_(c), d_(d) {
    if (!valid_d(d)) throw std::domain_error("QuadExt: d must be one of {0,2,3,5}");
    if (c == 0) throw std::domain_error("QuadExt: zero denominator");
    if (d == 0 && b != 0) throw std::domain_error("QuadExt: b must be 0 when d = 0");
    canonicalize();
}

QuadExt::QuadExt(const BigRational& q)
    : a_(q.get_num()), b_(0), c_(q.get_den()), d_(0) {}

QuadExt QuadExt::sqrt_of(int d) {
    if (!valid_d(d)) throw std::domain_error("QuadExt: d must be one of {0,2,3,5}");
    if (d == 0) return QuadExt();
    return QuadExt(BigInt(0), BigInt(1), BigInt(1), d);
}

void QuadExt::canonicalize() {
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    if (b_ == 0) d_ = 0;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
    if (g > 1) {
        mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(c_.get_mpz_t(), c_.get_mpz_t(), g.get_mpz_t());
    }
}

void QuadExt::require_same_field(const QuadExt& x, const QuadExt& y) {
    if (x.d_ != 0 && y.d_ != 0 && x.d_ != y.d_)
        throw std::domain_error("QuadExt: mixing different surd fields");
}

BigRational QuadExt::rational() const {
    if (!is_rational()) throw std::domain_error("QuadExt: not a rational value");
    return make_rational(a_, c_);
}

QuadExt QuadExt::operator-() const {
    QuadExt r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
    require_same_field(*this, o);
    int d = d_ != 0 ? d_ : o.d_;
    return QuadExt(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d);
}

QuadExt QuadExt::operator-(const QuadExt& o) const { return *this + (-o); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
    require_same_field(*this, o);
    int d = d_ != 0 ? d_ : o.d_;
    BigInt na = a_ * o.a_ + b_ * o.b_ * (d_ != 0 && o.d_ != 0 ? d_ : 0);
    BigInt nb = a_ * o.b_ + b_ * o.a_;
    return QuadExt(na, nb, c_ * o.c_, d);
}

QuadExt QuadExt::operator*(const BigRational& q) const {
    return QuadExt(a_ * q.get_num(), b_ * q.get_num(), c_ * q.get_den(), d_);
}

QuadExt QuadExt::reciprocal() const {
    if (is_zero()) throw std::domain_error("QuadExt: reciprocal of zero");
    // 1/((a+b sqrt d)/c) = c (a - b sqrt d) / (a^2 - b^2 d)
    BigInt norm = a_ * a_ - b_ * b_ * d_;
    return QuadExt(c_ * a_, -c_ * b_, norm, d_);
}

QuadExt QuadExt::operator/(const QuadExt& o) const { return *this * o.reciprocal(); }

bool QuadExt::operator==(const QuadExt& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

QuadExt QuadExt::pow(unsigned long e) const {
    QuadExt result{BigRational(1)};
    QuadExt base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

int QuadExt::sign() const {
    int sa = mpz_sgn(a_.get_mpz_t());
    int sb = mpz_sgn(b_.get_mpz_t());
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 d
    BigInt lhs = a_ * a_;
    BigInt rhs = b_ * b_ * d_;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0; // impossible for non-square d unless b = 0
    return (c > 0) ? sa : sb;
}

int QuadExt::compare(const BigRational& q) const {
    return (*this - QuadExt(q)).sign();
}

std::size_t QuadExt::coeff_bits() const {
    std::size_t bits = mpz_sizeinbase(a_.get_mpz_t(), 2);
    bits = std::max(bits, mpz_sizeinbase(b_.get_mpz_t(), 2));
    bits = std::max(bits, mpz_sizeinbase(c_.get_mpz_t(), 2));
    return bits;
}

double QuadExt::approx() const {
    double av = mpz_get_d(a_.get_mpz_t());
    double bv = mpz_get_d(b_.get_mpz_t());
    double cv = mpz_get_d(c_.get_mpz_t());
    return (av + bv * std::sqrt(static_cast<double>(d_))) / cv;
}

std::string QuadExt::str() const {
    if (is_rational()) {
        BigRational q = rational();
        return q.get_str();
    }
    std::string s = "(" + a_.get_str();
    if (b_ >= 0) s += "+";
    s += b_.get_str() + "*sqrt(" + std::to_string(d_) + "))";
    if (c_ != 1) s += "/" + c_.get_str();
    return s;
}

std::optional<QuadExt> QuadExt::parse(const std::string& text) {
    std::string s = trimmed(text);
    if (s.empty()) return std::nullopt;

    try {
        if (s.front() == '(') {
            std::size_t close = s.rfind(')');
            if (close == std::string::npos) return std::nullopt;
            std::string inner = s.substr(1, close - 1);
            std::string rest = trimmed(s.substr(close + 1));
            BigInt c(1);
            if (!rest.empty()) {
                if (rest.front() != '/') return std::nullopt;
                c = BigInt(trimmed(rest.substr(1)));
            }
            // inner: a+b*sqrt(d) or a-b*sqrt(d)
            std::size_t sq = inner.find("sqrt(");
            if (sq == std::string::npos) return std::nullopt;
            std::size_t sq_close = inner.find(')', sq);
            if (sq_close == std::string::npos) return std::nullopt;
            int d = std::stoi(inner.substr(sq + 5, sq_close - sq - 5));
            std::string head = trimmed(inner.substr(0, sq));
            // strip the trailing '*' of "b*"
            if (!head.empty() && head.back() == '*') head.pop_back();
            // split head into a and b at the last top-level +/- (skip index 0 sign)
            std::size_t split = std::string::npos;
            for (std::size_t i = head.size(); i-- > 1;) {
                if (head[i] == '+' || head[i] == '-') {
                    split = i;
                    break;
                }
            }
            BigInt a(0), b(1);
            if (split == std::string::npos) {
                // bare "sqrt(d)" or "b*sqrt(d)"
                if (!trimmed(head).empty()) b = BigInt(trimmed(head));
            } else {
                a = BigInt(trimmed(head.substr(0, split)));
                std::string bs = trimmed(head.substr(split + 1));
                BigInt mag = bs.empty() ? BigInt(1) : BigInt(bs);
                b = (head[split] == '-') ? -mag : mag;
            }
            return QuadExt(a, b, c, d);
        }
        if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
            int d = std::stoi(s.substr(5, s.size() - 6));
            return sqrt_of(d);
        }
        if (auto q = parse_rational(s)) return QuadExt(*q);
        return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace constforge
