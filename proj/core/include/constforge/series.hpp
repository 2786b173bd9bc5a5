#pragma once

#include "constforge/ball.hpp"
#include "constforge/closed_form.hpp"
#include "constforge/quadext.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace constforge::series {

/// Raised when a certified evaluation is refused because the argument sits at
/// (or beyond) the geometric-convergence boundary. Such arguments are still
/// reachable in profile mode.
struct RefusedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Term families. The k-th term is weight(k) * hyper(k) * x^k with
///   InvCentralBinom:   hyper(k) = 1 / (k^m C(2k,k)),   m in {1, 2}
///   CentralBinomOdd:   hyper(k) = C(2k,k) / (2k+1)
///   CentralBinomPlain: hyper(k) = C(2k,k)
/// Baseline entries carry their own fixed classical term rule instead.
enum class Family { InvCentralBinom, CentralBinomOdd, CentralBinomPlain, Baseline };

/// Full weight applied to the hypergeometric part. The Fibonacci/Lucas kinds
/// include the harmonic companion their identities carry: even-index and u/v
/// weights multiply H2_{k-1}, odd-index weights multiply Hbar_k.
enum class Weight {
    One,
    H2Prev,       // H2_{k-1}
    HBar,         // Hbar_k
    Lucas2kH2,    // L_{2k}   * H2_{k-1}
    Fib2kH2,      // F_{2k}   * H2_{k-1}
    UkH2,         // u_k      * H2_{k-1}
    VkH2,         // v_k      * H2_{k-1}
    Fib2k1HBar,   // F_{2k+1} * Hbar_k
    Lucas2k1HBar, // L_{2k+1} * Hbar_k
};

enum class Baseline {
    None,
    Gosper,     // sum (25k-3) / (2^k C(3k,k))          = pi/2
    Zeilberger, // sum (21k-8) / (k^3 C(2k,k)^3)        = pi^2/6
    Bbb,        // sum 1 / (k^4 C(2k,k))                = 17 pi^4/3240
    Log2Accel,  // (2/3) sum 1 / ((2k+1) 9^k)           = ln 2
    Leibniz,    // sum (-1)^k / (2k+1)                  = pi/4      (slow)
    Zeta2,      // sum 1/k^2                            = pi^2/6    (slow)
    Zeta4,      // sum 1/k^4                            = pi^4/90   (slow)
    Log2Alt,    // sum (-1)^{k-1}/k                     = ln 2      (slow)
};

/// One cataloged series: term family, weight kind, argument, closed-form
/// right-hand side and convergence metadata.
struct SeriesSpec {
    std::string id;
    Family family = Family::Baseline;
    int m = 1; // InvCentralBinom only
    Weight weight = Weight::One;
    QuadExt x{BigRational(1)};
    cf::ExprPtr rhs;
    long k_start = 1;
    bool profile_only = false;
    Baseline baseline = Baseline::None;
    std::string formula; // printable left-hand side
};

struct EvalReport {
    std::string id;
    long digits = 0;
    long terms = 0;
    real::Ball lhs;
    real::Ball rhs;
    BigRational gap; // upper bound of |lhs.c - rhs.c| + both radii
    bool pass = false;
    long ms = 0;

    /// One JSON object, fixed key order, deterministic bytes modulo "ms".
    std::string to_json() const;
    std::string status() const { return pass ? "pass" : "fail"; }
};

/// The fixed catalog, in verification order.
const std::vector<SeriesSpec>& catalog();
const SeriesSpec* find(const std::string& id);

/// Exact full weight value at index k (test oracle and exact-prefix sums).
BigRational weight_value(Weight w, long k);

/// Certified rho with |t_{k+1}/t_k| <= rho for all k >= k0, or nullopt when
/// no geometric bound exists (argument at/beyond the convergence boundary).
std::optional<BigRational> tail_bound(const SeriesSpec& spec, long k0);

struct EvalResult {
    real::Ball value;
    long terms = 0;
};

/// Certified enclosure of the full sum with radius <= 10^{-digits+g} for a
/// small guard g. Throws RefusedError when tail_bound refuses and
/// std::invalid_argument for profile-only ids.
EvalResult eval_series_full(const SeriesSpec& spec, long digits);
real::Ball eval_series(const SeriesSpec& spec, long digits);

/// Ball of the partial sum of the first `terms` terms (no tail bound).
real::Ball partial_sum_ball(const SeriesSpec& spec, long terms, long digits);

/// Exact partial sums, computed independently of the ball path.
BigRational exact_partial_sum(const SeriesSpec& spec, long terms);
QuadExt exact_partial_sum_quad(const SeriesSpec& spec, long terms);

/// lhs = eval_series, rhs = eval_closed_form at matched precision;
/// pass iff the gap bound is below 10^{-(digits-10)}.
EvalReport verify_identity(const std::string& id, long digits);
std::vector<EvalReport> verify_all(long digits, int jobs = 1);

/// Generating-function spot checks at caller-supplied arguments.
enum class GfFamily { Gf14, Gf17, Gf110, Gf117, Gf21, Dk3, Dk4 };

std::optional<GfFamily> parse_gf_family(const std::string& name);
std::string gf_family_name(GfFamily f);

/// Series-side spec for the family at argument x (no domain checks here so
/// that boundary arguments can still be probed with tail_bound).
SeriesSpec gf_series_spec(GfFamily f, const QuadExt& x);

/// Function side built from ball primitives.
real::Ball gf_function_side(GfFamily f, const real::Ball& x, mpfr_prec_t prec);

/// Checks the series side against the function side at the given argument.
/// Throws DomainError outside the open certified domain and RefusedError at
/// the geometric boundary.
EvalReport gf_check(GfFamily f, const QuadExt& x, long digits);

struct ProfilePoint {
    long k = 0;
    double correct_digits = 0.0;
};

/// Partial-sum accuracy at log-spaced checkpoints against the closed form.
std::vector<ProfilePoint> profile(const std::string& id, long terms);

} // namespace constforge::series
