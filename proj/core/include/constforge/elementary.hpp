#pragma once

#include "constforge/ball.hpp"

namespace constforge::real {

/// pi with radius <= 2^(2-prec), via Machin's formula
/// pi/4 = 4*arctan(1/5) - arctan(1/239). Deliberately independent of every
/// series the engine verifies.
Ball const_pi(mpfr_prec_t prec);

/// ln 2 = 2*atanh(1/3); shares the atanh reduction path with ln().
Ball const_ln2(mpfr_prec_t prec);

/// Taylor series after repeated halving arctan t = 2*arctan(t/(1+sqrt(1+t^2)))
/// until |t| < 1/8.
Ball arctan(const Ball& x, mpfr_prec_t prec);

/// ln y = 2*atanh((m-1)/(m+1)) + e*ln2 after binary reduction y = m*2^e.
/// Requires the ball to be entirely positive.
Ball ln(const Ball& x, mpfr_prec_t prec);

/// arcsin y = arctan(y / sqrt(1-y^2)) for balls strictly inside (-1,1);
/// exactly ±1 maps to ±pi/2.
Ball arcsin(const Ball& x, mpfr_prec_t prec);

/// arcsinh t = ln(t + sqrt(1+t^2)).
Ball arcsinh(const Ball& x, mpfr_prec_t prec);

enum class ElemFn { Ln, Arctan, Arcsin, Arcsinh };

Ball elem_fn(ElemFn fn, const Ball& x, mpfr_prec_t prec);

} // namespace constforge::real
