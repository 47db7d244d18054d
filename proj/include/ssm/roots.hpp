#pragma once

#include "ssm/ball.hpp"
#include "ssm/poly.hpp"

#include <vector>

namespace ssm {

// All complex roots of a squarefree integer polynomial as certified balls:
// each ball contains exactly one root, underlying discs are pairwise disjoint
// with a 3x separation margin, real roots carry an exact zero imaginary part.
// Retries internally with doubled precision up to kPrecCap, then throws
// PrecisionExhausted.
std::vector<ComplexBall> isolate_roots(const ZPoly& p, mpfr_prec_t prec = kDefaultPrec);

// Shrink a certified isolating ball to roughly 2^-(prec) relative radius.
// The returned ball is contained in the input ball.
ComplexBall refine_root(const ZPoly& p, const ComplexBall& isolating, mpfr_prec_t prec);

} // namespace ssm
