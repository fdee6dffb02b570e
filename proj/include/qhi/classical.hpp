#pragma once

// Classical dilogarithms: Li2, Rogers L, Bloch-Wigner D, and the signed
// tetrahedral volume sum used as the volume-conjecture oracle.

#include "qhi/common.hpp"

namespace qhi::classical {

// Complex dilogarithm Li2 on the principal branch (series plus reflection
// and inversion identities, ~1e-14 before composition).
cx dilog(cx z);

// Rogers dilogarithm L(x) = Li2(x) + log(x)log(1-x)/2 - pi^2/6 on
// C minus ((-inf,0) u (1,+inf)).
cx rogers_L(cx x);

// |L(x) - L(y) + L(y/x) - L((1-1/x)/(1-1/y)) + L((1-x)/(1-y))|.
double five_term_residual(cx x, cx y);

// Bloch-Wigner D(w) = Im Li2(w) + log|w| arg(1-w).
double bloch_wigner(cx w);

}  // namespace qhi::classical
