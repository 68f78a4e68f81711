#pragma once

#include <span>
#include <vector>

#include "sinfrac/core.hpp"

// Symmetric-polynomial kernels and the generating-function coefficient
// sequences built from them (upper/lower series coefficients of the
// sine ratio, power-series coefficients of the node rational function,
// and the entire-part coefficients of the general numerator expansion).

namespace sinfrac {

// e_0..e_upto of the given values; e_k = 0 for k > values.size().
// Stable one-value-at-a-time update e <- e + x * shift(e).
std::vector<Complex> elementary_symmetric(std::span<const Complex> values, int upto);

// h_0..h_upto via the convolution recurrence of prod (1 - x*g)^{-1};
// agrees with the sum over degree-k multisets.
std::vector<Complex> complete_homogeneous(std::span<const Complex> values, int upto);

enum class Sign { Plus, Minus };

// i^p for any integer p (exact quadrant lookup).
Complex pow_i(int p);

// (2i)^p (sign Plus) or (-2i)^p (sign Minus), exact: power of two times
// a quadrant unit. Avoids transcendental roundoff in leading constants.
Complex pow_2i(int p, Sign sign = Sign::Plus);

// e^{s*2i*v_j} for each phase, s = +1 (Plus) or -1 (Minus).
std::vector<Complex> harmonic_args(const PhaseVector& v, Sign sign);

// Upper half-plane series coefficients of prod sin(a-z)/prod sin(b-z):
// the ratio equals sum_{j>=0} C_j e^{i(-kappa+2j)z} for Im z large, with
// C_0 = (2i)^{-kappa} e^{i nu} and
// C_j = C_0 sum_{k+l=j} (-1)^k e_k(e^{-2ia}) h_l(e^{-2ib}).
SeriesCoefficients braaksma_C(const PhaseVector& a, const PhaseVector& b, int upto);

// Lower half-plane counterpart, indexed j <= kappa:
// ratio = sum_{j<=kappa} D_j e^{i(-kappa+2j)z} for Im z very negative,
// D_kappa = (-2i)^{-kappa} e^{-i nu} and
// D_{kappa-j} = D_kappa sum_{k+l=j} (-1)^k e_k(e^{2ia}) h_l(e^{2ib}).
SeriesCoefficients braaksma_D(const PhaseVector& a, const PhaseVector& b, int downto);

// Taylor coefficients (index m >= 0) of
//   prod_j (1 - z e^{2i a_j}) / prod_j (1 - z e^{2i b_j})   (conjugated=false)
// or with both exponent signs flipped (conjugated=true). These satisfy
// Omega_m = D_{kappa-m}/D_kappa and OmegaBar_m = C_m/C_0.
SeriesCoefficients omega(const PhaseVector& a, const PhaseVector& b, int upto,
                         bool conjugated);

// Entire-part coefficient sequence of the general numerator expansion
// over n+1 nodes b: E_j = (s*2i)^{n+1} h_j(e^{s*2i b_0},...) e^{s*i B},
// B = sum b_k, s = +/-1 by sign.
SeriesCoefficients entire_E(const PhaseVector& b, int upto, Sign sign);

// F_k = sum_{j=0}^{floor((m-n-k-1)/2)} c_{s(2j+k+n+1)} E_j for the
// numerator T of degree m over n+1 nodes; empty sums are zero (in
// particular F_k = 0 whenever m <= n + k).
Complex entire_F(const LaurentTrigPoly& T, const PhaseVector& b, int k, Sign sign);

}  // namespace sinfrac
