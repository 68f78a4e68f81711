#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sinfrac/core.hpp"
#include "sinfrac/sympoly.hpp"

// One builder per identity family. Every builder returns a canonical
// ClosedFormExpansion whose evaluation equals the corresponding ratio,
// or a (lhs, rhs) pair of finite sums for the bare coefficient
// identities. Phase vectors are 0-based throughout; where a classical
// display counts nodes 1..n this maps to b[0..n-1], and where it counts
// 0..n the node count is b.size() = n+1.

namespace sinfrac {

// Partial fractions of w^{m+n} / prod_{k=0}^{n} (w^2 - gamma_k^2) in the
// w-domain, with the free integer split parameter theta (<= m+n, same
// parity as m+n): a Laurent-polynomial part with complete-homogeneous
// coefficients and one simple term per node,
//   gamma_k^{m+n-theta} w^theta / (prod_{j!=k}(gamma_k^2-gamma_j^2) (w^2-gamma_k^2)).
struct WDomainExpansion {
  int m = 0;
  int theta = 0;
  std::vector<Complex> gammas;
  std::vector<std::pair<int, Complex>> poly;  // (exponent, coefficient)
  std::vector<Complex> pole_coeffs;           // per node k

  Complex eval(Complex w) const;
  // The rational function being expanded.
  Complex lhs(Complex w) const;
};

WDomainExpansion monomial_expand(int m, int theta, std::span<const Complex> gammas);

// Partial fractions of P(e^{iz}) / prod_{k=0}^{n} sin(z - b_k) for a
// Laurent polynomial P of degree <= n+1 (chu_expand) or <= n+1+excess,
// excess in {1,2,3} (chu_extended_expand). The entire part carries one
// exponential term per surviving power of w; each node contributes the
// canonical phase-0 / phase(-1) pole pair.
ClosedFormExpansion chu_expand(const LaurentTrigPoly& P, const PhaseVector& b);
ClosedFormExpansion chu_extended_expand(const LaurentTrigPoly& P, const PhaseVector& b,
                                        int excess);

// Two-sided expansion of prod sin(a-z) / prod sin(b-z) with split index k:
//   sum_{j=0}^{k-1} C_j e^{i(-kappa+2j)z} + sum_{j=k}^{kappa} D_j e^{i(-kappa+2j)z}
//   + pole terms with phase 2k - kappa - 1.
// Valid for every integer k; empty coefficient ranges are allowed.
ClosedFormExpansion braaksma_expand(const PhaseVector& a, const PhaseVector& b, int k);

// Both sides of the node-sum identity
//   (2i)^{kappa+1} sum_t e^{(-kappa+2k) i b_t} sin(a-b_t)/sin(b_[t]-b_t)
//     = e^{i nu} OmegaBar_{kappa-k} - (-1)^kappa e^{-i nu} Omega_k
// for any integer k (Omega at negative index is zero).
std::pair<Complex, Complex> meijer_lemma3(const PhaseVector& a, const PhaseVector& b,
                                          int k);

// Both sides of the reflection-sum identity for kappa <= -1 and
// 0 <= k <= -kappa-1:
//   sum_t e^{(kappa+2k+1) i (z-b_t)} sin(a-b_t)/(sin(b_[t]-b_t) sin(z-b_t))
//     = -prod sin(a-z)/prod sin(b-z).
std::pair<Complex, Complex> meijer_lemma4_check(const PhaseVector& a,
                                                const PhaseVector& b, int k, Complex z);

enum class Variant { M, P, PM };

// Expansion of T(z) / prod_{k=0}^{n} sin(z - b_k) for an arbitrary
// Laurent trigonometric polynomial T of degree m. The three variants
// carry the same entire part F_k^{+-} (variant P adds the k = 0 pair,
// variant PM its average) and differ in the per-node pole phases:
// variant M uses the parity phase nu_{t,n} per numerator harmonic t,
// variant P its negative, and variant PM the averaged cosine form with
// the even/odd harmonic parts of T at the nodes.
ClosedFormExpansion general_expand(const LaurentTrigPoly& T, const PhaseVector& b,
                                   Variant variant);

// Specialization with numerator prod_{t=0}^{r} sin(z - a_t). Entire part
// built directly from elementary/complete symmetric sums of e^{+-2i a},
// e^{+-2i b} (an independent route from general_expand); pole terms are
// plain 1/sin for odd kappa and cotangent pairs for even kappa.
ClosedFormExpansion sine_product_expand(const PhaseVector& a, const PhaseVector& b);

enum class SeriesForm { Cos, Sin };

// Expansion of T_c(z) = c_0/2 + sum_{t>=1} c_t cos(tz) (Cos) or
// T_s(z) = sum_{t>=1} c_t sin(tz) (Sin) over the nodes b, built by
// symmetrizing c_{-t} := +-c_t and halving the general entire part; the
// pole numerators keep the cos/sin pairing of the two phase choices.
ClosedFormExpansion cos_sin_series_expand(SeriesForm form, std::span<const double> coeffs,
                                          const PhaseVector& b);

enum class ResidueKind { Sumres1, Sumres3, Exotic, Kappa2Im, EvenKappaSine };

// Residue-at-infinity and related finite-sum identities; both sides are
// returned so the verifier owns the tolerance. Sumres1/Sumres3 take the
// numerator P (degree <= n+3 resp. n+4 over n+1 nodes); the other kinds
// take the numerator phase vector a with the size constraint of each
// identity (len(a) = len(b)+1 for Exotic, +2 for Kappa2Im, +2*lambda for
// EvenKappaSine).
std::pair<Complex, Complex> residue_identity(ResidueKind kind, const LaurentTrigPoly& P,
                                             const PhaseVector& b);
std::pair<Complex, Complex> residue_identity(ResidueKind kind, const PhaseVector& a,
                                             const PhaseVector& b);

// Parity phase of numerator harmonic t over n+1 nodes:
// sign(t) * ((t + n) mod 2) with sign(0) = +1.
int parity_phase(int t, int n);

}  // namespace sinfrac
