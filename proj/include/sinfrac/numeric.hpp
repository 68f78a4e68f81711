#pragma once

#include <cstdint>
#include <vector>

#include "sinfrac/core.hpp"

// Sampling plans, pole guards, error metrics, condition estimation and
// the Fourier-fit coefficient oracle used by all pointwise comparisons.

namespace sinfrac {

// Deterministic PRNG with explicit bit-level double generation so that
// results are reproducible across standard library implementations.
// Independent streams derive from (seed, stream_index).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0);

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);
  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi);
  Complex complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi);

 private:
  std::uint64_t state_;
};

struct SamplePlan {
  int count = 64;
  double re_min = -kPi;
  double re_max = kPi;
  double im_band = kDefaultImBand;  // Im z in [-im_band, im_band]
  double pole_guard = kDefaultPoleGuard;
  std::uint64_t seed = 0;
};

// Deterministic low-discrepancy points in the plan's rectangle, rejection
// filtered so every point keeps |sin(z - b_k)| >= sin(pole_guard) for all
// nodes. The first min(4, count) points are fixed probes (shifted
// minimally if the guard or band demands it); the remainder comes from a
// seed-rotated Halton sequence. Throws RegionExhausted when the rejection
// rate exceeds 99%.
std::vector<Complex> sample_points(const SamplePlan& plan, const PhaseVector& b);

// |x - y| / (1 + max(|x|, |y|)); tolerant of identities passing through
// zeros.
double rel_error(Complex x, Complex y);

struct ConditionEstimate {
  double min_node_separation = 0.0;   // min |sin(b_j - b_k)|
  double pole_coeff_magnitude = 1.0;  // max_k |1 / prod_{j!=k} sin(b_k - b_j)|
  double digits_lost = 0.0;           // log10 of the above, floored at 0
};

ConditionEstimate estimate_condition(const PhaseVector& b);

// Shrinks the sampling band so max_freq * band <= kMaxFreqTimesBand.
double clamp_im_band(int max_freq, double band = kDefaultImBand);

// Sampling band for comparisons at tolerance tol: cancellation among
// terms of magnitude up to max_coeff * e^{max_freq * Y} costs about
// eps * max_coeff * e^{max_freq * Y} absolute error, so Y is shrunk
// until that stays two orders below tol (never under a 0.5 floor, so
// exponential terms still vary across the band).
double band_for_precision(int max_freq, double max_coeff, double tol,
                          double band = kDefaultImBand);

enum class HalfPlane { Upper, Lower };

// Height of the default sampling line for the series-coefficient fit.
// The j-th coefficient contributes ~e^{-2 j h} at height h, so recovering
// it amplifies sample noise by e^{+2 j h}; h = 0.25 keeps that factor
// below ~2e3 for j <= 15 while the 1024-point DFT's aliasing error
// ~e^{-2*1024*h} is far below double precision.
inline constexpr double kFitHeight = 0.25;
inline constexpr int kFitSamples = 1024;

// Independent oracle for the series coefficients of the sine ratio.
// Samples F(z) = prod sin(a-z)/prod sin(b-z) on the line Im z = +height
// (Upper) or -height (Lower), Re z equispaced over one period, and
// recovers the leading `count` Fourier coefficients of F(z) e^{i kappa z}
// (resp. e^{-i kappa z}) by DFT. Returns estimates of C_0..C_{count-1}
// (Upper) or D_kappa..D_{kappa-count+1} (Lower).
//
// Throws IllConditioned when the requested (count, height) cannot reach
// 1e-8 absolute accuracy: the noise amplification bound
// eps * max|samples| * e^{2(count-1) height} must stay below 1e-8, and
// refits over a widened window must agree to the same level. In
// particular only count = 1 is admissible on lines as high as |Im z| = 20
// (where the leading-coefficient truncation error is ~e^{-40}).
SeriesCoefficients fit_series_coefficients(const PhaseVector& a, const PhaseVector& b,
                                           HalfPlane half_plane, int count,
                                           double height = kFitHeight);

}  // namespace sinfrac
