#include "sinfrac/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sinfrac {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_index) {
  std::uint64_t x = seed;
  (void)splitmix64(x);
  x ^= 0xA0761D6478BD642Full * (stream_index + 1);
  (void)splitmix64(x);
  state_ = x;
}

std::uint64_t RandomStream::next_u64() { return splitmix64(state_); }

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

int RandomStream::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

Complex RandomStream::complex_in_box(double re_lo, double re_hi, double im_lo,
                                     double im_hi) {
  const double re = uniform(re_lo, re_hi);
  const double im = uniform(im_lo, im_hi);
  return {re, im};
}

namespace {

double halton(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return r;
}

bool point_clears_all(Complex z, const PhaseVector& b, double guard) {
  for (int k = 0; k < b.size(); ++k) {
    if (!clears_pole(z, b[k], guard)) return false;
  }
  return true;
}

}  // namespace

std::vector<Complex> sample_points(const SamplePlan& plan, const PhaseVector& b) {
  if (plan.count < 1) throw RangeViolation("sample plan needs count >= 1");
  if (plan.pole_guard <= 0.0 || plan.pole_guard >= kPi / 2) {
    throw RangeViolation("pole guard must lie in (0, pi/2)");
  }
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(plan.count));

  auto clamp_im = [&](double y) {
    return std::clamp(y, -plan.im_band, plan.im_band);
  };

  // Fixed regression probes; nudged along the real axis until guarded.
  const Complex probes[4] = {{1.0, 0.5}, {-2.0, 1.0}, {0.1, -1.5}, {kPi / 3, 0.0}};
  for (int p = 0; p < 4 && static_cast<int>(out.size()) < plan.count; ++p) {
    Complex z(probes[p].real(), clamp_im(probes[p].imag()));
    int tries = 0;
    while (!point_clears_all(z, b, plan.pole_guard) && tries < 64) {
      z += Complex(2.1 * plan.pole_guard, 0.0);
      ++tries;
    }
    if (tries == 64) throw RegionExhausted("could not place a fixed probe off the poles");
    out.push_back(z);
  }

  std::uint64_t s = plan.seed;
  const double u0 = static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
  const double v0 = static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;

  std::uint64_t attempts = 0;
  std::uint64_t i = 0;
  while (static_cast<int>(out.size()) < plan.count) {
    ++i;
    ++attempts;
    const double u = std::fmod(halton(i, 2) + u0, 1.0);
    const double v = std::fmod(halton(i, 3) + v0, 1.0);
    const Complex z(plan.re_min + u * (plan.re_max - plan.re_min),
                    -plan.im_band + v * 2.0 * plan.im_band);
    if (point_clears_all(z, b, plan.pole_guard)) {
      out.push_back(z);
    }
    const std::uint64_t accepted = out.size();
    if (attempts >= 200 && accepted * 100 < attempts) {
      throw RegionExhausted("pole guard rejects more than 99% of the sample region");
    }
  }
  return out;
}

double rel_error(Complex x, Complex y) {
  return std::abs(x - y) / (1.0 + std::max(std::abs(x), std::abs(y)));
}

ConditionEstimate estimate_condition(const PhaseVector& b) {
  ConditionEstimate est;
  if (b.size() < 2) {
    est.min_node_separation = std::numeric_limits<double>::infinity();
    est.pole_coeff_magnitude = 1.0;
    est.digits_lost = 0.0;
    return est;
  }
  est.min_node_separation = b.min_sine_separation();
  double worst = 0.0;
  for (int k = 0; k < b.size(); ++k) {
    worst = std::max(worst, 1.0 / std::abs(node_gap_product(b, k)));
  }
  est.pole_coeff_magnitude = worst;
  est.digits_lost = std::log10(std::max(1.0, worst));
  return est;
}

double clamp_im_band(int max_freq, double band) {
  if (max_freq <= 0) return band;
  return std::min(band, kMaxFreqTimesBand / static_cast<double>(max_freq));
}

double band_for_precision(int max_freq, double max_coeff, double tol, double band) {
  const double capped = clamp_im_band(max_freq, band);
  if (max_freq <= 0) return capped;
  const double eps = std::numeric_limits<double>::epsilon();
  const double budget = 0.01 * tol / (eps * std::max(1.0, max_coeff));
  const double lo = std::min(0.5, capped);
  if (budget <= 1.0) return lo;
  const double precise = std::log(budget) / static_cast<double>(max_freq);
  return std::clamp(precise, lo, capped);
}

SeriesCoefficients fit_series_coefficients(const PhaseVector& a, const PhaseVector& b,
                                           HalfPlane half_plane, int count,
                                           double height) {
  if (count < 1 || count > 16) throw RangeViolation("fit count must be in [1, 16]");
  if (height < 0.05) throw RangeViolation("fit height must be >= 0.05");
  const int kap = kappa(a, b);
  const double y = half_plane == HalfPlane::Upper ? height : -height;
  const Complex i(0.0, 1.0);
  const double sgn = half_plane == HalfPlane::Upper ? 1.0 : -1.0;

  auto dft = [&](int window) {
    // Column j of the design matrix is e^{sgn*2ij x} scaled by e^{-2j h};
    // equispaced samples make the least-squares solve an exact DFT.
    std::vector<Complex> samples(kFitSamples);
    double gmax = 0.0;
    for (int s = 0; s < kFitSamples; ++s) {
      const double x = kPi * static_cast<double>(s) / kFitSamples;
      const Complex z(x, y);
      const Complex g =
          sin_nodes_minus(a, z) / sin_nodes_minus(b, z) * std::exp(sgn * i * double(kap) * z);
      samples[static_cast<size_t>(s)] = g;
      gmax = std::max(gmax, std::abs(g));
    }
    std::vector<Complex> coeffs(static_cast<size_t>(window));
    for (int j = 0; j < window; ++j) {
      Complex acc(0.0);
      for (int s = 0; s < kFitSamples; ++s) {
        const double x = kPi * static_cast<double>(s) / kFitSamples;
        acc += samples[static_cast<size_t>(s)] * std::exp(-sgn * i * 2.0 * double(j) * x);
      }
      acc /= static_cast<double>(kFitSamples);
      coeffs[static_cast<size_t>(j)] = acc * std::exp(2.0 * double(j) * height);
    }
    return std::make_pair(coeffs, gmax);
  };

  const auto [fit, gmax] = dft(count);

  // A-priori noise bound: eps * max|g| amplified by the rescaling of the
  // weakest requested column.
  const double eps = std::numeric_limits<double>::epsilon();
  const double amplification = std::exp(2.0 * double(count - 1) * height);
  if (eps * std::max(1.0, gmax) * amplification > 1e-8) {
    throw IllConditioned("fit cannot reach 1e-8 at this height/count (noise amplification too large)");
  }

  // Residual check: a refit over a widened window must reproduce the
  // requested coefficients.
  if (count <= 14) {
    const auto [wide, wide_gmax] = dft(count + 2);
    (void)wide_gmax;
    for (int j = 0; j < count; ++j) {
      const double diff = std::abs(wide[static_cast<size_t>(j)] - fit[static_cast<size_t>(j)]);
      if (diff > 1e-8 * (1.0 + std::abs(fit[static_cast<size_t>(j)]))) {
        throw IllConditioned("fit residual exceeds 1e-8 over a widened window");
      }
    }
  }

  SeriesCoefficients out;
  if (half_plane == HalfPlane::Upper) {
    out.kind = SeriesKind::C;
    for (int j = 0; j < count; ++j) out.values[j] = fit[static_cast<size_t>(j)];
  } else {
    out.kind = SeriesKind::D;
    for (int j = 0; j < count; ++j) out.values[kap - j] = fit[static_cast<size_t>(j)];
  }
  return out;
}

}  // namespace sinfrac
