#include "sinfrac/sympoly.hpp"

#include <cmath>

namespace sinfrac {

namespace {

void check_index_cap(int upto) {
  if (upto > kSeriesIndexCap) {
    throw RangeViolation("series coefficient index exceeds cap");
  }
}

}  // namespace

std::vector<Complex> elementary_symmetric(std::span<const Complex> values, int upto) {
  if (upto < 0) throw RangeViolation("elementary_symmetric: upto must be >= 0");
  check_index_cap(upto);
  std::vector<Complex> e(static_cast<size_t>(upto) + 1, Complex(0.0));
  e[0] = Complex(1.0);
  int seen = 0;
  for (const Complex& x : values) {
    ++seen;
    const int top = std::min(upto, seen);
    for (int k = top; k >= 1; --k) e[static_cast<size_t>(k)] += x * e[static_cast<size_t>(k - 1)];
  }
  return e;
}

std::vector<Complex> complete_homogeneous(std::span<const Complex> values, int upto) {
  if (upto < 0) throw RangeViolation("complete_homogeneous: upto must be >= 0");
  check_index_cap(upto);
  std::vector<Complex> h(static_cast<size_t>(upto) + 1, Complex(0.0));
  h[0] = Complex(1.0);
  for (const Complex& g : values) {
    // h <- h * (1 - x*g)^{-1}, i.e. h[k] += g * h[k-1] in place.
    for (int k = 1; k <= upto; ++k) h[static_cast<size_t>(k)] += g * h[static_cast<size_t>(k - 1)];
  }
  return h;
}

Complex pow_i(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Complex pow_2i(int p, Sign sign) {
  Complex unit = pow_i(p);
  if (sign == Sign::Minus) unit = std::conj(unit);  // (-i)^p = conj(i^p)
  return std::ldexp(1.0, p) * unit;
}

std::vector<Complex> harmonic_args(const PhaseVector& v, Sign sign) {
  const double s = sign == Sign::Plus ? 2.0 : -2.0;
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(v.size()));
  for (double p : v) out.push_back(unit_phase(s * p));
  return out;
}

namespace {

// sum_{k+l=j} (-1)^k e_k(a_args) h_l(b_args) for j = 0..upto.
std::vector<Complex> signed_eh_convolution(const std::vector<Complex>& a_args,
                                           const std::vector<Complex>& b_args,
                                           int upto) {
  const auto e = elementary_symmetric(a_args, upto);
  const auto h = complete_homogeneous(b_args, upto);
  std::vector<Complex> out(static_cast<size_t>(upto) + 1, Complex(0.0));
  for (int j = 0; j <= upto; ++j) {
    Complex s(0.0);
    for (int k = 0; k <= j; ++k) {
      const Complex ek = (k % 2 == 0 ? e[static_cast<size_t>(k)] : -e[static_cast<size_t>(k)]);
      s += ek * h[static_cast<size_t>(j - k)];
    }
    out[static_cast<size_t>(j)] = s;
  }
  return out;
}

}  // namespace

SeriesCoefficients braaksma_C(const PhaseVector& a, const PhaseVector& b, int upto) {
  if (upto < 0) throw RangeViolation("braaksma_C: upto must be >= 0");
  const int kap = kappa(a, b);
  const Complex c0 = pow_2i(-kap) * unit_phase(nu(a, b));
  const auto conv = signed_eh_convolution(harmonic_args(a, Sign::Minus),
                                          harmonic_args(b, Sign::Minus), upto);
  SeriesCoefficients out;
  out.kind = SeriesKind::C;
  for (int j = 0; j <= upto; ++j) out.values[j] = c0 * conv[static_cast<size_t>(j)];
  return out;
}

SeriesCoefficients braaksma_D(const PhaseVector& a, const PhaseVector& b, int downto) {
  const int kap = kappa(a, b);
  if (downto > kap) throw RangeViolation("braaksma_D: downto must be <= kappa");
  const int depth = kap - downto;
  const Complex dk = pow_2i(-kap, Sign::Minus) * unit_phase(-nu(a, b));
  const auto conv = signed_eh_convolution(harmonic_args(a, Sign::Plus),
                                          harmonic_args(b, Sign::Plus), depth);
  SeriesCoefficients out;
  out.kind = SeriesKind::D;
  for (int j = 0; j <= depth; ++j) out.values[kap - j] = dk * conv[static_cast<size_t>(j)];
  return out;
}

SeriesCoefficients omega(const PhaseVector& a, const PhaseVector& b, int upto,
                         bool conjugated) {
  if (upto < 0) throw RangeViolation("omega: upto must be >= 0");
  const Sign sign = conjugated ? Sign::Minus : Sign::Plus;
  const auto conv = signed_eh_convolution(harmonic_args(a, sign), harmonic_args(b, sign), upto);
  SeriesCoefficients out;
  out.kind = conjugated ? SeriesKind::OmegaBar : SeriesKind::Omega;
  for (int j = 0; j <= upto; ++j) out.values[j] = conv[static_cast<size_t>(j)];
  return out;
}

SeriesCoefficients entire_E(const PhaseVector& b, int upto, Sign sign) {
  if (upto < 0) throw RangeViolation("entire_E: upto must be >= 0");
  const Complex front = pow_2i(b.size(), sign) *
                        unit_phase((sign == Sign::Plus ? 1.0 : -1.0) * b.sum());
  const auto h = complete_homogeneous(harmonic_args(b, sign), upto);
  SeriesCoefficients out;
  out.kind = sign == Sign::Plus ? SeriesKind::Eplus : SeriesKind::Eminus;
  for (int j = 0; j <= upto; ++j) out.values[j] = front * h[static_cast<size_t>(j)];
  return out;
}

Complex entire_F(const LaurentTrigPoly& T, const PhaseVector& b, int k, Sign sign) {
  if (k < 0) throw RangeViolation("entire_F: k must be >= 0");
  const int m = T.degree();
  const int n1 = b.size();  // n+1 nodes
  const int jmax = floor_div(m - n1 - k, 2);
  if (jmax < 0) return Complex(0.0);
  const auto E = entire_E(b, jmax, sign);
  const int s = sign == Sign::Plus ? 1 : -1;
  Complex f(0.0);
  for (int j = 0; j <= jmax; ++j) {
    f += T.coeff(s * (2 * j + k + n1)) * E.at(j);
  }
  return f;
}

}  // namespace sinfrac
