#include "sinfrac/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

namespace sinfrac {

namespace {

// prod_{l != j} sin(b_l - b_j); the reversed-orientation node gap used by
// the two-sided ratio expansion and the node-sum identities.
double gap_nodes_minus(const PhaseVector& b, int j) {
  double p = 1.0;
  for (int l = 0; l < b.size(); ++l) {
    if (l != j) p *= std::sin(b[l] - b[j]);
  }
  return p;
}

std::string format_params(const char* fmt, ...) {
  char buf[160];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

void require_distinct_squares(std::span<const Complex> gammas) {
  double scale = 0.0;
  for (const Complex& g : gammas) scale = std::max(scale, std::norm(g));
  for (size_t j = 0; j + 1 < gammas.size(); ++j) {
    for (size_t k = j + 1; k < gammas.size(); ++k) {
      if (std::abs(gammas[j] * gammas[j] - gammas[k] * gammas[k]) <= 1e-9 * std::max(scale, 1.0)) {
        throw DegenerateNodes("gamma nodes not distinct in squares");
      }
    }
  }
}

}  // namespace

int parity_phase(int t, int n) {
  const int par = (((t + n) % 2) + 2) % 2;
  return t >= 0 ? par : -par;
}

Complex WDomainExpansion::eval(Complex w) const {
  Complex s(0.0);
  for (const auto& [exponent, c] : poly) s += c * std::pow(w, double(exponent));
  const Complex wth = std::pow(w, double(theta));
  for (size_t k = 0; k < gammas.size(); ++k) {
    s += pole_coeffs[k] * wth / (w * w - gammas[k] * gammas[k]);
  }
  return s;
}

Complex WDomainExpansion::lhs(Complex w) const {
  const int n = static_cast<int>(gammas.size()) - 1;
  Complex denom(1.0);
  for (const Complex& g : gammas) denom *= (w * w - g * g);
  return std::pow(w, double(m + n)) / denom;
}

WDomainExpansion monomial_expand(int m, int theta, std::span<const Complex> gammas) {
  if (m < 0) throw RangeViolation("monomial_expand: m must be >= 0");
  if (gammas.empty()) throw RangeViolation("monomial_expand: need at least one gamma");
  const int n = static_cast<int>(gammas.size()) - 1;
  if (theta > m + n || (((m + n - theta) % 2) + 2) % 2 != 0) {
    throw ParityViolation("theta must be <= m+n and of the same parity");
  }
  require_distinct_squares(gammas);

  WDomainExpansion out;
  out.m = m;
  out.theta = theta;
  out.gammas.assign(gammas.begin(), gammas.end());

  const int poly_terms = (m - n - theta) / 2;  // first sum empty if m-n-theta < 2
  if (poly_terms > 0) {
    std::vector<Complex> squares;
    squares.reserve(gammas.size());
    for (const Complex& g : gammas) squares.push_back(g * g);
    const auto h = complete_homogeneous(squares, poly_terms - 1);
    for (int j = 0; j < poly_terms; ++j) {
      out.poly.emplace_back(m - n - 2 - 2 * j, h[static_cast<size_t>(j)]);
    }
  }

  for (size_t k = 0; k < gammas.size(); ++k) {
    Complex denom(1.0);
    for (size_t j = 0; j < gammas.size(); ++j) {
      if (j != k) denom *= (gammas[k] * gammas[k] - gammas[j] * gammas[j]);
    }
    out.pole_coeffs.push_back(std::pow(gammas[k], double(m + n - theta)) / denom);
  }
  return out;
}

namespace {

// Shared core of the Laurent-numerator expansion over n+1 nodes; excess
// is the admissible degree overshoot beyond n+1.
ClosedFormExpansion chu_core(const LaurentTrigPoly& P, const PhaseVector& b, int excess,
                             const char* tag) {
  if (b.empty()) throw RangeViolation("need at least one denominator node");
  b.require_separated();
  const int n1 = b.size();  // n+1
  const int n = n1 - 1;
  if (P.degree() > n1 + excess && !P.is_zero()) {
    throw DegreeTooHigh("numerator degree exceeds this expansion's range");
  }

  ClosedFormExpansion e(Provenance{tag, format_params("n=%d excess=%d", n, excess)});

  std::vector<Complex> squares, inv_squares;
  for (double bk : b) {
    squares.push_back(unit_phase(2.0 * bk));
    inv_squares.push_back(unit_phase(-2.0 * bk));
  }
  const Complex front = pow_2i(n1) * unit_phase(b.sum());
  // prod_k (-gamma_k^2) = (-1)^{n+1} e^{2iB}
  const Complex prod_neg_sq = (n1 % 2 == 0 ? 1.0 : -1.0) * unit_phase(2.0 * b.sum());

  // Largest multiset index needed: j <= (excess - d)/2 over d >= 0.
  const int hmax = excess / 2;
  const auto h_pos = complete_homogeneous(squares, hmax);
  const auto h_neg = complete_homogeneous(inv_squares, hmax);

  for (int d = 0; d <= excess; ++d) {
    Complex q(0.0);
    for (int j = 0; n1 + d + 2 * j <= P.degree(); ++j) {
      q += h_pos[static_cast<size_t>(j)] * P.coeff(n1 + d + 2 * j);
    }
    if (q != Complex(0.0)) e.add_exp(front * q, d);
  }
  for (int d = 1; d <= excess; ++d) {
    Complex q(0.0);
    for (int j = 0; n1 + d + 2 * j <= P.degree(); ++j) {
      q += h_neg[static_cast<size_t>(j)] * P.coeff(-(n1 + d + 2 * j));
    }
    if (q != Complex(0.0)) e.add_exp(front * q / prod_neg_sq, -d);
  }

  const double node_sign = (n % 2 == 0 ? 1.0 : -1.0);  // (-1)^n
  for (int k = 0; k < n1; ++k) {
    const double gap = node_gap_product(b, k);
    const Complex at_node = P.eval(Complex(b[k]));
    const Complex at_shift = P.eval(Complex(b[k] + kPi));
    e.add_pole(k, b[k], (at_node + node_sign * at_shift) / (2.0 * gap), 0);
    e.add_pole(k, b[k], (at_node - node_sign * at_shift) / (2.0 * gap), -1);
  }
  e.canonicalize();
  return e;
}

}  // namespace

ClosedFormExpansion chu_expand(const LaurentTrigPoly& P, const PhaseVector& b) {
  return chu_core(P, b, 0, "chu");
}

ClosedFormExpansion chu_extended_expand(const LaurentTrigPoly& P, const PhaseVector& b,
                                        int excess) {
  if (excess < 1 || excess > 3) throw RangeViolation("excess must be 1, 2 or 3");
  return chu_core(P, b, excess, "chu-ext");
}

ClosedFormExpansion braaksma_expand(const PhaseVector& a, const PhaseVector& b, int k) {
  b.require_separated();
  const int kap = kappa(a, b);
  ClosedFormExpansion e(
      Provenance{"braaksma", format_params("r=%d n=%d k=%d", a.size(), b.size(), k)});

  if (k >= 1) {
    const auto C = braaksma_C(a, b, k - 1);
    for (int j = 0; j <= k - 1; ++j) e.add_exp(C.at(j), -kap + 2 * j);
  }
  if (k <= kap) {
    const auto D = braaksma_D(a, b, k);
    for (int j = k; j <= kap; ++j) e.add_exp(D.at(j), -kap + 2 * j);
  }

  const int mu = 2 * k - kap - 1;
  for (int j = 0; j < b.size(); ++j) {
    const Complex coeff = -sin_nodes_minus(a, Complex(b[j])) / gap_nodes_minus(b, j);
    e.add_pole(j, b[j], coeff, mu);
  }
  e.canonicalize();
  return e;
}

std::pair<Complex, Complex> meijer_lemma3(const PhaseVector& a, const PhaseVector& b,
                                          int k) {
  b.require_separated();
  const int kap = kappa(a, b);
  Complex lhs(0.0);
  for (int t = 0; t < b.size(); ++t) {
    lhs += unit_phase(double(-kap + 2 * k) * b[t]) * sin_nodes_minus(a, Complex(b[t])) /
           gap_nodes_minus(b, t);
  }
  lhs *= pow_2i(kap + 1);

  const Complex omega_bar =
      kap - k >= 0 ? omega(a, b, kap - k, /*conjugated=*/true).at(kap - k) : Complex(0.0);
  const Complex omega_plain = k >= 0 ? omega(a, b, k, /*conjugated=*/false).at(k) : Complex(0.0);
  const double parity = kap % 2 == 0 ? 1.0 : -1.0;
  const Complex rhs =
      unit_phase(nu(a, b)) * omega_bar - parity * unit_phase(-nu(a, b)) * omega_plain;
  return {lhs, rhs};
}

std::pair<Complex, Complex> meijer_lemma4_check(const PhaseVector& a, const PhaseVector& b,
                                                int k, Complex z) {
  const int kap = kappa(a, b);
  if (kap > -1) throw RangeViolation("reflection sum needs kappa <= -1");
  if (k < 0 || k > -kap - 1) throw RangeViolation("k must satisfy 0 <= k <= -kappa-1");
  b.require_separated();

  const Complex i(0.0, 1.0);
  Complex lhs(0.0);
  for (int t = 0; t < b.size(); ++t) {
    const Complex d = z - Complex(b[t]);
    if (!clears_pole(z, b[t], kDefaultPoleGuard)) {
      throw PoleProximity("evaluation point too close to a node (mod pi)");
    }
    lhs += std::exp(i * double(kap + 2 * k + 1) * d) * sin_nodes_minus(a, Complex(b[t])) /
           (gap_nodes_minus(b, t) * std::sin(d));
  }
  const Complex rhs = -direct_ratio(a, b, z);
  return {lhs, rhs};
}

ClosedFormExpansion general_expand(const LaurentTrigPoly& T, const PhaseVector& b,
                                   Variant variant) {
  if (b.empty()) throw RangeViolation("need at least one denominator node");
  b.require_separated();
  const int n1 = b.size();
  const int n = n1 - 1;
  const int m = T.degree();
  const char* tag = variant == Variant::M ? "general-m"
                    : variant == Variant::P ? "general-p"
                                            : "general-pm";
  ClosedFormExpansion e(Provenance{tag, format_params("m=%d n=%d", m, n)});

  // Entire part.
  const int k_top = m - n1;  // == m - n - 1
  if (variant == Variant::PM && k_top >= 0) {
    const Complex f0 = entire_F(T, b, 0, Sign::Plus) + entire_F(T, b, 0, Sign::Minus);
    e.add_exp(0.5 * f0, 0);
  }
  const int k_start = variant == Variant::P ? 0 : 1;
  for (int k = k_start; k <= k_top; ++k) {
    e.add_exp(entire_F(T, b, k, Sign::Plus), k);
    e.add_exp(entire_F(T, b, k, Sign::Minus), -k);
  }

  // Pole part.
  if (variant == Variant::PM) {
    const auto [tp, ta] = T.split_periodic();
    for (int k = 0; k < n1; ++k) {
      const double gap = node_gap_product(b, k);
      const Complex p = tp.eval(Complex(b[k]));
      const Complex q = ta.eval(Complex(b[k]));
      if (n % 2 == 0) {
        e.add_pole(k, b[k], p / gap, 0);
        e.add_pole(k, b[k], 0.5 * q / gap, 1);
        e.add_pole(k, b[k], 0.5 * q / gap, -1);
      } else {
        e.add_pole(k, b[k], q / gap, 0);
        e.add_pole(k, b[k], 0.5 * p / gap, 1);
        e.add_pole(k, b[k], 0.5 * p / gap, -1);
      }
    }
  } else {
    const double phase_sign = variant == Variant::M ? 1.0 : -1.0;
    for (int k = 0; k < n1; ++k) {
      const double gap = node_gap_product(b, k);
      Complex bucket[3] = {Complex(0.0), Complex(0.0), Complex(0.0)};  // mu = -1, 0, +1
      for (int t = -m; t <= m; ++t) {
        const Complex c = T.coeff(t);
        if (c == Complex(0.0)) continue;
        const int mu = static_cast<int>(phase_sign) * parity_phase(t, n);
        bucket[mu + 1] += c * unit_phase(double(t) * b[k]);
      }
      for (int mu = -1; mu <= 1; ++mu) {
        if (bucket[mu + 1] != Complex(0.0)) e.add_pole(k, b[k], bucket[mu + 1] / gap, mu);
      }
    }
  }
  e.canonicalize();
  return e;
}

ClosedFormExpansion sine_product_expand(const PhaseVector& a, const PhaseVector& b) {
  if (a.empty() || b.empty()) throw RangeViolation("need nonempty numerator and denominator nodes");
  b.require_separated();
  const int kap = kappa(a, b);
  const int lambda = floor_div(kap, 2);
  ClosedFormExpansion e(
      Provenance{"sine-product", format_params("r=%d n=%d", a.size() - 1, b.size() - 1)});

  if (lambda >= 0) {
    const auto ea_p = elementary_symmetric(harmonic_args(a, Sign::Plus), lambda);
    const auto ea_m = elementary_symmetric(harmonic_args(a, Sign::Minus), lambda);
    const auto hb_p = complete_homogeneous(harmonic_args(b, Sign::Plus), lambda);
    const auto hb_m = complete_homogeneous(harmonic_args(b, Sign::Minus), lambda);
    const double beta_minus_alpha = b.sum() - a.sum();
    const Complex front_p =
        std::ldexp(1.0, -kap) * pow_i(-kap) * unit_phase(beta_minus_alpha);
    const Complex front_m =
        std::ldexp(1.0, -kap) * std::conj(pow_i(-kap)) * unit_phase(-beta_minus_alpha);

    for (int t = 0; t <= lambda; ++t) {
      Complex conv_p(0.0), conv_m(0.0);
      for (int mm = 0; mm <= t; ++mm) {
        const double sgn = ((t - mm) % 2 == 0) ? 1.0 : -1.0;
        conv_p += sgn * ea_p[static_cast<size_t>(t - mm)] * hb_p[static_cast<size_t>(mm)];
        conv_m += sgn * ea_m[static_cast<size_t>(t - mm)] * hb_m[static_cast<size_t>(mm)];
      }
      const Complex f_plus = front_p * conv_p;
      const Complex f_minus = front_m * conv_m;
      const int freq = kap - 2 * t;
      if (freq >= 1) {
        e.add_exp(f_plus, freq);
        e.add_exp(f_minus, -freq);
      } else {
        e.add_exp(0.5 * (f_plus + f_minus), 0);
      }
    }
  }

  const bool odd_kappa = ((kap % 2) + 2) % 2 == 1;
  for (int k = 0; k < b.size(); ++k) {
    Complex num(1.0);
    for (double at : a) num *= std::sin(b[k] - at);
    const Complex coeff = num / node_gap_product(b, k);
    if (odd_kappa) {
      e.add_pole(k, b[k], coeff, 0);
    } else {
      e.add_pole(k, b[k], 0.5 * coeff, 1);
      e.add_pole(k, b[k], 0.5 * coeff, -1);
    }
  }
  e.canonicalize();
  return e;
}

ClosedFormExpansion cos_sin_series_expand(SeriesForm form, std::span<const double> coeffs,
                                          const PhaseVector& b) {
  if (b.empty()) throw RangeViolation("need at least one denominator node");
  b.require_separated();
  const int n1 = b.size();
  const int n = n1 - 1;
  const int m = coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1;

  // Symmetrized exponential numerator: c_{-t} := c_t (Cos) or -c_t (Sin).
  std::map<int, Complex> sym;
  for (int t = 0; t <= m; ++t) {
    const double c = coeffs[static_cast<size_t>(t)];
    if (c == 0.0) continue;
    if (t == 0) {
      if (form == SeriesForm::Cos) sym[0] = c;
    } else {
      sym[t] = c;
      sym[-t] = form == SeriesForm::Cos ? c : -c;
    }
  }
  const LaurentTrigPoly T = LaurentTrigPoly::from_map(sym);

  const char* tag = form == SeriesForm::Cos ? "cos-series" : "sin-series";
  ClosedFormExpansion e(Provenance{tag, format_params("m=%d n=%d", m, n)});

  const Complex pref = form == SeriesForm::Cos ? Complex(0.5) : Complex(0.0, -0.5);  // 1/2 or 1/(2i)
  for (int k = 1; k <= T.degree() - n1; ++k) {
    e.add_exp(pref * entire_F(T, b, k, Sign::Plus), k);
    e.add_exp(pref * entire_F(T, b, k, Sign::Minus), -k);
  }

  // Per-node numerators sum_t c_t cos(t b_k + mu_t (z-b_k)) / 2 (Cos) or
  // with sin (Sin); each harmonic splits into the +-mu_t phase pair.
  for (int k = 0; k < n1; ++k) {
    const double gap = node_gap_product(b, k);
    Complex bucket[3] = {Complex(0.0), Complex(0.0), Complex(0.0)};
    for (int t = -T.degree(); t <= T.degree(); ++t) {
      const Complex c = T.coeff(t);
      if (c == Complex(0.0)) continue;
      const int mu = parity_phase(t, n);
      const Complex up = c * unit_phase(double(t) * b[k]);
      const Complex dn = c * unit_phase(-double(t) * b[k]);
      if (form == SeriesForm::Cos) {
        bucket[mu + 1] += 0.25 * up;
        bucket[-mu + 1] += 0.25 * dn;
      } else {
        bucket[mu + 1] += Complex(0.0, -0.25) * up;  // 1/(4i)
        bucket[-mu + 1] -= Complex(0.0, -0.25) * dn;
      }
    }
    for (int mu = -1; mu <= 1; ++mu) {
      if (bucket[mu + 1] != Complex(0.0)) e.add_pole(k, b[k], bucket[mu + 1] / gap, mu);
    }
  }
  e.canonicalize();
  return e;
}

namespace {

std::pair<Complex, Complex> residue_sum_core(ResidueKind kind, const LaurentTrigPoly& P,
                                             const PhaseVector& b) {
  b.require_separated();
  const int n1 = b.size();
  const int n = n1 - 1;
  const int max_degree = kind == ResidueKind::Sumres1 ? n1 + 2 : n1 + 3;
  if (P.degree() > max_degree && !P.is_zero()) {
    throw DegreeMismatch("numerator degree exceeds this identity's hypothesis");
  }

  std::vector<Complex> gammas, squares, inv_squares;
  for (double bk : b) {
    gammas.push_back(unit_phase(bk));
    squares.push_back(unit_phase(2.0 * bk));
    inv_squares.push_back(unit_phase(-2.0 * bk));
  }
  const auto h_sq = complete_homogeneous(squares, 2);
  Complex prod_sq(1.0);
  for (const Complex& s : squares) prod_sq *= s;
  const double node_sign = (n % 2 == 0 ? 1.0 : -1.0);  // (-1)^n

  Complex pole_sum(0.0);
  for (int k = 0; k < n1; ++k) {
    Complex denom(1.0);
    for (int j = 0; j < n1; ++j) {
      if (j != k) denom *= (squares[static_cast<size_t>(k)] - squares[static_cast<size_t>(j)]);
    }
    const Complex at_node = P.eval(Complex(b[k]));
    const Complex at_shift = P.eval(Complex(b[k] + kPi));
    pole_sum += std::pow(gammas[static_cast<size_t>(k)], double(n)) *
                (at_node + node_sign * at_shift) / denom;
  }
  pole_sum *= 0.5;

  if (kind == ResidueKind::Sumres1) {
    const Complex lhs = P.coeff(n1 + 1) * h_sq[1] + P.coeff(n1 - 1);
    const Complex rhs = -node_sign * P.coeff(-(n1 + 1)) / prod_sq + pole_sum;
    return {lhs, rhs};
  }
  // Sumres3
  const Complex lhs = P.coeff(n1 - 1) + P.coeff(n1 + 1) * h_sq[1] + P.coeff(n1 + 3) * h_sq[2];
  Complex inv_sum(0.0);
  for (const Complex& s : inv_squares) inv_sum += s;
  const Complex rhs =
      (P.coeff(-(n1 + 1)) + P.coeff(-(n1 + 3)) * inv_sum) * (-node_sign) / prod_sq + pole_sum;
  return {lhs, rhs};
}

}  // namespace

std::pair<Complex, Complex> residue_identity(ResidueKind kind, const LaurentTrigPoly& P,
                                             const PhaseVector& b) {
  if (kind != ResidueKind::Sumres1 && kind != ResidueKind::Sumres3) {
    throw RangeViolation("this residue identity takes a phase-vector numerator");
  }
  return residue_sum_core(kind, P, b);
}

std::pair<Complex, Complex> residue_identity(ResidueKind kind, const PhaseVector& a,
                                             const PhaseVector& b) {
  b.require_separated();
  const int n1 = b.size();

  auto node_sum = [&](bool with_phase) {
    // sum_k [e^{i(nu+b_k)}] prod_t sin(b_k - a_t) / prod_{j!=k} sin(b_k - b_j)
    Complex s(0.0);
    for (int k = 0; k < n1; ++k) {
      Complex num(1.0);
      for (double at : a) num *= std::sin(b[k] - at);
      Complex term = num / node_gap_product(b, k);
      if (with_phase) term *= unit_phase(nu(a, b) + b[k]);
      s += term;
    }
    return s;
  };

  switch (kind) {
    case ResidueKind::Exotic: {
      if (a.size() != b.size() + 1) {
        throw DegreeMismatch("identity needs one more numerator node than denominator nodes");
      }
      const Complex lhs = 4.0 * node_sum(/*with_phase=*/true);
      Complex rhs(0.0);
      for (double ak : a) rhs += unit_phase(2.0 * ak);
      for (double bk : b) rhs -= unit_phase(2.0 * bk);
      rhs -= unit_phase(2.0 * nu(a, b));
      return {lhs, rhs};
    }
    case ResidueKind::Kappa2Im: {
      if (a.size() != b.size() + 2) {
        throw DegreeMismatch("identity needs two more numerator nodes than denominator nodes");
      }
      const Complex lhs = 4.0 * node_sum(/*with_phase=*/false);
      const double shift = b.sum() - a.sum();
      double rhs = 0.0;
      for (double ak : a) rhs += std::sin(shift + 2.0 * ak);
      for (double bk : b) rhs -= std::sin(shift + 2.0 * bk);
      return {lhs, Complex(rhs)};
    }
    case ResidueKind::EvenKappaSine: {
      const int kap = kappa(a, b);
      if (kap < 0 || kap % 2 != 0) {
        throw DegreeMismatch("identity needs an even nonnegative node-count difference");
      }
      const int lambda = kap / 2;
      const auto ea = elementary_symmetric(harmonic_args(a, Sign::Plus), lambda);
      const auto hb = complete_homogeneous(harmonic_args(b, Sign::Plus), lambda);
      const Complex shift = unit_phase(b.sum() - a.sum());
      double lhs = 0.0;
      for (int mm = 0; mm <= lambda; ++mm) {
        const double sgn = (mm % 2 == 0) ? 1.0 : -1.0;
        lhs += sgn *
               std::imag(shift * ea[static_cast<size_t>(lambda - mm)] * hb[static_cast<size_t>(mm)]);
      }
      lhs *= std::ldexp(1.0, -2 * lambda);  // 4^{-lambda}
      return {Complex(lhs), node_sum(/*with_phase=*/false)};
    }
    default:
      throw RangeViolation("this residue identity takes a Laurent numerator");
  }
}

}  // namespace sinfrac
