#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <functional>

#include "sinfrac/expansion.hpp"
#include "sinfrac/numeric.hpp"
#include "sinfrac/verify.hpp"

using namespace sinfrac;

namespace {

// A sin(freq z + phase) and A cos(freq z + phase) as exponential pairs.
void add_sin_pair(ClosedFormExpansion& e, double amplitude, int freq, double phase) {
  const Complex half_over_i(0.0, -0.5);  // 1/(2i)
  e.add_exp(amplitude * unit_phase(phase) * half_over_i, freq);
  e.add_exp(-amplitude * unit_phase(-phase) * half_over_i, -freq);
}

void add_cos_pair(ClosedFormExpansion& e, double amplitude, int freq, double phase) {
  e.add_exp(0.5 * amplitude * unit_phase(phase), freq);
  e.add_exp(0.5 * amplitude * unit_phase(-phase), -freq);
}

// sin(m z - a) as a Laurent polynomial (handles m = 0 as the constant).
LaurentTrigPoly make_sine_numerator(int m, double a) {
  std::map<int, Complex> c;
  const Complex half_over_i(0.0, -0.5);
  c[m] += unit_phase(-a) * half_over_i;
  c[-m] += -unit_phase(a) * half_over_i;
  return LaurentTrigPoly::from_map(c);
}

double max_error_on_samples(const ClosedFormExpansion& e,
                            const std::function<Complex(Complex)>& reference,
                            const PhaseVector& b, std::uint64_t seed = 5, int points = 32) {
  SamplePlan plan;
  plan.count = points;
  plan.seed = seed;
  plan.im_band = clamp_im_band(e.max_growth_freq());
  double worst = 0.0;
  for (const Complex& z : sample_points(plan, b)) {
    worst = std::max(worst, rel_error(reference(z), e.eval(z)));
  }
  return worst;
}

}  // namespace

TEST_CASE("monomial expansion in the w-domain") {
  SUBCASE("single node, smallest case") {
    const Complex g(0.7, 0.2);
    const auto e = monomial_expand(0, 0, std::vector<Complex>{g});
    CHECK(e.poly.empty());
    REQUIRE(e.pole_coeffs.size() == 1);
    CHECK(std::abs(e.pole_coeffs[0] - Complex(1.0)) < 1e-15);
  }
  SUBCASE("pinned rational identity w^3/(w^2-4) = w + 4w/(w^2-4)") {
    const auto e = monomial_expand(3, 1, std::vector<Complex>{Complex(2.0)});
    REQUIRE(e.poly.size() == 1);
    CHECK(e.poly[0].first == 1);
    CHECK(std::abs(e.poly[0].second - Complex(1.0)) < 1e-15);
    CHECK(std::abs(e.pole_coeffs[0] - Complex(4.0)) < 1e-15);
    for (double wr : {0.4, 1.0, 3.5, -1.3}) {
      const Complex w(wr, 0.3);
      CHECK(rel_error(e.lhs(w), e.eval(w)) < 1e-14);
    }
  }
  SUBCASE("leading polynomial term for m = n+2, theta = m-n-2") {
    const std::vector<Complex> gam = {Complex(0.9), Complex(0.3, 0.5)};
    const int n = 1, m = n + 2;
    const auto e = monomial_expand(m, m - n - 2, gam);
    REQUIRE(e.poly.size() == 1);
    CHECK(e.poly[0].first == m - n - 2);
    CHECK(std::abs(e.poly[0].second - Complex(1.0)) < 1e-15);
  }
  SUBCASE("parity and degeneracy errors") {
    const std::vector<Complex> g = {Complex(1.0), Complex(0.5)};
    CHECK_THROWS_AS(monomial_expand(2, 2, g), ParityViolation);  // m+n odd, theta even
    CHECK_THROWS_AS(monomial_expand(2, 5, g), ParityViolation);  // theta > m+n
    const std::vector<Complex> dup = {Complex(1.0), Complex(-1.0)};
    CHECK_THROWS_AS(monomial_expand(2, 1, dup), DegenerateNodes);
  }
  SUBCASE("split-exponent invariance") {
    RandomStream rng(3);
    const std::vector<Complex> g = {unit_phase(0.4), 1.2 * unit_phase(1.3), 0.8 * unit_phase(2.2)};
    const int m = 5, n = 2;
    std::vector<WDomainExpansion> es;
    for (int theta = m + n; theta >= m - n - 4; theta -= 2) {
      es.push_back(monomial_expand(m, theta, g));
    }
    for (int trial = 0; trial < 24; ++trial) {
      const Complex w = rng.complex_in_box(-2.0, 2.0, -2.0, 2.0);
      if (std::abs(w) < 0.3) continue;
      bool clear = true;
      for (const Complex& gg : g) {
        if (std::abs(w * w - gg * gg) < 0.15) clear = false;
      }
      if (!clear) continue;
      const Complex direct = es[0].lhs(w);
      for (const auto& e : es) CHECK(rel_error(direct, e.eval(w)) < 1e-12);
    }
  }
}

TEST_CASE("single-numerator expansion (degree within node count)") {
  SUBCASE("P = 1 over one node is the reflection term") {
    const PhaseVector b{0.6};
    const auto e = chu_expand(LaurentTrigPoly::from_map({{0, Complex(1.0)}}), b);
    CHECK(e.exp_terms().empty());
    REQUIRE(e.pole_terms().size() == 1);
    CHECK(e.pole_terms()[0].phase_freq == 0);
    CHECK(std::abs(e.pole_terms()[0].coeff - Complex(1.0)) < 1e-15);
    CHECK(rel_error(e.eval(Complex(0.6 + kPi / 2)), Complex(1.0)) < 1e-15);
  }
  SUBCASE("zero numerator gives the empty expansion") {
    const PhaseVector b{0.3, 1.2};
    const auto e = chu_expand(LaurentTrigPoly::zero(), b);
    CHECK(e.empty());
    CHECK(e.eval(Complex(2.0, 0.4)) == Complex(0.0));
  }
  SUBCASE("random numerators match direct evaluation") {
    for (int trial = 0; trial < 20; ++trial) {
      RandomStream rng(17, static_cast<std::uint64_t>(trial));
      const int n1 = rng.uniform_int(1, 4);
      const PhaseVector b = draw_separated_phases(rng, n1, 0.08);
      const LaurentTrigPoly P = draw_laurent(rng, rng.uniform_int(0, n1));
      const auto e = chu_expand(P, b);
      const double err = max_error_on_samples(
          e, [&](Complex z) { return P.eval(z) / sin_minus_nodes(z, b); }, b, 100 + trial);
      CHECK(err < 1e-10);
    }
  }
  SUBCASE("degree overshoot is refused") {
    const PhaseVector b{0.3, 1.2};
    RandomStream rng(1);
    CHECK_THROWS_AS(chu_expand(draw_laurent(rng, 4), b), DegreeTooHigh);
  }
}

TEST_CASE("extended numerator expansions") {
  SUBCASE("vanishing extra harmonics reduce to the plain expansion") {
    RandomStream rng(23);
    const PhaseVector b = draw_separated_phases(rng, 3, 0.1);
    const LaurentTrigPoly P = draw_laurent(rng, 3);  // degree n+1 exactly
    const auto plain = chu_expand(P, b);
    const auto extended = chu_extended_expand(P, b, 1);
    CHECK(expansion_term_distance(plain, extended) < 1e-14);
  }
  SUBCASE("excess two with an even sine-product numerator") {
    // Numerator prod sin(z - a_t) with n+3 factors: the expansion must
    // carry the cos(2z + B - A) pair, the constant, and pure phase(-1)
    // node terms.
    RandomStream rng(29);
    const int n1 = 2;
    const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
    const PhaseVector a = draw_phases(rng, n1 + 2);
    const LaurentTrigPoly P = LaurentTrigPoly::from_sine_product(a);
    const auto e = chu_extended_expand(P, b, 2);

    ClosedFormExpansion expect;
    const double shift = b.sum() - a.sum();
    add_cos_pair(expect, -0.5, 2, shift);
    Complex constant(0.0);
    for (double ak : a) constant += unit_phase(2.0 * ak);
    for (double bk : b) constant -= unit_phase(2.0 * bk);
    expect.add_exp(0.25 * unit_phase(shift) * constant, 0);
    for (int k = 0; k < n1; ++k) {
      Complex num(1.0);
      for (double at : a) num *= std::sin(b[k] - at);
      expect.add_pole(k, b[k], num / node_gap_product(b, k), -1);
    }
    expect.canonicalize();
    CHECK(expansion_term_distance(e, expect) < 1e-13);

    const double err = max_error_on_samples(
        e, [&](Complex z) { return sin_minus_nodes(z, a) / sin_minus_nodes(z, b); }, b, 31);
    CHECK(err < 1e-10);
  }
  SUBCASE("excess three with an odd sine-product numerator") {
    // n+4 sine factors: three sine groups plus plain reflection terms.
    RandomStream rng(31);
    const int n1 = 2;
    const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
    const PhaseVector a = draw_phases(rng, n1 + 3);
    const auto e = chu_extended_expand(LaurentTrigPoly::from_sine_product(a), b, 3);

    ClosedFormExpansion expect;
    const double shift = b.sum() - a.sum();
    add_sin_pair(expect, -0.25, 3, shift);
    for (double ak : a) add_sin_pair(expect, 0.25, 1, shift + 2.0 * ak);
    for (double bk : b) add_sin_pair(expect, -0.25, 1, shift + 2.0 * bk);
    for (int k = 0; k < n1; ++k) {
      Complex num(1.0);
      for (double at : a) num *= std::sin(b[k] - at);
      expect.add_pole(k, b[k], num / node_gap_product(b, k), 0);
    }
    expect.canonicalize();
    CHECK(expansion_term_distance(e, expect) < 1e-13);
  }
  SUBCASE("random extended numerators match direct evaluation") {
    for (int trial = 0; trial < 30; ++trial) {
      RandomStream rng(37, static_cast<std::uint64_t>(trial));
      const int n1 = rng.uniform_int(1, 4);
      const int excess = 1 + trial % 3;
      const PhaseVector b = draw_separated_phases(rng, n1, 0.08);
      const LaurentTrigPoly P = draw_laurent(rng, n1 + excess);
      const auto e = chu_extended_expand(P, b, excess);
      const double err = max_error_on_samples(
          e, [&](Complex z) { return P.eval(z) / sin_minus_nodes(z, b); }, b, 200 + trial);
      CHECK(err < 1e-10);
    }
  }
}

TEST_CASE("two-sided ratio expansion") {
  SUBCASE("one fewer numerator node: pure pole sum") {
    const PhaseVector a{1.0};
    const PhaseVector b{0.3, 1.5};
    const auto e = braaksma_expand(a, b, 0);
    CHECK(e.exp_terms().empty());
    for (const PoleTerm& t : e.pole_terms()) CHECK(t.phase_freq == 0);
    const double err = max_error_on_samples(
        e, [&](Complex z) { return direct_ratio(a, b, z); }, b, 7);
    CHECK(err < 1e-12);
  }
  SUBCASE("equal sizes: single constant") {
    const PhaseVector a{kPi / 2};
    const PhaseVector b{kPi / 6};
    const auto e = braaksma_expand(a, b, 0);
    REQUIRE(e.exp_terms().size() == 1);
    CHECK(e.exp_terms()[0].freq == 0);
    CHECK(std::abs(e.exp_terms()[0].coeff - unit_phase(-nu(a, b))) < 1e-15);
    REQUIRE(e.pole_terms().size() == 1);
    CHECK(e.pole_terms()[0].phase_freq == -1);
  }
  SUBCASE("one extra numerator node: sine pair") {
    const PhaseVector a{0.3, 1.1};
    const PhaseVector b{0.7};
    const auto e = braaksma_expand(a, b, 1);
    // sin(nu - z) built directly as -sin(z - nu).
    ClosedFormExpansion expect2;
    add_sin_pair(expect2, -1.0, 1, -nu(a, b));
    for (int j = 0; j < b.size(); ++j) {
      double gap = 1.0;
      for (int l = 0; l < b.size(); ++l) {
        if (l != j) gap *= std::sin(b[l] - b[j]);
      }
      expect2.add_pole(j, b[j], -sin_nodes_minus(a, Complex(b[j])).real() / gap, 0);
    }
    expect2.canonicalize();
    CHECK(expansion_term_distance(e, expect2) < 1e-14);
  }
  SUBCASE("three extra nodes at the sine-pairing split index") {
    RandomStream rng(41);
    const int n = 2;
    const PhaseVector b = draw_separated_phases(rng, n, 0.1);
    const PhaseVector a = draw_phases(rng, n + 3);
    const auto e = braaksma_expand(a, b, 2);

    // -1/4 sin(nu - 3z) = +1/4 sin(3z - nu), and similarly per node group.
    const double v = nu(a, b);
    ClosedFormExpansion expect2;
    add_sin_pair(expect2, 0.25, 3, -v);
    for (double bj : b) add_sin_pair(expect2, 0.25, 1, 2.0 * bj - v);
    for (double aj : a) add_sin_pair(expect2, -0.25, 1, 2.0 * aj - v);
    for (int j = 0; j < b.size(); ++j) {
      double gap = 1.0;
      for (int l = 0; l < b.size(); ++l) {
        if (l != j) gap *= std::sin(b[l] - b[j]);
      }
      expect2.add_pole(j, b[j], -sin_nodes_minus(a, Complex(b[j])).real() / gap, 0);
    }
    expect2.canonicalize();
    CHECK(expansion_term_distance(e, expect2) < 1e-12);
  }
  SUBCASE("split-index invariance across the window") {
    const PhaseVector a{0.3, 1.1};
    const PhaseVector b{0.7};
    RandomStream rng(43);
    std::vector<ClosedFormExpansion> es;
    for (int k = -1; k <= 3; ++k) es.push_back(braaksma_expand(a, b, k));
    SamplePlan plan;
    plan.count = 24;
    plan.seed = 9;
    plan.im_band = clamp_im_band(8);
    for (const Complex& z : sample_points(plan, b)) {
      const Complex direct = direct_ratio(a, b, z);
      for (const auto& e : es) CHECK(rel_error(direct, e.eval(z)) < 1e-11);
    }
  }
  SUBCASE("negated lower coefficients break the identity (historical erratum)") {
    const PhaseVector a{0.3, 0.9, 1.9};
    const PhaseVector b{1.3};
    const int k = 1;
    const auto good = braaksma_expand(a, b, k);
    ClosedFormExpansion bad;
    for (const ExpTerm& t : good.exp_terms()) {
      // Split index 1 with kappa = 2: frequencies -kappa+2j, j >= k come
      // from the lower series; flip their sign.
      const int j = (t.freq + kappa(a, b)) / 2;
      bad.add_exp(j >= k ? -t.coeff : t.coeff, t.freq);
    }
    for (const PoleTerm& t : good.pole_terms()) {
      bad.add_pole(t.node_index, t.center, t.coeff, t.phase_freq);
    }
    bad.canonicalize();
    const Complex z(0.4, 1.1);
    CHECK(rel_error(direct_ratio(a, b, z), good.eval(z)) < 1e-11);
    CHECK(rel_error(direct_ratio(a, b, z), bad.eval(z)) > 1e-3);
  }
  SUBCASE("duplicated nodes are refused") {
    CHECK_THROWS_AS(braaksma_expand(PhaseVector{0.5}, PhaseVector{0.2, 0.2 + kPi}, 0),
                    DegenerateNodes);
  }
}

TEST_CASE("node-sum identity (both sides)") {
  SUBCASE("single-node degenerate form") {
    const PhaseVector a{1.1};
    const PhaseVector b{0.4};
    const auto [lhs, rhs] = meijer_lemma3(a, b, 0);
    CHECK(std::abs(lhs - rhs) < 1e-14);
    // Both sides reduce to 2i sin(a_1 - b_1) for the kappa = 0 case.
    CHECK(std::abs(lhs - Complex(0.0, 2.0) * std::sin(a[0] - b[0])) < 1e-14);
  }
  SUBCASE("interpolation identity as a bare double sum") {
    RandomStream rng(47);
    const int m = 4;
    const PhaseVector a = draw_phases(rng, m);
    const PhaseVector b = draw_separated_phases(rng, m, 0.07);
    const auto [lhs, rhs] = meijer_lemma3(a, b, 0);
    CHECK(std::abs(lhs - rhs) < 1e-11);
    // sum_t prod_j sin(a_j - b_t) / prod_{j != t} sin(b_j - b_t) = sin(nu)
    Complex plain(0.0);
    for (int t = 0; t < m; ++t) {
      Complex num(1.0);
      for (int j = 0; j < m; ++j) num *= std::sin(a[j] - b[t]);
      double den = 1.0;
      for (int j = 0; j < m; ++j) {
        if (j != t) den *= std::sin(b[j] - b[t]);
      }
      plain += num / den;
    }
    CHECK(std::abs(plain - Complex(std::sin(nu(a, b)))) < 1e-11);
    // And the lemma's left side is (2i) times that plain sum.
    CHECK(std::abs(lhs - Complex(0.0, 2.0) * plain) < 1e-11);
  }
  SUBCASE("two extra numerator nodes at the middle split") {
    RandomStream rng(53);
    const int n = 3;
    const PhaseVector a = draw_phases(rng, n + 2);
    const PhaseVector b = draw_separated_phases(rng, n, 0.07);
    const auto [lhs, rhs] = meijer_lemma3(a, b, 1);
    CHECK(std::abs(lhs - rhs) < 1e-11);
    // Node sum equals the sine average 1/4 sum sin(nu-2a) - 1/4 sum sin(nu-2b).
    Complex node_sum(0.0);
    for (int t = 0; t < n; ++t) {
      double den = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != t) den *= std::sin(b[j] - b[t]);
      }
      node_sum += sin_nodes_minus(a, Complex(b[t])) / den;
    }
    double expect = 0.0;
    for (double aj : a) expect += 0.25 * std::sin(nu(a, b) - 2.0 * aj);
    for (double bj : b) expect -= 0.25 * std::sin(nu(a, b) - 2.0 * bj);
    CHECK(std::abs(node_sum - Complex(expect)) < 1e-11);
  }
  SUBCASE("random split indices, including out-of-window") {
    for (int trial = 0; trial < 40; ++trial) {
      RandomStream rng(59, static_cast<std::uint64_t>(trial));
      const int kap = rng.uniform_int(0, 3);
      const int n = rng.uniform_int(0, 4);
      const PhaseVector a = draw_phases(rng, n + kap);
      const PhaseVector b = draw_separated_phases(rng, n, 0.07);
      for (int k = -1; k <= kap + 1; ++k) {
        const auto [lhs, rhs] = meijer_lemma3(a, b, k);
        CHECK(rel_error(lhs, rhs) < 1e-10);
      }
    }
  }
}

TEST_CASE("node-sum identity via the two-sided expansion at a removed node") {
  // Dropping the last node, flipping the split index to kappa+1-k, and
  // evaluating the two-sided expansion at the dropped node reproduces
  // both sides of the node-sum identity after the phase rescaling
  // (2i)^{kappa+1} e^{(-kappa+2k) i b_n}.
  for (int trial = 0; trial < 25; ++trial) {
    RandomStream rng(137, static_cast<std::uint64_t>(trial));
    const int kap = rng.uniform_int(0, 3);
    const int n = rng.uniform_int(1, 4);
    const PhaseVector a = draw_phases(rng, n + kap);
    const PhaseVector b = draw_separated_phases(rng, n, 0.1);
    const double last = b[n - 1];
    const PhaseVector b_head = b.removed(n - 1);

    for (int k = 0; k <= kap; ++k) {
      const auto e = braaksma_expand(a, b_head, kap + 1 - k);
      Complex entire(0.0);
      for (const ExpTerm& t : e.exp_terms()) {
        entire += t.coeff * std::exp(Complex(0.0, 1.0) * double(t.freq) * last);
      }
      const Complex pole_part = e.eval(Complex(last), 0.02) - entire;
      const Complex scale = pow_2i(kap + 1) * unit_phase(double(-kap + 2 * k) * last);
      const auto [lhs, rhs] = meijer_lemma3(a, b, k);
      CHECK(rel_error(scale * entire, rhs) < 1e-10);
      const Complex ratio_at_node = direct_ratio(a, b_head, Complex(last), 0.02);
      CHECK(rel_error(scale * (ratio_at_node - pole_part), lhs) < 1e-10);
    }
  }
}

TEST_CASE("reflection-sum identity (both sides)") {
  SUBCASE("empty numerator, single node") {
    const PhaseVector a;
    const PhaseVector b{0.8};
    const Complex z(0.1, 0.7);
    const auto [lhs, rhs] = meijer_lemma4_check(a, b, 0, z);
    CHECK(std::abs(lhs - rhs) < 1e-14);
    CHECK(std::abs(lhs - 1.0 / std::sin(z - Complex(0.8))) < 1e-14);
  }
  SUBCASE("admissible window is enforced") {
    const PhaseVector a{0.5};
    const PhaseVector b{0.2, 1.0, 2.0};
    const Complex z(0.5, 0.5);
    CHECK_THROWS_AS(meijer_lemma4_check(a, b, -1, z), RangeViolation);
    CHECK_THROWS_AS(meijer_lemma4_check(a, b, 2, z), RangeViolation);
    CHECK_THROWS_AS(meijer_lemma4_check(b, a, 0, z), RangeViolation);  // kappa > -1
  }
  SUBCASE("random instances agree pointwise") {
    for (int trial = 0; trial < 25; ++trial) {
      RandomStream rng(61, static_cast<std::uint64_t>(trial));
      const int kap = rng.uniform_int(-3, -1);
      const int n = rng.uniform_int(-kap, 5);
      const PhaseVector a = draw_phases(rng, n + kap);
      const PhaseVector b = draw_separated_phases(rng, n, 0.07);
      SamplePlan plan;
      plan.count = 16;
      plan.seed = 400 + static_cast<std::uint64_t>(trial);
      for (const Complex& z : sample_points(plan, b)) {
        for (int k = 0; k <= -kap - 1; ++k) {
          const auto [lhs, rhs] = meijer_lemma4_check(a, b, k, z);
          CHECK(rel_error(lhs, rhs) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("general numerator expansion") {
  SUBCASE("pole-only family for low-degree sine numerators, all split exponents") {
    for (int trial = 0; trial < 12; ++trial) {
      RandomStream rng(67, static_cast<std::uint64_t>(trial));
      const int n1 = rng.uniform_int(1, 4);
      const int n = n1 - 1;
      const int m = rng.uniform_int(0, n);
      const double a0 = rng.uniform(0.0, kPi);
      const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
      const LaurentTrigPoly T = make_sine_numerator(m, a0);

      const auto em = general_expand(T, b, Variant::M);
      CHECK(em.exp_terms().empty());

      SamplePlan plan;
      plan.count = 16;
      plan.seed = 500 + static_cast<std::uint64_t>(trial);
      // Modest band: the free-exponent node terms grow like e^{(m+n) Im z}
      // and cancel, so high bands cost digits without testing more.
      plan.im_band = 1.2;
      for (const Complex& z : sample_points(plan, b)) {
        const Complex direct = std::sin(double(m) * z - a0) / sin_minus_nodes(z, b);
        CHECK(rel_error(direct, em.eval(z)) < 1e-11);
        // Classical pole-only form for every admissible split exponent.
        for (int theta = m - n; theta <= m + n; theta += 2) {
          Complex rhs(0.0);
          for (int k = 0; k < n1; ++k) {
            rhs += std::sin(double(m) * b[k] - a0 + double(theta) * (z - b[k])) /
                   (node_gap_product(b, k) * std::sin(z - Complex(b[k])));
          }
          CHECK(rel_error(direct, rhs) < 1e-10);
        }
      }
    }
  }
  SUBCASE("first overshoot harmonic: averaged form constant") {
    for (int n1 : {1, 2, 3, 4}) {
      RandomStream rng(71, static_cast<std::uint64_t>(n1));
      const int n = n1 - 1;
      const double a0 = rng.uniform(0.0, kPi);
      const PhaseVector b = draw_separated_phases(rng, n1, 0.12);
      const LaurentTrigPoly T = make_sine_numerator(n1, a0);
      const auto e = general_expand(T, b, Variant::PM);

      REQUIRE(e.exp_terms().size() == 1);
      CHECK(e.exp_terms()[0].freq == 0);
      const double arg = b.sum() - a0;
      Complex expect;
      if (n % 2 == 0) {
        expect = Complex(std::pow(-4.0, n / 2) * std::cos(arg));
      } else {
        expect = Complex(-std::pow(-4.0, (n - 1) / 2) * 2.0 * std::sin(arg));
      }
      CHECK(std::abs(e.exp_terms()[0].coeff - expect) < 1e-12 * (1.0 + std::abs(expect)));

      // Node terms carry the cotangent pair with weight sin((n+1)b_k - a)/2.
      for (const PoleTerm& t : e.pole_terms()) {
        CHECK(std::abs(t.phase_freq) == 1);
        const Complex want =
            0.5 * std::sin(double(n1) * t.center - a0) / node_gap_product(b, t.node_index);
        CHECK(std::abs(t.coeff - want) < 1e-12 * (1.0 + std::abs(want)));
      }
    }
  }
  SUBCASE("second and third overshoot harmonics match the classical displays") {
    RandomStream rng(73);
    const int n1 = 3;
    const int n = n1 - 1;
    const double a0 = rng.uniform(0.0, kPi);
    const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
    const double arg = b.sum() - a0;
    SamplePlan plan;
    plan.count = 16;
    plan.seed = 77;
    for (int extra : {2, 3}) {
      const int m = n + 1 + extra - 1;  // m = n+2 or n+3
      const LaurentTrigPoly T = make_sine_numerator(m, a0);
      const auto e = general_expand(T, b, Variant::M);
      for (const Complex& z : sample_points(plan, b)) {
        Complex rhs(0.0);
        for (int k = 0; k < n1; ++k) {
          // Node numerator sin(m b_k - a) for m = n+2 and
          // sin((n+2) b_k - a + z) for m = n+3.
          const double node_arg = double(m) * b[k] - a0;
          const Complex shift = extra == 2 ? Complex(0.0) : z - Complex(b[k]);
          rhs += std::sin(Complex(node_arg) + shift) /
                 (node_gap_product(b, k) * std::sin(z - Complex(b[k])));
        }
        const Complex head = extra == 2 ? Complex(2.0 * std::pow(-4.0, n / 2)) *
                                              std::cos(z + Complex(arg))
                                        : Complex(std::pow(-4.0, n / 2)) *
                                              (2.0 * std::cos(2.0 * z + Complex(arg)));
        rhs += head;
        CHECK(rel_error(e.eval(z), rhs) < 1e-11);
      }
    }
  }
  SUBCASE("variants agree with each other and with direct evaluation") {
    for (int trial = 0; trial < 30; ++trial) {
      RandomStream rng(79, static_cast<std::uint64_t>(trial));
      const int n1 = rng.uniform_int(1, 6);
      const int m = rng.uniform_int(0, n1 + 5);
      const PhaseVector b = draw_separated_phases(rng, n1, 0.07);
      const LaurentTrigPoly T = draw_laurent(rng, m);
      const auto em = general_expand(T, b, Variant::M);
      const auto ep = general_expand(T, b, Variant::P);
      const auto epm = general_expand(T, b, Variant::PM);
      SamplePlan plan;
      plan.count = 20;
      plan.seed = 900 + static_cast<std::uint64_t>(trial);
      plan.im_band = clamp_im_band(std::max(
          {em.max_growth_freq(), ep.max_growth_freq(), epm.max_growth_freq()}));
      for (const Complex& z : sample_points(plan, b)) {
        const Complex direct = T.eval(z) / sin_minus_nodes(z, b);
        const Complex vm = em.eval(z);
        CHECK(rel_error(direct, vm) < 1e-10);
        CHECK(rel_error(vm, ep.eval(z)) < 1e-10);
        CHECK(rel_error(vm, epm.eval(z)) < 1e-10);
      }
    }
  }
}

TEST_CASE("sine-product numerator expansion") {
  SUBCASE("one extra sine factor reproduces the sine-plus-poles form") {
    RandomStream rng(83);
    const int n1 = 3;
    const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
    const PhaseVector a = draw_phases(rng, n1 + 1);
    const auto e = sine_product_expand(a, b);

    ClosedFormExpansion expect;
    add_sin_pair(expect, 1.0, 1, -nu(a, b));  // sin(z - nu)
    for (int k = 0; k < n1; ++k) {
      Complex num(1.0);
      for (double at : a) num *= std::sin(b[k] - at);
      expect.add_pole(k, b[k], num / node_gap_product(b, k), 0);
    }
    expect.canonicalize();
    CHECK(expansion_term_distance(e, expect) < 1e-13);
  }
  SUBCASE("two extra sine factors reproduce the cotangent form") {
    RandomStream rng(89);
    const int n1 = 2;
    const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
    const PhaseVector a = draw_phases(rng, n1 + 2);
    const auto e = sine_product_expand(a, b);

    ClosedFormExpansion expect;
    const double shift = b.sum() - a.sum();
    add_cos_pair(expect, -0.5, 2, shift);
    double constant = 0.0;
    for (double ak : a) constant += 0.25 * std::cos(shift + 2.0 * ak);
    for (double bk : b) constant -= 0.25 * std::cos(shift + 2.0 * bk);
    expect.add_exp(Complex(constant), 0);
    for (int k = 0; k < n1; ++k) {
      Complex num(1.0);
      for (double at : a) num *= std::sin(b[k] - at);
      const Complex c = num / node_gap_product(b, k);
      expect.add_pole(k, b[k], 0.5 * c, 1);
      expect.add_pole(k, b[k], 0.5 * c, -1);
    }
    expect.canonicalize();
    CHECK(expansion_term_distance(e, expect) < 1e-13);
  }
  SUBCASE("three extra sine factors reproduce the three-sine form") {
    RandomStream rng(97);
    const int n1 = 2;
    const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
    const PhaseVector a = draw_phases(rng, n1 + 3);
    const auto e = sine_product_expand(a, b);

    ClosedFormExpansion expect;
    const double shift = b.sum() - a.sum();
    add_sin_pair(expect, -0.25, 3, shift);
    for (double ak : a) add_sin_pair(expect, 0.25, 1, shift + 2.0 * ak);
    for (double bk : b) add_sin_pair(expect, -0.25, 1, shift + 2.0 * bk);
    for (int k = 0; k < n1; ++k) {
      Complex num(1.0);
      for (double at : a) num *= std::sin(b[k] - at);
      expect.add_pole(k, b[k], num / node_gap_product(b, k), 0);
    }
    expect.canonicalize();
    CHECK(expansion_term_distance(e, expect) < 1e-12);
  }
  SUBCASE("agrees with the generic builder as canonical term lists") {
    for (int trial = 0; trial < 30; ++trial) {
      RandomStream rng(101, static_cast<std::uint64_t>(trial));
      const int kap = rng.uniform_int(-2, 4);
      const int n1 = rng.uniform_int(std::max(1, 1 - kap), 4);
      const PhaseVector a = draw_phases(rng, n1 + kap);
      const PhaseVector b = draw_separated_phases(rng, n1, 0.08);
      const auto direct = sine_product_expand(a, b);
      const auto generic =
          general_expand(LaurentTrigPoly::from_sine_product(a), b, Variant::PM);
      CHECK(expansion_term_distance(direct, generic) < 1e-12);
    }
  }
  SUBCASE("cotangent product specialization") {
    RandomStream rng(103);
    const int n1 = 3;
    const PhaseVector b = draw_separated_phases(rng, n1, 0.12);
    const double a0 = rng.uniform(0.0, kPi);
    std::vector<double> shifted;
    for (double bk : b) shifted.push_back(bk - kPi / 2);
    shifted.push_back(a0);
    const PhaseVector a(shifted);
    const auto e = sine_product_expand(a, b);
    SamplePlan plan;
    plan.count = 16;
    plan.seed = 19;
    for (const Complex& z : sample_points(plan, b)) {
      Complex direct = std::sin(z - Complex(a0));
      for (double bk : b) direct *= std::cos(z - Complex(bk)) / std::sin(z - Complex(bk));
      CHECK(rel_error(direct, e.eval(z)) < 1e-11);
      // Display form: sin(z - a + (n+1)pi/2) plus cot-weighted reflections.
      Complex rhs = std::sin(z - Complex(a0) + Complex(double(n1) * kPi / 2));
      for (int k = 0; k < n1; ++k) {
        double cot_gap = 1.0;
        for (int j = 0; j < n1; ++j) {
          if (j != k) cot_gap *= std::cos(b[k] - b[j]) / std::sin(b[k] - b[j]);
        }
        rhs += std::sin(b[k] - a0) * cot_gap / std::sin(z - Complex(b[k]));
      }
      CHECK(rel_error(direct, rhs) < 1e-11);
    }
  }
}

TEST_CASE("cosine and sine series expansion") {
  SUBCASE("constant cosine series over one node") {
    const PhaseVector b{0.9};
    const std::vector<double> coeffs = {1.4};  // T_c = 0.7
    const auto e = cos_sin_series_expand(SeriesForm::Cos, coeffs, b);
    CHECK(e.exp_terms().empty());
    REQUIRE(e.pole_terms().size() >= 1);
    const Complex z(2.2, 0.4);
    CHECK(rel_error(e.eval(z), Complex(0.7) / std::sin(z - Complex(0.9))) < 1e-13);
  }
  SUBCASE("single sine harmonic over its own node is constant one") {
    const PhaseVector b{0.0};
    const std::vector<double> coeffs = {0.0, 1.0};  // T_s = sin(z)
    const auto e = cos_sin_series_expand(SeriesForm::Sin, coeffs, b);
    const Complex z(1.3, -0.8);
    CHECK(rel_error(e.eval(z), Complex(1.0)) < 1e-13);
  }
  SUBCASE("random series match direct evaluation") {
    for (int trial = 0; trial < 30; ++trial) {
      RandomStream rng(107, static_cast<std::uint64_t>(trial));
      const int n1 = rng.uniform_int(1, 5);
      const int m = rng.uniform_int(0, n1 + 2);
      const PhaseVector b = draw_separated_phases(rng, n1, 0.08);
      std::vector<double> coeffs(static_cast<size_t>(m) + 1);
      for (double& c : coeffs) c = rng.uniform(-1.0, 1.0);
      const SeriesForm form = trial % 2 == 0 ? SeriesForm::Cos : SeriesForm::Sin;
      const auto e = cos_sin_series_expand(form, coeffs, b);
      const double err = max_error_on_samples(
          e,
          [&](Complex z) {
            Complex t(0.0);
            if (form == SeriesForm::Cos) t = 0.5 * coeffs[0];
            for (int j = 1; j <= m; ++j) {
              t += coeffs[static_cast<size_t>(j)] *
                   (form == SeriesForm::Cos ? std::cos(double(j) * z) : std::sin(double(j) * z));
            }
            return t / sin_minus_nodes(z, b);
          },
          b, 700 + trial);
      CHECK(err < 1e-10);
    }
  }
}

TEST_CASE("residue and finite-sum identities") {
  SUBCASE("generic numerators satisfy both residue identities") {
    for (int trial = 0; trial < 30; ++trial) {
      RandomStream rng(109, static_cast<std::uint64_t>(trial));
      const int n1 = rng.uniform_int(1, 5);
      const PhaseVector b = draw_separated_phases(rng, n1, 0.08);
      const auto [l1, r1] = residue_identity(ResidueKind::Sumres1, draw_laurent(rng, n1 + 2), b);
      CHECK(std::abs(l1 - r1) < 1e-10);
      const auto [l3, r3] = residue_identity(ResidueKind::Sumres3, draw_laurent(rng, n1 + 3), b);
      CHECK(std::abs(l3 - r3) < 1e-10);
    }
  }
  SUBCASE("even sine-product numerator reduces the first identity to the exotic one") {
    RandomStream rng(113);
    const int n1 = 3;
    const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
    const PhaseVector a = draw_phases(rng, n1 + 1);
    const auto [lhs, rhs] =
        residue_identity(ResidueKind::Sumres1, LaurentTrigPoly::from_sine_product(a), b);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    const auto [el, er] = residue_identity(ResidueKind::Exotic, a, b);
    CHECK(std::abs(el - er) < 1e-12);
  }
  SUBCASE("odd sine-product numerator collapses the first identity to 0 = 0") {
    RandomStream rng(127);
    const int n1 = 3;
    const PhaseVector b = draw_separated_phases(rng, n1, 0.1);
    const PhaseVector a = draw_phases(rng, n1 + 2);
    const auto [lhs, rhs] =
        residue_identity(ResidueKind::Sumres1, LaurentTrigPoly::from_sine_product(a), b);
    CHECK(std::abs(lhs) < 1e-12);
    CHECK(std::abs(rhs) < 1e-12);
  }
  SUBCASE("imaginary-part and even-difference identities") {
    for (int trial = 0; trial < 30; ++trial) {
      RandomStream rng(131, static_cast<std::uint64_t>(trial));
      const int n1 = rng.uniform_int(1, 5);
      const PhaseVector b = draw_separated_phases(rng, n1, 0.08);
      const auto [l2, r2] =
          residue_identity(ResidueKind::Kappa2Im, draw_phases(rng, n1 + 2), b);
      CHECK(std::abs(l2 - r2) < 1e-11);
      const auto [le, re] = residue_identity(ResidueKind::Exotic, draw_phases(rng, n1 + 1), b);
      CHECK(std::abs(le - re) < 1e-11);
      const int lambda = rng.uniform_int(0, 2);
      const auto [lv, rv] =
          residue_identity(ResidueKind::EvenKappaSine, draw_phases(rng, n1 + 2 * lambda), b);
      CHECK(std::abs(lv - rv) < 1e-11);
    }
  }
  SUBCASE("size constraints are enforced") {
    const PhaseVector b{0.2, 1.0};
    CHECK_THROWS_AS(residue_identity(ResidueKind::Exotic, PhaseVector{0.5}, b), DegreeMismatch);
    CHECK_THROWS_AS(residue_identity(ResidueKind::Kappa2Im, PhaseVector{0.5}, b), DegreeMismatch);
    CHECK_THROWS_AS(residue_identity(ResidueKind::EvenKappaSine, PhaseVector{0.5, 1.0, 2.0}, b),
                    DegreeMismatch);
    RandomStream rng(1);
    CHECK_THROWS_AS(residue_identity(ResidueKind::Sumres1, draw_laurent(rng, 6), b),
                    DegreeMismatch);
  }
}
