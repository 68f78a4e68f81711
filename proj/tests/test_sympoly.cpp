#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "sinfrac/numeric.hpp"
#include "sinfrac/sympoly.hpp"

using namespace sinfrac;

namespace {

// Brute-force oracles, independent of the recurrence implementations.

Complex brute_elementary(const std::vector<Complex>& v, int k) {
  const int n = static_cast<int>(v.size());
  if (k == 0) return Complex(1.0);
  if (k > n) return Complex(0.0);
  Complex sum(0.0);
  // Enumerate k-subsets via bitmask (n <= 20 in tests).
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    Complex p(1.0);
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) p *= v[static_cast<size_t>(j)];
    }
    sum += p;
  }
  return sum;
}

Complex brute_homogeneous(const std::vector<Complex>& v, int k,
                          int start = 0) {
  if (k == 0) return Complex(1.0);
  Complex sum(0.0);
  for (int j = start; j < static_cast<int>(v.size()); ++j) {
    sum += v[static_cast<size_t>(j)] * brute_homogeneous(v, k - 1, j);
  }
  return sum;
}

std::vector<Complex> random_unit_values(RandomStream& rng, int count) {
  std::vector<Complex> v;
  for (int j = 0; j < count; ++j) v.push_back(unit_phase(rng.uniform(0.0, 2.0 * kPi)));
  return v;
}

}  // namespace

TEST_CASE("elementary symmetric basics") {
  const std::vector<Complex> xy = {Complex(3.0, 1.0), Complex(-2.0, 0.5)};
  auto e = elementary_symmetric(xy, 3);
  CHECK(e[0] == Complex(1.0));
  CHECK(std::abs(e[1] - (xy[0] + xy[1])) < 1e-15);
  CHECK(e[3] == Complex(0.0));  // beyond the number of values

  const std::vector<Complex> v123 = {Complex(1.0), Complex(2.0), Complex(3.0)};
  e = elementary_symmetric(v123, 2);
  CHECK(std::abs(e[2] - Complex(11.0)) < 1e-14);
}

TEST_CASE("complete homogeneous basics") {
  const std::vector<Complex> single = {Complex(2.0)};
  auto h = complete_homogeneous(single, 3);
  CHECK(h[0] == Complex(1.0));
  CHECK(std::abs(h[3] - Complex(8.0)) < 1e-14);

  const std::vector<Complex> v12 = {Complex(1.0), Complex(2.0)};
  h = complete_homogeneous(v12, 2);
  CHECK(std::abs(h[2] - Complex(7.0)) < 1e-14);
}

TEST_CASE("brute-force equivalence on random unit-circle draws") {
  for (int draw = 0; draw < 100; ++draw) {
    RandomStream rng(42, static_cast<std::uint64_t>(draw));
    const int n = rng.uniform_int(0, 5);
    const auto v = random_unit_values(rng, n);
    const auto e = elementary_symmetric(v, 5);
    const auto h = complete_homogeneous(v, 5);
    for (int k = 0; k <= 5; ++k) {
      CHECK(std::abs(e[static_cast<size_t>(k)] - brute_elementary(v, k)) < 1e-13);
      CHECK(std::abs(h[static_cast<size_t>(k)] - brute_homogeneous(v, k)) < 1e-13);
    }
  }
}

TEST_CASE("Newton-style consistency sum (-1)^k e_k h_{j-k} = 0") {
  for (int draw = 0; draw < 20; ++draw) {
    RandomStream rng(7, static_cast<std::uint64_t>(draw));
    const auto v = random_unit_values(rng, rng.uniform_int(1, 6));
    const auto e = elementary_symmetric(v, 12);
    const auto h = complete_homogeneous(v, 12);
    for (int j = 1; j <= 12; ++j) {
      Complex s(0.0);
      for (int k = 0; k <= j; ++k) {
        const double sgn = k % 2 == 0 ? 1.0 : -1.0;
        s += sgn * e[static_cast<size_t>(k)] * h[static_cast<size_t>(j - k)];
      }
      CHECK(std::abs(s) < 1e-11);
    }
  }
}

TEST_CASE("single-node shift identity of h") {
  RandomStream rng(11);
  const auto v = random_unit_values(rng, 5);
  const std::vector<Complex> head(v.begin(), v.end() - 1);
  const auto h_full = complete_homogeneous(v, 8);
  const auto h_head = complete_homogeneous(head, 8);
  for (int l = 0; l <= 8; ++l) {
    Complex s(0.0), p(1.0);
    for (int j = 0; j <= l; ++j) {
      s += h_head[static_cast<size_t>(l - j)] * p;
      p *= v.back();
    }
    CHECK(std::abs(h_full[static_cast<size_t>(l)] - s) < 1e-12);
  }
}

TEST_CASE("exact quadrant powers of 2i") {
  CHECK(pow_2i(0) == Complex(1.0));
  CHECK(pow_2i(1) == Complex(0.0, 2.0));
  CHECK(pow_2i(2) == Complex(-4.0, 0.0));
  CHECK(pow_2i(-1) == Complex(0.0, -0.5));
  CHECK(pow_2i(3, Sign::Minus) == Complex(0.0, 8.0));
  CHECK(pow_2i(-2, Sign::Minus) == Complex(-0.25, 0.0));
}

TEST_CASE("upper series coefficients: leading constants") {
  SUBCASE("equal sizes give a pure phase") {
    const PhaseVector a{0.3, 1.2};
    const PhaseVector b{0.7, 0.2};
    const auto C = braaksma_C(a, b, 0);
    CHECK(std::abs(C.at(0) - unit_phase(nu(a, b))) < 1e-15);
    const auto D = braaksma_D(a, b, 0);
    CHECK(std::abs(D.at(0) - unit_phase(-nu(a, b))) < 1e-15);
  }
  SUBCASE("single-node pair") {
    const PhaseVector a{kPi / 2};
    const PhaseVector b{kPi / 6};
    CHECK(std::abs(braaksma_C(a, b, 0).at(0) - unit_phase(kPi / 3)) < 1e-15);
    CHECK(std::abs(braaksma_D(a, b, 0).at(0) - unit_phase(-kPi / 3)) < 1e-15);
  }
}

TEST_CASE("conjugation symmetry of the two series") {
  RandomStream rng(99);
  const PhaseVector a{0.21, 1.7, 2.8};
  const PhaseVector b{0.9, 1.1};
  const int kap = kappa(a, b);
  const auto C = braaksma_C(a, b, 6);
  const auto D = braaksma_D(a, b, kap - 6);
  // Each upper coefficient pairs with a lower one by conjugation for
  // real phases: D_{kappa-j} = conj(C_j).
  for (int j = 0; j <= 6; ++j) {
    CHECK(std::abs(D.at(kap - j) - std::conj(C.at(j))) < 1e-13);
  }
}

TEST_CASE("power-series coefficients of the node rational function") {
  const PhaseVector a{0.4, 2.2};
  const PhaseVector b{1.3};
  SUBCASE("m = 0 is 1 and negative indices are zero") {
    const auto om = omega(a, b, 0, false);
    CHECK(std::abs(om.at(0) - Complex(1.0)) < 1e-15);
    CHECK(om.at(-1) == Complex(0.0));
    CHECK(om.at(-5) == Complex(0.0));
  }
  SUBCASE("m = 1 is sum of node exponentials") {
    const auto om = omega(a, b, 1, false);
    Complex expect(0.0);
    for (double bk : b) expect += unit_phase(2.0 * bk);
    for (double ak : a) expect -= unit_phase(2.0 * ak);
    CHECK(std::abs(om.at(1) - expect) < 1e-14);
  }
  SUBCASE("relations to the two-sided series") {
    const int kap = kappa(a, b);
    const auto om = omega(a, b, 6, false);
    const auto om_bar = omega(a, b, 6, true);
    const auto C = braaksma_C(a, b, 6);
    const auto D = braaksma_D(a, b, kap - 6);
    for (int m = 0; m <= 6; ++m) {
      CHECK(std::abs(om.at(m) - D.at(kap - m) / D.at(kap)) < 1e-13);
      CHECK(std::abs(om_bar.at(m) - C.at(m) / C.at(0)) < 1e-13);
      CHECK(std::abs(om_bar.at(m) - std::conj(om.at(m))) < 1e-13);
    }
  }
}

TEST_CASE("entire-part coefficient sequence E_j") {
  SUBCASE("single zero node") {
    const PhaseVector b{0.0};
    const auto E = entire_E(b, 0, Sign::Plus);
    CHECK(std::abs(E.at(0) - Complex(0.0, 2.0)) < 1e-15);
  }
  SUBCASE("j = 0 general") {
    const PhaseVector b{0.3, 1.1, 2.0};
    const auto Ep = entire_E(b, 0, Sign::Plus);
    const auto Em = entire_E(b, 0, Sign::Minus);
    CHECK(std::abs(Ep.at(0) - pow_2i(3) * unit_phase(b.sum())) < 1e-14);
    CHECK(std::abs(Em.at(0) - pow_2i(3, Sign::Minus) * unit_phase(-b.sum())) < 1e-14);
  }
  SUBCASE("two nodes, j = 1 is the plain sum") {
    const PhaseVector b{0.4, 1.5};
    const auto E = entire_E(b, 1, Sign::Plus);
    const Complex expect =
        pow_2i(2) * (unit_phase(2.0 * b[0]) + unit_phase(2.0 * b[1])) * unit_phase(b.sum());
    CHECK(std::abs(E.at(1) - expect) < 1e-14);
  }
}

TEST_CASE("entire-part contraction F_k") {
  const PhaseVector b{0.2, 0.9, 1.7};  // n+1 = 3
  SUBCASE("low-degree numerators contract to zero") {
    const LaurentTrigPoly T = LaurentTrigPoly::from_map({{2, Complex(1.0)}, {-1, Complex(0.5)}});
    for (int k = 0; k <= 4; ++k) {
      CHECK(entire_F(T, b, k, Sign::Plus) == Complex(0.0));
      CHECK(entire_F(T, b, k, Sign::Minus) == Complex(0.0));
    }
  }
  SUBCASE("single surviving harmonic") {
    // T = e^{i(n+2)z} with n+1 = 3 nodes: only (k=1, j=0) contributes.
    const LaurentTrigPoly T = LaurentTrigPoly::from_map({{4, Complex(1.0)}});
    const auto E = entire_E(b, 0, Sign::Plus);
    CHECK(std::abs(entire_F(T, b, 1, Sign::Plus) - E.at(0)) < 1e-15);
    CHECK(entire_F(T, b, 1, Sign::Minus) == Complex(0.0));
  }
}
