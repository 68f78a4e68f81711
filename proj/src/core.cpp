#include "sinfrac/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sinfrac {

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
  for (double p : phases_) {
    if (!std::isfinite(p)) throw Error("phase vector entries must be finite");
  }
}

PhaseVector::PhaseVector(std::initializer_list<double> phases)
    : PhaseVector(std::vector<double>(phases)) {}

double PhaseVector::sum() const {
  double s = 0.0;
  for (double p : phases_) s += p;
  return s;
}

double PhaseVector::min_sine_separation() const {
  double m = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j + 1 < phases_.size(); ++j) {
    for (size_t k = j + 1; k < phases_.size(); ++k) {
      m = std::min(m, std::abs(std::sin(phases_[j] - phases_[k])));
    }
  }
  return m;
}

void PhaseVector::require_separated(double separation_min) const {
  if (min_sine_separation() < std::sin(separation_min)) {
    throw DegenerateNodes("denominator nodes not distinct modulo pi (min |sin(b_j-b_k)| below margin)");
  }
}

PhaseVector PhaseVector::removed(int j) const {
  std::vector<double> rest;
  rest.reserve(phases_.size() - 1);
  for (int k = 0; k < size(); ++k) {
    if (k != j) rest.push_back(phases_[static_cast<size_t>(k)]);
  }
  return PhaseVector(std::move(rest));
}

Complex sin_nodes_minus(const PhaseVector& nodes, Complex z) {
  Complex p(1.0);
  for (double v : nodes) p *= std::sin(Complex(v) - z);
  return p;
}

Complex sin_minus_nodes(Complex z, const PhaseVector& nodes) {
  Complex p(1.0);
  for (double v : nodes) p *= std::sin(z - Complex(v));
  return p;
}

double node_gap_product(const PhaseVector& b, int k) {
  double p = 1.0;
  for (int j = 0; j < b.size(); ++j) {
    if (j != k) p *= std::sin(b[k] - b[j]);
  }
  return p;
}

bool clears_pole(Complex z, double center, double guard) {
  return std::abs(std::sin(z - Complex(center))) >= std::sin(guard);
}

Complex direct_ratio(const PhaseVector& a, const PhaseVector& b, Complex z,
                     double guard) {
  for (int j = 0; j < b.size(); ++j) {
    if (!clears_pole(z, b[j], guard)) {
      throw PoleProximity("evaluation point too close to a denominator node (mod pi)");
    }
  }
  return sin_nodes_minus(a, z) / sin_nodes_minus(b, z);
}

LaurentTrigPoly LaurentTrigPoly::from_coeffs(int degree, std::vector<Complex> coeffs) {
  if (degree < 0 || coeffs.size() != static_cast<size_t>(2 * degree + 1)) {
    throw Error("Laurent coefficient vector must have size 2*degree+1");
  }
  LaurentTrigPoly t;
  t.degree_ = degree;
  t.coeffs_ = std::move(coeffs);
  t.trim();
  return t;
}

LaurentTrigPoly LaurentTrigPoly::from_map(const std::map<int, Complex>& coeffs) {
  int degree = 0;
  for (const auto& [t, c] : coeffs) degree = std::max(degree, std::abs(t));
  std::vector<Complex> v(static_cast<size_t>(2 * degree + 1), Complex(0.0));
  for (const auto& [t, c] : coeffs) v[static_cast<size_t>(t + degree)] += c;
  return from_coeffs(degree, std::move(v));
}

LaurentTrigPoly LaurentTrigPoly::from_sine_product(const PhaseVector& a) {
  // sin(z - a_t) = (e^{-i a_t} w - e^{i a_t} w^{-1}) / (2i), w = e^{iz}.
  std::vector<Complex> c{Complex(1.0)};
  int deg = 0;
  const Complex inv_2i(0.0, -0.5);  // 1/(2i)
  for (double at : a) {
    const Complex lo = unit_phase(-at) * inv_2i;
    const Complex hi = -unit_phase(at) * inv_2i;
    std::vector<Complex> next(c.size() + 2, Complex(0.0));
    for (size_t j = 0; j < c.size(); ++j) {
      next[j + 2] += c[j] * lo;  // shift by +1 harmonic
      next[j] += c[j] * hi;      // shift by -1 harmonic
    }
    c = std::move(next);
    ++deg;
  }
  return from_coeffs(deg, std::move(c));
}

bool LaurentTrigPoly::is_zero() const {
  for (const Complex& c : coeffs_) {
    if (c != Complex(0.0)) return false;
  }
  return true;
}

Complex LaurentTrigPoly::coeff(int t) const {
  if (std::abs(t) > degree_) return Complex(0.0);
  return coeffs_[static_cast<size_t>(t + degree_)];
}

Complex LaurentTrigPoly::eval(Complex z) const {
  Complex s(0.0);
  for (int t = -degree_; t <= degree_; ++t) {
    const Complex c = coeff(t);
    if (c != Complex(0.0)) s += c * std::exp(Complex(0.0, 1.0) * double(t) * z);
  }
  return s;
}

Complex LaurentTrigPoly::eval_w(Complex w) const {
  Complex s(0.0);
  for (int t = -degree_; t <= degree_; ++t) {
    const Complex c = coeff(t);
    if (c != Complex(0.0)) s += c * std::pow(w, double(t));
  }
  return s;
}

double LaurentTrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::pair<LaurentTrigPoly, LaurentTrigPoly> LaurentTrigPoly::split_periodic() const {
  std::map<int, Complex> even, odd;
  for (int t = -degree_; t <= degree_; ++t) {
    const Complex c = coeff(t);
    if (c == Complex(0.0)) continue;
    (((t % 2) + 2) % 2 == 0 ? even : odd)[t] = c;
  }
  return {from_map(even), from_map(odd)};
}

void LaurentTrigPoly::trim() {
  int d = degree_;
  while (d > 0 && coeff(d) == Complex(0.0) && coeff(-d) == Complex(0.0)) --d;
  if (d == degree_) return;
  std::vector<Complex> v(static_cast<size_t>(2 * d + 1));
  for (int t = -d; t <= d; ++t) v[static_cast<size_t>(t + d)] = coeff(t);
  degree_ = d;
  coeffs_ = std::move(v);
}

void ClosedFormExpansion::add_exp(Complex coeff, int freq) {
  exp_terms_.push_back({coeff, freq});
}

void ClosedFormExpansion::add_pole(int node_index, double center, Complex coeff,
                                   int phase_freq) {
  pole_terms_.push_back({node_index, center, coeff, phase_freq});
}

void ClosedFormExpansion::canonicalize() {
  // Merge duplicate keys.
  std::map<int, Complex> exps;
  for (const ExpTerm& t : exp_terms_) exps[t.freq] += t.coeff;
  std::map<std::pair<int, int>, PoleTerm> poles;
  for (const PoleTerm& t : pole_terms_) {
    auto key = std::make_pair(t.node_index, t.phase_freq);
    auto it = poles.find(key);
    if (it == poles.end()) {
      poles.emplace(key, t);
    } else {
      it->second.coeff += t.coeff;
    }
  }

  double scale = 0.0;
  for (const auto& [f, c] : exps) scale = std::max(scale, std::abs(c));
  for (const auto& [k, t] : poles) scale = std::max(scale, std::abs(t.coeff));
  const double drop = kCanonicalDropRel * scale;

  exp_terms_.clear();
  for (const auto& [f, c] : exps) {
    if (std::abs(c) > drop) exp_terms_.push_back({c, f});
  }
  pole_terms_.clear();
  for (const auto& [k, t] : poles) {
    if (std::abs(t.coeff) > drop) pole_terms_.push_back(t);
  }
  // std::map iteration already yields sorted order: freq, then (node, mu).
}

int ClosedFormExpansion::max_growth_freq() const {
  int m = 0;
  for (const ExpTerm& t : exp_terms_) m = std::max(m, std::abs(t.freq));
  for (const PoleTerm& t : pole_terms_) m = std::max(m, std::abs(t.phase_freq) + 1);
  return m;
}

double ClosedFormExpansion::max_abs_coeff() const {
  double m = 0.0;
  for (const ExpTerm& t : exp_terms_) m = std::max(m, std::abs(t.coeff));
  for (const PoleTerm& t : pole_terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

Complex ClosedFormExpansion::eval(Complex z, double guard) const {
  for (const PoleTerm& t : pole_terms_) {
    if (!clears_pole(z, t.center, guard)) {
      throw PoleProximity("evaluation point too close to a pole center (mod pi)");
    }
  }
  const Complex i(0.0, 1.0);
  Complex s(0.0);
  for (const ExpTerm& t : exp_terms_) {
    s += t.coeff * std::exp(i * double(t.freq) * z);
  }
  for (const PoleTerm& t : pole_terms_) {
    const Complex d = z - Complex(t.center);
    s += t.coeff * std::exp(i * double(t.phase_freq) * d) / std::sin(d);
  }
  return s;
}

double expansion_term_distance(const ClosedFormExpansion& x,
                               const ClosedFormExpansion& y) {
  std::map<int, Complex> ex, ey;
  for (const ExpTerm& t : x.exp_terms()) ex[t.freq] = t.coeff;
  for (const ExpTerm& t : y.exp_terms()) ey[t.freq] = t.coeff;
  std::map<std::pair<int, int>, Complex> px, py;
  for (const PoleTerm& t : x.pole_terms()) px[{t.node_index, t.phase_freq}] = t.coeff;
  for (const PoleTerm& t : y.pole_terms()) py[{t.node_index, t.phase_freq}] = t.coeff;

  const double scale = std::max({x.max_abs_coeff(), y.max_abs_coeff(), 1e-300});
  double worst = 0.0;
  auto scan = [&](const auto& u, const auto& v) {
    for (const auto& [key, c] : u) {
      auto it = v.find(key);
      const Complex other = it == v.end() ? Complex(0.0) : it->second;
      worst = std::max(worst, std::abs(c - other));
    }
  };
  scan(ex, ey);
  scan(ey, ex);
  scan(px, py);
  scan(py, px);
  return worst / scale;
}

}  // namespace sinfrac
