#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core domain types for trigonometric partial-fraction expansions:
// phase vectors, Laurent trigonometric polynomials, and the canonical
// term algebra (exponential terms + simple-pole terms) shared by all
// identity builders.

namespace sinfrac {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Minimum admissible node separation (radians, mod pi). Below this the
// pole coefficients 1/prod sin(b_j - b_k) lose ~3 digits in double
// precision; builders refuse and reports warn.
inline constexpr double kSeparationMin = 1e-3;

// Default guard distance (radians, mod pi) for evaluation near poles.
inline constexpr double kDefaultPoleGuard = 0.2;

// A term coefficient with magnitude <= this times the largest term
// magnitude is treated as an exact zero produced by roundoff.
inline constexpr double kCanonicalDropRel = 1e-14;

// Cap on series coefficient indices (C_j, D_j, Omega_m, E_j, h_k, e_k).
inline constexpr int kSeriesIndexCap = 64;

// Sampling band |Im z| <= kDefaultImBand, shrunk so that the largest
// term frequency f keeps |f| * band <= kMaxFreqTimesBand (no overflow,
// bounded cancellation).
inline constexpr double kDefaultImBand = 3.0;
inline constexpr double kMaxFreqTimesBand = 45.0;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoleProximity : Error { using Error::Error; };
struct DegenerateNodes : Error { using Error::Error; };
struct ParityViolation : Error { using Error::Error; };
struct DegreeTooHigh : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct RangeViolation : Error { using Error::Error; };
struct RegionExhausted : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };

// e^{ix} for real x.
inline Complex unit_phase(double x) { return {std::cos(x), std::sin(x)}; }

// Floor division (round toward -infinity) for signed ints.
inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// An ordered list of real phases (radians). Hosts both numerator nodes
// and denominator nodes; only the latter require distinctness mod pi.
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> phases);
  PhaseVector(std::initializer_list<double> phases);

  int size() const { return static_cast<int>(phases_.size()); }
  bool empty() const { return phases_.empty(); }
  double operator[](int j) const { return phases_[static_cast<size_t>(j)]; }
  const std::vector<double>& values() const { return phases_; }

  double sum() const;

  // min over j<k of |sin(p_j - p_k)|; +inf when fewer than two phases.
  double min_sine_separation() const;

  // Throws DegenerateNodes unless pairwise distinct mod pi with margin
  // >= separation_min, i.e. min |sin(p_j - p_k)| >= sin(separation_min).
  void require_separated(double separation_min = kSeparationMin) const;

  PhaseVector removed(int j) const;

  auto begin() const { return phases_.begin(); }
  auto end() const { return phases_.end(); }

 private:
  std::vector<double> phases_;
};

// len(a) - len(b); controls the size of the entire part of expansions.
inline int kappa(const PhaseVector& a, const PhaseVector& b) {
  return a.size() - b.size();
}

// Phase aggregate sum(a) - sum(b).
inline double nu(const PhaseVector& a, const PhaseVector& b) {
  return a.sum() - b.sum();
}

// prod_j sin(p_j - z).
Complex sin_nodes_minus(const PhaseVector& nodes, Complex z);

// prod_j sin(z - p_j).
Complex sin_minus_nodes(Complex z, const PhaseVector& nodes);

// prod_{j != k} sin(b_k - b_j). Real because all nodes are real.
double node_gap_product(const PhaseVector& b, int k);

// True when |sin(z - center)| >= sin(guard) for the given pole center;
// the sinh term of |sin| covers the imaginary direction automatically.
bool clears_pole(Complex z, double center, double guard);

// prod sin(a_j - z) / prod sin(b_j - z).
// Throws PoleProximity when z is within `guard` of some b_j mod pi.
Complex direct_ratio(const PhaseVector& a, const PhaseVector& b, Complex z,
                     double guard = kDefaultPoleGuard);

// Finite sum T(z) = sum_{t=-m}^{m} c_t e^{itz}, entire and 2pi-periodic.
// Canonical form keeps the smallest symmetric range with a nonzero top
// coefficient (or degree 0 for the zero polynomial).
class LaurentTrigPoly {
 public:
  LaurentTrigPoly() : degree_(0), coeffs_(1, Complex(0.0)) {}

  // coeffs laid out c_{-degree}..c_{degree} (size 2*degree+1).
  static LaurentTrigPoly from_coeffs(int degree, std::vector<Complex> coeffs);
  static LaurentTrigPoly from_map(const std::map<int, Complex>& coeffs);
  // prod_t sin(z - a_t), multiplied out harmonic by harmonic.
  static LaurentTrigPoly from_sine_product(const PhaseVector& a);
  static LaurentTrigPoly zero() { return LaurentTrigPoly(); }

  int degree() const { return degree_; }
  bool is_zero() const;

  // c_t, zero outside [-degree, degree].
  Complex coeff(int t) const;

  Complex eval(Complex z) const;
  // P(w) with w = e^{iz}: sum c_t w^t.
  Complex eval_w(Complex w) const;

  double max_abs_coeff() const;

  // (T_p, T_a): even-index and odd-index harmonic parts, T_p + T_a = T.
  // Equivalently T_p(z) = (T(z) + T(z+pi))/2, T_a(z) = (T(z) - T(z+pi))/2.
  std::pair<LaurentTrigPoly, LaurentTrigPoly> split_periodic() const;

 private:
  int degree_;
  std::vector<Complex> coeffs_;  // index t + degree_

  void trim();
};

// coeff * e^{i freq z}.
struct ExpTerm {
  Complex coeff;
  int freq = 0;
};

// coeff * e^{i mu (z - center)} / sin(z - center), center = b_{node}.
struct PoleTerm {
  int node_index = 0;
  double center = 0.0;
  Complex coeff;
  int phase_freq = 0;  // mu
};

// Identity-family tag plus a short parameter description.
struct Provenance {
  std::string identity;
  std::string params;
};

// Canonical sum of exponential terms and simple-pole terms. After
// canonicalize(): terms sorted, one entry per freq / (node, mu) pair,
// roundoff zeros dropped.
class ClosedFormExpansion {
 public:
  ClosedFormExpansion() = default;
  explicit ClosedFormExpansion(Provenance prov) : provenance_(std::move(prov)) {}

  void add_exp(Complex coeff, int freq);
  void add_pole(int node_index, double center, Complex coeff, int phase_freq);

  void canonicalize();

  const std::vector<ExpTerm>& exp_terms() const { return exp_terms_; }
  const std::vector<PoleTerm>& pole_terms() const { return pole_terms_; }
  const Provenance& provenance() const { return provenance_; }
  void set_provenance(Provenance prov) { provenance_ = std::move(prov); }

  bool empty() const { return exp_terms_.empty() && pole_terms_.empty(); }

  // Largest |frequency| that controls growth in the imaginary direction
  // (pole terms contribute |mu| + 1).
  int max_growth_freq() const;

  double max_abs_coeff() const;

  // Throws PoleProximity when z is within `guard` of a pole center mod pi.
  Complex eval(Complex z, double guard = kDefaultPoleGuard) const;

 private:
  Provenance provenance_;
  std::vector<ExpTerm> exp_terms_;
  std::vector<PoleTerm> pole_terms_;
};

inline Complex eval_expansion(const ClosedFormExpansion& e, Complex z,
                              double guard = kDefaultPoleGuard) {
  return e.eval(z, guard);
}

// Max coefficient difference between two canonical expansions over the
// union of their term keys, divided by the larger overall coefficient
// magnitude. Zero iff equal as canonical term lists (up to roundoff).
double expansion_term_distance(const ClosedFormExpansion& x,
                               const ClosedFormExpansion& y);

enum class SeriesKind { C, D, Omega, OmegaBar, Eplus, Eminus, Fplus, Fminus };

// Indexed complex coefficient sequence; absent indices read as zero
// (matching the Omega_m = 0 for m < 0 convention).
struct SeriesCoefficients {
  SeriesKind kind = SeriesKind::C;
  std::map<int, Complex> values;

  Complex at(int j) const {
    auto it = values.find(j);
    return it == values.end() ? Complex(0.0) : it->second;
  }
};

}  // namespace sinfrac
