#include "sinfrac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "sinfrac/expansion.hpp"
#include "sinfrac/sympoly.hpp"

namespace sinfrac {

namespace {

std::string hex_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%a", x);
  return buf;
}

std::string hex_phases(const char* name, const PhaseVector& v) {
  std::ostringstream os;
  os << name << "=[";
  for (int j = 0; j < v.size(); ++j) {
    if (j) os << ",";
    os << hex_double(v[j]);
  }
  os << "]";
  return os.str();
}

std::string hex_complex(Complex z) {
  return "(" + hex_double(z.real()) + "," + hex_double(z.imag()) + ")";
}

std::string hex_laurent(const char* name, const LaurentTrigPoly& t) {
  std::ostringstream os;
  os << name << "={";
  bool first = true;
  for (int k = -t.degree(); k <= t.degree(); ++k) {
    if (t.coeff(k) == Complex(0.0)) continue;
    if (!first) os << ";";
    first = false;
    os << k << ":" << hex_complex(t.coeff(k));
  }
  os << "}";
  return os.str();
}

struct TrialResult {
  double error = 0.0;
  std::string reproduction;
  ConditionEstimate condition;
  bool structural_fail = false;  // term-level mismatch independent of tolerance
  std::string structural_reason;
};

using Runner = std::function<TrialResult(const InstanceSpec&, int trial)>;

// Max relative pointwise error of an expansion against a reference
// function over a guarded deterministic sample set. The band adapts to
// the expansion's term growth so cancellation stays below tolerance.
double max_pointwise_error(const ClosedFormExpansion& e,
                           const std::function<Complex(Complex)>& reference,
                           const PhaseVector& b, std::uint64_t seed, int points,
                           double tolerance) {
  SamplePlan plan;
  plan.count = points;
  plan.seed = seed;
  plan.im_band = band_for_precision(e.max_growth_freq(), e.max_abs_coeff(), tolerance);
  const auto zs = sample_points(plan, b);
  double worst = 0.0;
  for (const Complex& z : zs) {
    worst = std::max(worst, rel_error(reference(z), e.eval(z)));
  }
  return worst;
}

// The split indices exercised for a given kappa: the natural window
// [0, kappa] plus the requested offsets outside it.
std::vector<int> k_values(const InstanceSpec& spec, int kap) {
  std::vector<int> ks;
  for (int k = std::min(0, kap); k <= std::max(0, kap); ++k) {
    if (k >= 0 && k <= kap) ks.push_back(k);
  }
  for (int o : spec.k_policy) {
    if (o < 0) ks.push_back(o);
    if (o > 0) ks.push_back(kap + o);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

TrialResult run_braaksma_trial(const InstanceSpec& spec, int trial) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int r = rng.uniform_int(spec.r_min, spec.r_max);
  const int n = rng.uniform_int(spec.n_min, spec.n_max);
  const PhaseVector a = draw_phases(rng, r);
  PhaseVector b = draw_separated_phases(rng, n, spec.separation);
  if (spec.duplicate_nodes && n >= 2) {
    std::vector<double> v = b.values();
    v[1] = v[0];
    b = PhaseVector(v);
  } else if (spec.stress_pair && n >= 2) {
    std::vector<double> v = b.values();
    v[1] = v[0] + spec.separation;
    b = PhaseVector(v);
  }
  const int kap = kappa(a, b);
  const auto ks = k_values(spec, kap);

  TrialResult res;
  res.condition = estimate_condition(b);
  std::ostringstream repro;
  repro << hex_phases("a", a) << " " << hex_phases("b", b) << " k={";
  for (size_t i = 0; i < ks.size(); ++i) repro << (i ? "," : "") << ks[i];
  repro << "}";
  res.reproduction = repro.str();

  std::vector<ClosedFormExpansion> es;
  int max_freq = 1;
  double max_coeff = 1.0;
  for (int k : ks) {
    es.push_back(braaksma_expand(a, b, k));
    max_freq = std::max(max_freq, es.back().max_growth_freq());
    max_coeff = std::max(max_coeff, es.back().max_abs_coeff());
  }

  SamplePlan plan;
  plan.count = spec.points;
  plan.seed = rng.next_u64();
  plan.im_band = band_for_precision(max_freq, max_coeff, spec.tolerance);
  const auto zs = sample_points(plan, b);
  for (const Complex& z : zs) {
    const Complex direct = direct_ratio(a, b, z);
    Complex first(0.0);
    for (size_t i = 0; i < es.size(); ++i) {
      const Complex v = es[i].eval(z);
      res.error = std::max(res.error, rel_error(direct, v));
      if (i == 0) {
        first = v;
      } else {
        res.error = std::max(res.error, rel_error(first, v));  // split-index invariance
      }
    }
  }
  return res;
}

TrialResult run_chu_trial(const InstanceSpec& spec, int trial, int excess) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int n1 = rng.uniform_int(std::max(1, spec.n_min), std::max(1, spec.n_max));
  const PhaseVector b = draw_separated_phases(rng, n1, spec.separation);
  const int deg = excess == 0 ? rng.uniform_int(0, n1) : n1 + excess;
  const LaurentTrigPoly P = draw_laurent(rng, deg);

  TrialResult res;
  res.condition = estimate_condition(b);
  res.reproduction = hex_laurent("P", P) + " " + hex_phases("b", b);

  const auto e = excess == 0 ? chu_expand(P, b) : chu_extended_expand(P, b, excess);
  res.error = max_pointwise_error(
      e, [&](Complex z) { return P.eval(z) / sin_minus_nodes(z, b); }, b, rng.next_u64(),
      spec.points, spec.tolerance);
  return res;
}

TrialResult run_monomial_trial(const InstanceSpec& spec, int trial) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int n1 = rng.uniform_int(1, 4);
  const int m = rng.uniform_int(0, 8);
  const int n = n1 - 1;
  const PhaseVector base = draw_separated_phases(rng, n1, std::max(spec.separation, 0.1));
  std::vector<Complex> gammas;
  for (int k = 0; k < n1; ++k) gammas.push_back(rng.uniform(0.6, 1.5) * unit_phase(base[k]));

  TrialResult res;
  std::ostringstream repro;
  repro << "m=" << m << " gammas=[";
  for (size_t i = 0; i < gammas.size(); ++i) repro << (i ? "," : "") << hex_complex(gammas[i]);
  repro << "]";
  res.reproduction = repro.str();

  std::vector<int> thetas;
  for (int theta = m + n; theta >= m - n - 6; theta -= 2) thetas.push_back(theta);

  std::vector<WDomainExpansion> es;
  for (int theta : thetas) es.push_back(monomial_expand(m, theta, gammas));

  // Sample w away from +-gamma_k and from 0 (negative theta powers).
  int accepted = 0;
  std::uint64_t salt = rng.next_u64();
  RandomStream wrng(salt, 0);
  while (accepted < 24) {
    const Complex w = wrng.complex_in_box(-2.0, 2.0, -2.0, 2.0);
    // Negative split exponents raise 1/|w| to ~8th power; keep w away
    // from the origin so that stays well-conditioned.
    if (std::abs(w) < 0.4) continue;
    bool ok = true;
    for (const Complex& g : gammas) {
      if (std::abs(w * w - g * g) < 0.1) ok = false;
    }
    if (!ok) continue;
    ++accepted;
    const Complex direct = es.front().lhs(w);
    Complex first(0.0);
    for (size_t i = 0; i < es.size(); ++i) {
      const Complex v = es[i].eval(w);
      res.error = std::max(res.error, rel_error(direct, v));
      if (i == 0) {
        first = v;
      } else {
        res.error = std::max(res.error, rel_error(first, v));  // theta invariance
      }
    }
  }
  return res;
}

TrialResult run_general_trial(const InstanceSpec& spec, int trial, Variant variant) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int n1 = rng.uniform_int(std::max(1, spec.n_min), std::min(6, std::max(1, spec.n_max)));
  const int m = rng.uniform_int(0, n1 + 5);  // m <= n + 6
  const PhaseVector b = draw_separated_phases(rng, n1, spec.separation);
  const LaurentTrigPoly T = draw_laurent(rng, m);

  TrialResult res;
  res.condition = estimate_condition(b);
  res.reproduction = hex_laurent("T", T) + " " + hex_phases("b", b);

  const auto e = general_expand(T, b, variant);
  const std::uint64_t point_seed = rng.next_u64();
  res.error = max_pointwise_error(
      e, [&](Complex z) { return T.eval(z) / sin_minus_nodes(z, b); }, b, point_seed,
      spec.points, spec.tolerance);

  if (variant == Variant::PM) {
    // Pairwise variant agreement on the same points.
    const auto em = general_expand(T, b, Variant::M);
    const auto ep = general_expand(T, b, Variant::P);
    SamplePlan plan;
    plan.count = spec.points;
    plan.seed = point_seed;
    plan.im_band = band_for_precision(
        std::max({e.max_growth_freq(), em.max_growth_freq(), ep.max_growth_freq()}),
        std::max({e.max_abs_coeff(), em.max_abs_coeff(), ep.max_abs_coeff()}),
        spec.tolerance);
    for (const Complex& z : sample_points(plan, b)) {
      const Complex v = e.eval(z);
      res.error = std::max(res.error, rel_error(v, em.eval(z)));
      res.error = std::max(res.error, rel_error(v, ep.eval(z)));
    }
  }
  return res;
}

TrialResult run_sine_product_trial(const InstanceSpec& spec, int trial) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int kap = rng.uniform_int(-2, 4);
  const int n1 = rng.uniform_int(std::max(1, 1 - kap), 4);
  const int r1 = n1 + kap;
  const PhaseVector a = draw_phases(rng, r1);
  const PhaseVector b = draw_separated_phases(rng, n1, spec.separation);

  TrialResult res;
  res.condition = estimate_condition(b);
  res.reproduction = hex_phases("a", a) + " " + hex_phases("b", b);

  const auto e = sine_product_expand(a, b);
  res.error = max_pointwise_error(
      e,
      [&](Complex z) { return sin_minus_nodes(z, a) / sin_minus_nodes(z, b); }, b,
      rng.next_u64(), spec.points, spec.tolerance);

  // Same object through the generic builder, term by term.
  const auto via_general = general_expand(LaurentTrigPoly::from_sine_product(a), b, Variant::PM);
  const double dist = expansion_term_distance(e, via_general);
  if (dist > 1e-12) {
    res.structural_fail = true;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "canonical term mismatch vs general builder (%.3e)", dist);
    res.structural_reason = buf;
  }
  return res;
}

TrialResult run_series_trial(const InstanceSpec& spec, int trial, SeriesForm form) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int n1 = rng.uniform_int(std::max(1, spec.n_min), std::min(6, std::max(1, spec.n_max)));
  const int m = rng.uniform_int(0, n1 + 4);
  const PhaseVector b = draw_separated_phases(rng, n1, spec.separation);
  std::vector<double> coeffs(static_cast<size_t>(m) + 1);
  for (double& c : coeffs) c = rng.uniform(-1.0, 1.0);

  TrialResult res;
  res.condition = estimate_condition(b);
  std::ostringstream repro;
  repro << "c=[";
  for (size_t i = 0; i < coeffs.size(); ++i) repro << (i ? "," : "") << hex_double(coeffs[i]);
  repro << "] " << hex_phases("b", b);
  res.reproduction = repro.str();

  auto reference = [&](Complex z) {
    Complex t(0.0);
    if (form == SeriesForm::Cos) {
      t = 0.5 * coeffs[0];
      for (int j = 1; j <= m; ++j) t += coeffs[static_cast<size_t>(j)] * std::cos(double(j) * z);
    } else {
      for (int j = 1; j <= m; ++j) t += coeffs[static_cast<size_t>(j)] * std::sin(double(j) * z);
    }
    return t / sin_minus_nodes(z, b);
  };

  const auto e = cos_sin_series_expand(form, coeffs, b);
  res.error = max_pointwise_error(e, reference, b, rng.next_u64(), spec.points,
                                  spec.tolerance);
  return res;
}

TrialResult run_meijer3_trial(const InstanceSpec& spec, int trial) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int kap = rng.uniform_int(0, 3);
  const int n = rng.uniform_int(std::max(0, spec.n_min), std::min(4, std::max(0, spec.n_max)));
  const PhaseVector a = draw_phases(rng, n + kap);
  const PhaseVector b = draw_separated_phases(rng, n, spec.separation);

  TrialResult res;
  res.condition = estimate_condition(b);
  res.reproduction = hex_phases("a", a) + " " + hex_phases("b", b);
  for (int k = -1; k <= kap + 1; ++k) {
    const auto [lhs, rhs] = meijer_lemma3(a, b, k);
    res.error = std::max(res.error, rel_error(lhs, rhs));
  }
  return res;
}

TrialResult run_meijer4_trial(const InstanceSpec& spec, int trial) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int kap = rng.uniform_int(-3, -1);
  const int n = rng.uniform_int(std::max(-kap, 1), 6);
  const PhaseVector a = draw_phases(rng, n + kap);
  const PhaseVector b = draw_separated_phases(rng, n, spec.separation);

  TrialResult res;
  res.condition = estimate_condition(b);
  res.reproduction = hex_phases("a", a) + " " + hex_phases("b", b);

  SamplePlan plan;
  plan.count = 32;
  plan.seed = rng.next_u64();
  plan.im_band = band_for_precision(-kap + 1, res.condition.pole_coeff_magnitude,
                                    spec.tolerance);
  const auto zs = sample_points(plan, b);
  for (int k = 0; k <= -kap - 1; ++k) {
    for (const Complex& z : zs) {
      const auto [lhs, rhs] = meijer_lemma4_check(a, b, k, z);
      res.error = std::max(res.error, rel_error(lhs, rhs));
    }
    // The same sum as a two-sided expansion with shifted split index:
    // negated node terms, phase kappa+2k+1, and no entire part.
    const auto via_braaksma = braaksma_expand(a, b, k + kap + 1);
    ClosedFormExpansion mirror;
    for (int t = 0; t < b.size(); ++t) {
      double gap = 1.0;
      for (int l = 0; l < b.size(); ++l) {
        if (l != t) gap *= std::sin(b[l] - b[t]);
      }
      mirror.add_pole(t, b[t], -sin_nodes_minus(a, Complex(b[t])) / gap, kap + 2 * k + 1);
    }
    mirror.canonicalize();
    const double dist = expansion_term_distance(via_braaksma, mirror);
    if (!via_braaksma.exp_terms().empty() || dist > 1e-12) {
      res.structural_fail = true;
      res.structural_reason = "reflection sum does not match the shifted two-sided expansion";
    }
  }
  return res;
}

TrialResult run_residue_trial(const InstanceSpec& spec, int trial, ResidueKind kind) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int n1 = rng.uniform_int(std::max(1, spec.n_min), std::min(5, std::max(1, spec.n_max)));
  const PhaseVector b = draw_separated_phases(rng, n1, spec.separation);

  TrialResult res;
  res.condition = estimate_condition(b);

  auto absdiff = [](std::pair<Complex, Complex> sides) {
    return std::abs(sides.first - sides.second);
  };

  switch (kind) {
    case ResidueKind::Sumres1: {
      const LaurentTrigPoly P = draw_laurent(rng, n1 + 2);
      res.reproduction = hex_laurent("P", P) + " " + hex_phases("b", b);
      res.error = absdiff(residue_identity(kind, P, b));
      // Odd sine-product numerator: the identity must collapse to 0 = 0.
      const PhaseVector a = draw_phases(rng, n1 + 2);
      const auto [lhs, rhs] =
          residue_identity(kind, LaurentTrigPoly::from_sine_product(a), b);
      res.error = std::max({res.error, std::abs(lhs), std::abs(rhs)});
      break;
    }
    case ResidueKind::Sumres3: {
      const LaurentTrigPoly P = draw_laurent(rng, n1 + 3);
      res.reproduction = hex_laurent("P", P) + " " + hex_phases("b", b);
      res.error = absdiff(residue_identity(kind, P, b));
      break;
    }
    case ResidueKind::Exotic: {
      const PhaseVector a = draw_phases(rng, n1 + 1);
      res.reproduction = hex_phases("a", a) + " " + hex_phases("b", b);
      res.error = absdiff(residue_identity(kind, a, b));
      break;
    }
    case ResidueKind::Kappa2Im: {
      const PhaseVector a = draw_phases(rng, n1 + 2);
      res.reproduction = hex_phases("a", a) + " " + hex_phases("b", b);
      res.error = absdiff(residue_identity(kind, a, b));
      break;
    }
    case ResidueKind::EvenKappaSine: {
      const int lambda = rng.uniform_int(0, 2);
      const PhaseVector a = draw_phases(rng, n1 + 2 * lambda);
      res.reproduction = hex_phases("a", a) + " " + hex_phases("b", b);
      res.error = absdiff(residue_identity(kind, a, b));
      break;
    }
  }
  return res;
}

TrialResult run_coefficients_trial(const InstanceSpec& spec, int trial) {
  RandomStream rng(spec.seed, static_cast<std::uint64_t>(trial));
  const int r = rng.uniform_int(0, std::min(5, spec.r_max));
  const int n = rng.uniform_int(0, std::min(5, spec.n_max));
  const PhaseVector a = draw_phases(rng, r);
  const PhaseVector b = draw_separated_phases(rng, n, spec.separation);
  TrialResult res;
  res.condition = estimate_condition(b);
  res.reproduction = hex_phases("a", a) + " " + hex_phases("b", b);
  const auto report = cross_check_coefficients(a, b, 8);
  res.error = report.max_rel_error;
  if (!report.passed) {
    res.structural_fail = true;
    res.structural_reason = "coefficient cross checks failed";
  }
  return res;
}

const std::map<std::string, Runner>& runner_registry() {
  static const std::map<std::string, Runner> registry = {
      {"braaksma", [](const InstanceSpec& s, int t) { return run_braaksma_trial(s, t); }},
      {"chu", [](const InstanceSpec& s, int t) { return run_chu_trial(s, t, 0); }},
      {"chu-ext",
       [](const InstanceSpec& s, int t) { return run_chu_trial(s, t, 1 + t % 3); }},
      {"monomial", [](const InstanceSpec& s, int t) { return run_monomial_trial(s, t); }},
      {"meijer3", [](const InstanceSpec& s, int t) { return run_meijer3_trial(s, t); }},
      {"meijer4", [](const InstanceSpec& s, int t) { return run_meijer4_trial(s, t); }},
      {"general-m",
       [](const InstanceSpec& s, int t) { return run_general_trial(s, t, Variant::M); }},
      {"general-p",
       [](const InstanceSpec& s, int t) { return run_general_trial(s, t, Variant::P); }},
      {"general-pm",
       [](const InstanceSpec& s, int t) { return run_general_trial(s, t, Variant::PM); }},
      {"sine-product",
       [](const InstanceSpec& s, int t) { return run_sine_product_trial(s, t); }},
      {"cos-series",
       [](const InstanceSpec& s, int t) { return run_series_trial(s, t, SeriesForm::Cos); }},
      {"sin-series",
       [](const InstanceSpec& s, int t) { return run_series_trial(s, t, SeriesForm::Sin); }},
      {"sumres1",
       [](const InstanceSpec& s, int t) { return run_residue_trial(s, t, ResidueKind::Sumres1); }},
      {"sumres3",
       [](const InstanceSpec& s, int t) { return run_residue_trial(s, t, ResidueKind::Sumres3); }},
      {"exotic",
       [](const InstanceSpec& s, int t) { return run_residue_trial(s, t, ResidueKind::Exotic); }},
      {"kappa2im",
       [](const InstanceSpec& s, int t) { return run_residue_trial(s, t, ResidueKind::Kappa2Im); }},
      {"even-kappa-sine",
       [](const InstanceSpec& s, int t) {
         return run_residue_trial(s, t, ResidueKind::EvenKappaSine);
       }},
      {"coefficients",
       [](const InstanceSpec& s, int t) { return run_coefficients_trial(s, t); }},
  };
  return registry;
}

}  // namespace

PhaseVector draw_phases(RandomStream& rng, int count) {
  std::vector<double> v(static_cast<size_t>(count));
  for (double& x : v) x = rng.uniform(0.0, kPi);
  return PhaseVector(std::move(v));
}

PhaseVector draw_separated_phases(RandomStream& rng, int count, double separation) {
  const double margin = std::sin(separation);
  for (int attempt = 0; attempt < 4000; ++attempt) {
    PhaseVector v = draw_phases(rng, count);
    if (v.min_sine_separation() >= margin) return v;
  }
  throw RegionExhausted("could not draw phases with the requested separation");
}

LaurentTrigPoly draw_laurent(RandomStream& rng, int degree) {
  std::vector<Complex> c(static_cast<size_t>(2 * degree + 1));
  for (Complex& x : c) x = rng.complex_in_box(-1.0, 1.0, -1.0, 1.0);
  // Keep the degree canonical.
  if (std::abs(c.back()) < 0.1) c.back() += Complex(0.5, 0.25);
  return LaurentTrigPoly::from_coeffs(degree, std::move(c));
}

const std::vector<std::string>& campaign_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> t;
    for (const auto& [tag, fn] : runner_registry()) t.push_back(tag);
    return t;
  }();
  return tags;
}

bool is_campaign_tag(const std::string& tag) {
  return runner_registry().count(tag) > 0;
}

const std::map<std::string, std::vector<std::string>>& expansion_op_coverage() {
  static const std::map<std::string, std::vector<std::string>> coverage = {
      {"monomial_expand", {"monomial"}},
      {"chu_expand", {"chu"}},
      {"chu_extended_expand", {"chu-ext"}},
      {"braaksma_expand", {"braaksma"}},
      {"meijer_lemma3", {"meijer3"}},
      {"meijer_lemma4_check", {"meijer4"}},
      {"general_expand", {"general-m", "general-p", "general-pm"}},
      {"sine_product_expand", {"sine-product"}},
      {"cos_sin_series_expand", {"cos-series", "sin-series"}},
      {"residue_identity", {"sumres1", "sumres3", "exotic", "kappa2im", "even-kappa-sine"}},
  };
  return coverage;
}

VerificationReport run_campaign(const InstanceSpec& spec) {
  const auto& registry = runner_registry();
  auto it = registry.find(spec.identity);
  if (it == registry.end()) {
    throw Error("unknown identity tag: " + spec.identity);
  }
  if (spec.tolerance < 1e-12) throw RangeViolation("tolerance must be >= 1e-12");

  VerificationReport report;
  report.identity = spec.identity;
  report.seed = spec.seed;
  report.tolerance = spec.tolerance;
  report.trials_run = spec.trials;

  for (int trial = 0; trial < spec.trials; ++trial) {
    try {
      const TrialResult res = it->second(spec, trial);
      report.max_rel_error = std::max(report.max_rel_error, res.error);
      if (res.condition.digits_lost > report.worst_condition.digits_lost) {
        report.worst_condition = res.condition;
      }
      const bool failed = res.error > spec.tolerance || res.structural_fail;
      if (failed && !report.failure) {
        report.passed = false;
        report.failure = TrialIssue{
            trial, res.error,
            res.structural_fail ? res.structural_reason : "tolerance exceeded",
            res.reproduction};
      } else if (failed) {
        report.passed = false;
      }
    } catch (const Error& err) {
      report.passed = false;
      if (!report.failure) {
        report.failure = TrialIssue{trial, 0.0, err.what(), ""};
      }
    }
  }
  if (report.worst_condition.digits_lost > 3.0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "ill-conditioned node set encountered (~%.1f digits lost); pass/fail unchanged",
                  report.worst_condition.digits_lost);
    report.warnings.push_back(buf);
  }
  return report;
}

VerificationReport cross_check_coefficients(const PhaseVector& a, const PhaseVector& b,
                                            int depth) {
  if (depth < 0 || depth > 16) throw RangeViolation("depth must be in [0, 16]");
  VerificationReport report;
  report.identity = "coefficients";
  report.tolerance = 1e-8;
  report.trials_run = 1;
  report.worst_condition = estimate_condition(b);

  const int kap = kappa(a, b);
  double worst = 0.0;

  // (i) closed forms vs the Fourier-fit oracle.
  const int count = std::min(depth + 1, 16);
  const auto closed_c = braaksma_C(a, b, count - 1);
  const auto fit_c = fit_series_coefficients(a, b, HalfPlane::Upper, count);
  const auto closed_d = braaksma_D(a, b, kap - (count - 1));
  const auto fit_d = fit_series_coefficients(a, b, HalfPlane::Lower, count);
  for (int j = 0; j < count; ++j) {
    worst = std::max(worst, rel_error(closed_c.at(j), fit_c.at(j)));
    worst = std::max(worst, rel_error(closed_d.at(kap - j), fit_d.at(kap - j)));
  }

  // (ii) power-series cross relations (and conjugation for real phases).
  const auto om = omega(a, b, depth, /*conjugated=*/false);
  const auto om_bar = omega(a, b, depth, /*conjugated=*/true);
  const auto full_c = braaksma_C(a, b, depth);
  const auto full_d = braaksma_D(a, b, kap - depth);
  for (int m = 0; m <= depth; ++m) {
    worst = std::max(worst, rel_error(om.at(m), full_d.at(kap - m) / full_d.at(kap)));
    worst = std::max(worst, rel_error(om_bar.at(m), full_c.at(m) / full_c.at(0)));
    worst = std::max(worst, rel_error(om_bar.at(m), std::conj(om.at(m))));
  }

  // (iii) single-node shift identity of the complete homogeneous family.
  if (b.size() >= 1) {
    const auto args = harmonic_args(b, Sign::Minus);
    const std::vector<Complex> head(args.begin(), args.end() - 1);
    const auto h_full = complete_homogeneous(args, depth);
    const auto h_head = complete_homogeneous(head, depth);
    const Complex last = args.back();
    for (int l = 0; l <= depth; ++l) {
      Complex s(0.0);
      Complex p(1.0);
      for (int j = 0; j <= l; ++j) {
        s += h_head[static_cast<size_t>(l - j)] * p;
        p *= last;
      }
      worst = std::max(worst, rel_error(h_full[static_cast<size_t>(l)], s));
    }
  }

  report.max_rel_error = worst;
  report.passed = worst <= report.tolerance;
  return report;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-16s trials=%-4d max_rel_err=%.3e tol=%.1e seed=%llu %s",
                identity.c_str(), trials_run, max_rel_error, tolerance,
                static_cast<unsigned long long>(seed), passed ? "PASS" : "FAIL");
  os << buf;
  if (worst_condition.digits_lost > 0.0) {
    std::snprintf(buf, sizeof(buf), " (min_sep=%.2e, ~%.1f digits lost)",
                  worst_condition.min_node_separation, worst_condition.digits_lost);
    os << buf;
  }
  os << "\n";
  for (const std::string& w : warnings) os << "  warning: " << w << "\n";
  if (failure) {
    std::snprintf(buf, sizeof(buf), "  first failure: trial=%d err=%.3e reason=%s\n",
                  failure->trial, failure->error, failure->reason.c_str());
    os << buf;
    if (!failure->reproduction.empty()) {
      os << "  reproduce: " << failure->reproduction << "\n";
    }
  }
  return os.str();
}

std::string VerificationReport::to_json() const {
  std::ostringstream os;
  char buf[256];
  auto esc = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    return out;
  };
  os << "{";
  os << "\"identity\":\"" << esc(identity) << "\",";
  std::snprintf(buf, sizeof(buf),
                "\"seed\":%llu,\"trials\":%d,\"max_rel_error\":%.17g,\"tolerance\":%.17g,",
                static_cast<unsigned long long>(seed), trials_run, max_rel_error, tolerance);
  os << buf;
  std::snprintf(buf, sizeof(buf),
                "\"condition\":{\"min_node_separation\":%.17g,\"pole_coeff_magnitude\":%.17g,"
                "\"digits_lost\":%.17g},",
                worst_condition.min_node_separation, worst_condition.pole_coeff_magnitude,
                worst_condition.digits_lost);
  os << buf;
  os << "\"warnings\":[";
  for (size_t i = 0; i < warnings.size(); ++i) {
    os << (i ? "," : "") << "\"" << esc(warnings[i]) << "\"";
  }
  os << "],";
  if (failure) {
    std::snprintf(buf, sizeof(buf), "\"failure\":{\"trial\":%d,\"error\":%.17g,",
                  failure->trial, failure->error);
    os << buf << "\"reason\":\"" << esc(failure->reason) << "\",\"reproduction\":\""
       << esc(failure->reproduction) << "\"},";
  }
  os << "\"passed\":" << (passed ? "true" : "false") << "}";
  return os.str();
}

}  // namespace sinfrac
