#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sinfrac/core.hpp"
#include "sinfrac/numeric.hpp"

// Verification campaigns: seeded random instance generation per identity
// family, comparison against direct evaluation (or the paired side of an
// identity), and deterministic report aggregation.

namespace sinfrac {

struct InstanceSpec {
  std::string identity;  // one campaign tag; see campaign_tags()
  int r_min = 0, r_max = 6;
  int n_min = 0, n_max = 6;
  // Extra split indices around the natural [0, kappa] window: negative
  // entries add k below 0, positive entries add k above kappa.
  std::vector<int> k_policy = {-2, -1, 1, 2};
  std::uint64_t seed = 0;
  int trials = 200;
  double tolerance = 1e-9;
  double separation = 0.05;  // enforced min node separation when drawing b
  int points = 64;
  bool duplicate_nodes = false;  // test hook: emit a duplicated node pair
  // Stress hook: pin two denominator nodes exactly `separation` apart so
  // campaigns exercise the conditioning limit rather than typical draws.
  bool stress_pair = false;
};

struct TrialIssue {
  int trial = 0;
  double error = 0.0;
  std::string reason;
  // Exact instance parameters as hexadecimal-float text; enough to
  // reproduce the trial bit for bit.
  std::string reproduction;
};

struct VerificationReport {
  std::string identity;
  std::uint64_t seed = 0;
  int trials_run = 0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  ConditionEstimate worst_condition;
  std::optional<TrialIssue> failure;  // lowest failing trial index
  std::vector<std::string> warnings;

  std::string to_text() const;
  std::string to_json() const;
};

// Runs one campaign. Per-trial PRNG streams derive from (seed, trial);
// identical specs produce byte-identical reports. Unknown identity tags
// are refused with Error. Verification failures (and per-trial builder
// errors such as DegenerateNodes) become report content, never throws.
VerificationReport run_campaign(const InstanceSpec& spec);

// Closed-form series coefficients vs the Fourier-fit oracle, the
// power-series cross relations, and the single-node shift identity of
// complete homogeneous polynomials, to depth <= 16.
VerificationReport cross_check_coefficients(const PhaseVector& a, const PhaseVector& b,
                                            int depth);

const std::vector<std::string>& campaign_tags();
bool is_campaign_tag(const std::string& tag);

// Expansion-builder operation -> campaign tags exercising it; the test
// suite asserts every builder is covered.
const std::map<std::string, std::vector<std::string>>& expansion_op_coverage();

// Shared deterministic draw helpers (also used by tests).
PhaseVector draw_phases(RandomStream& rng, int count);
PhaseVector draw_separated_phases(RandomStream& rng, int count, double separation);
LaurentTrigPoly draw_laurent(RandomStream& rng, int degree);

}  // namespace sinfrac
