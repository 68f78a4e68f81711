// Command-line front end: build closed-form expansions of trigonometric
// ratios, verify the identity families against direct evaluation, and
// evaluate expansion documents.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sinfrac/document.hpp"
#include "sinfrac/expansion.hpp"
#include "sinfrac/verify.hpp"

namespace {

using namespace sinfrac;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw Error("unparsable number in list: " + item);
    out.push_back(v);
  }
  return out;
}

// Numerator harmonics: "t:re,im;t:re,im;..." naming only nonzero ones.
// Bare "re" or "t:re" shorthands are accepted.
LaurentTrigPoly parse_numerator(const std::string& text) {
  std::map<int, Complex> coeffs;
  std::stringstream ss(text);
  std::string entry;
  while (std::getline(ss, entry, ';')) {
    if (entry.empty()) continue;
    int t = 0;
    std::string value = entry;
    const auto colon = entry.find(':');
    if (colon != std::string::npos) {
      t = std::stoi(entry.substr(0, colon));
      value = entry.substr(colon + 1);
    }
    const auto vals = parse_csv_doubles(value);
    if (vals.empty() || vals.size() > 2) throw Error("bad harmonic entry: " + entry);
    coeffs[t] += Complex(vals[0], vals.size() == 2 ? vals[1] : 0.0);
  }
  return LaurentTrigPoly::from_map(coeffs);
}

Complex parse_z(const std::string& text) {
  const auto vals = parse_csv_doubles(text);
  if (vals.empty() || vals.size() > 2) throw Error("bad complex value: " + text);
  return {vals[0], vals.size() == 2 ? vals[1] : 0.0};
}

PhaseVector to_phases(std::vector<double> values, bool degrees) {
  if (degrees) {
    for (double& v : values) v *= kPi / 180.0;
  }
  return PhaseVector(std::move(values));
}

struct DecomposeArgs {
  std::string a_csv, b_csv, numerator, coeffs_csv;
  std::string identity;
  std::string format = "text";
  int k = 0;
  int theta = 0;
  bool theta_set = false;
  int excess = 0;
  bool degrees = false;
};

int cmd_decompose(const DecomposeArgs& args) {
  if (args.theta_set) {
    throw Error("--theta is reserved for the w-domain monomial tooling; "
                "none of these identities take a free split exponent");
  }
  const PhaseVector b = to_phases(parse_csv_doubles(args.b_csv), args.degrees);

  ClosedFormExpansion e;
  if (args.identity == "braaksma") {
    const PhaseVector a = to_phases(parse_csv_doubles(args.a_csv), args.degrees);
    const int kap = kappa(a, b);
    if (std::abs(args.k) > std::abs(kap) + 8) {
      throw Error("split index too far outside the natural window (|k| <= |kappa|+8)");
    }
    e = braaksma_expand(a, b, args.k);
  } else if (args.identity == "sine-product") {
    const PhaseVector a = to_phases(parse_csv_doubles(args.a_csv), args.degrees);
    e = sine_product_expand(a, b);
  } else if (args.identity == "chu" || args.identity == "chu-ext") {
    const LaurentTrigPoly P = parse_numerator(args.numerator);
    if (args.identity == "chu") {
      e = chu_expand(P, b);
    } else {
      int excess = args.excess;
      if (excess == 0) excess = std::clamp(P.degree() - b.size(), 1, 3);
      e = chu_extended_expand(P, b, excess);
    }
  } else if (args.identity == "general-m" || args.identity == "general-p" ||
             args.identity == "general-pm") {
    const LaurentTrigPoly T = parse_numerator(args.numerator);
    const Variant v = args.identity == "general-m"   ? Variant::M
                      : args.identity == "general-p" ? Variant::P
                                                     : Variant::PM;
    e = general_expand(T, b, v);
  } else if (args.identity == "cos-series" || args.identity == "sin-series") {
    const auto coeffs = parse_csv_doubles(args.coeffs_csv);
    if (coeffs.empty()) throw Error("cos/sin series need --coeffs c0,c1,...");
    e = cos_sin_series_expand(
        args.identity == "cos-series" ? SeriesForm::Cos : SeriesForm::Sin, coeffs, b);
  } else {
    throw Error("unknown identity: " + args.identity);
  }

  if (args.format == "json") {
    ExpansionDocument doc{e, estimate_condition(b)};
    std::cout << emit_document(doc);
  } else if (args.format == "latex") {
    std::cout << render_latex(e);
  } else if (args.format == "text") {
    std::cout << render_text(e);
  } else {
    throw Error("unknown format: " + args.format);
  }
  return 0;
}

struct EvalArgs {
  std::string document_path, a_csv, b_csv, z_text;
  double guard = kDefaultPoleGuard;
  bool degrees = false;
};

int cmd_eval(const EvalArgs& args) {
  if (args.z_text.empty()) throw Error("--z is required");
  Complex z = parse_z(args.z_text);
  if (args.degrees) z *= kPi / 180.0;

  auto print_value = [](const char* label, Complex v) {
    std::printf("%s = %.17g %+.17gi\n", label, v.real(), v.imag());
  };

  std::optional<Complex> doc_value;
  if (!args.document_path.empty()) {
    std::ifstream in(args.document_path);
    if (!in) throw Error("cannot open document: " + args.document_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const ExpansionDocument doc = parse_document(buffer.str());
    doc_value = doc.expansion.eval(z, args.guard);
  }
  std::optional<Complex> direct_value;
  if (!args.b_csv.empty()) {
    const PhaseVector a = to_phases(parse_csv_doubles(args.a_csv), args.degrees);
    const PhaseVector b = to_phases(parse_csv_doubles(args.b_csv), args.degrees);
    direct_value = direct_ratio(a, b, z, args.guard);
  }
  if (!doc_value && !direct_value) {
    throw Error("need --document and/or --a/--b to evaluate");
  }
  if (doc_value) print_value(direct_value ? "document" : "value", *doc_value);
  if (direct_value) print_value(doc_value ? "direct" : "value", *direct_value);
  if (doc_value && direct_value) {
    std::printf("rel_error = %.3e\n", rel_error(*doc_value, *direct_value));
  }
  return 0;
}

struct VerifyArgs {
  std::string identity = "all";
  int trials = 200;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  double separation = 0.05;
  int points = 64;
  bool json = false;
};

int cmd_verify(const VerifyArgs& args) {
  std::vector<std::string> tags;
  if (args.identity == "all") {
    tags = campaign_tags();
  } else if (is_campaign_tag(args.identity)) {
    tags = {args.identity};
  } else {
    throw Error("unknown identity tag: " + args.identity);
  }

  bool all_passed = true;
  std::vector<std::string> json_reports;
  for (const std::string& tag : tags) {
    InstanceSpec spec;
    spec.identity = tag;
    spec.trials = args.trials;
    spec.seed = args.seed;
    spec.tolerance = args.tol;
    spec.separation = args.separation;
    spec.points = args.points;
    const VerificationReport report = run_campaign(spec);
    all_passed = all_passed && report.passed;
    if (args.json) {
      json_reports.push_back(report.to_json());
    } else {
      std::cout << report.to_text();
    }
  }
  if (args.json) {
    std::cout << "[";
    for (size_t i = 0; i < json_reports.size(); ++i) {
      std::cout << (i ? "," : "") << "\n  " << json_reports[i];
    }
    std::cout << "\n]\n";
  }
  return all_passed ? 0 : 1;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SINFRAC_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form partial-fraction expansions of trigonometric ratios"};
  app.require_subcommand(1);

  DecomposeArgs dargs;
  auto* dec = app.add_subcommand("decompose", "build an expansion and print it");
  dec->add_option("--a", dargs.a_csv, "numerator phases, csv radians");
  dec->add_option("--b", dargs.b_csv, "denominator phases, csv radians")->required();
  dec->add_option("--numerator", dargs.numerator, "numerator harmonics t:re,im;...");
  dec->add_option("--coeffs", dargs.coeffs_csv, "real series coefficients c0,c1,...");
  dec->add_option("--identity", dargs.identity,
                  "braaksma|chu|chu-ext|general-m|general-p|general-pm|sine-product|"
                  "cos-series|sin-series")
      ->required();
  dec->add_option("--k", dargs.k, "split index for the two-sided expansion");
  dec->add_option("--theta", dargs.theta, "reserved")->each([&](const std::string&) {
    dargs.theta_set = true;
  });
  dec->add_option("--excess", dargs.excess, "degree overshoot for chu-ext (1..3, default auto)");
  dec->add_option("--format", dargs.format, "json|text|latex");
  dec->add_flag("--degrees", dargs.degrees, "interpret input angles as degrees");

  EvalArgs eargs;
  auto* ev = app.add_subcommand("eval", "evaluate a document and/or the direct ratio");
  ev->add_option("--document", eargs.document_path, "expansion document path");
  ev->add_option("--a", eargs.a_csv, "numerator phases, csv radians");
  ev->add_option("--b", eargs.b_csv, "denominator phases, csv radians");
  ev->add_option("--z", eargs.z_text, "evaluation point re[,im]")->required();
  ev->add_option("--guard", eargs.guard, "pole guard distance (radians)");
  ev->add_flag("--degrees", eargs.degrees, "interpret input angles as degrees");

  VerifyArgs vargs;
  vargs.seed = default_seed();
  auto* ver = app.add_subcommand("verify", "run verification campaigns");
  ver->add_option("--identity", vargs.identity, "campaign tag or 'all'");
  ver->add_option("--trials", vargs.trials, "trials per campaign");
  ver->add_option("--seed", vargs.seed, "campaign seed (default env SINFRAC_SEED or 0)");
  ver->add_option("--tol", vargs.tol, "tolerance");
  ver->add_option("--separation", vargs.separation, "min node separation for draws");
  ver->add_option("--points", vargs.points, "sample points per trial");
  ver->add_flag("--json", vargs.json, "emit reports as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(dec)) return cmd_decompose(dargs);
    if (app.got_subcommand(ev)) return cmd_eval(eargs);
    if (app.got_subcommand(ver)) return cmd_verify(vargs);
  } catch (const sinfrac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
