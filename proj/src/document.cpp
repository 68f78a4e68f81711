#include "sinfrac/document.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace sinfrac {

using nlohmann::json;

std::string to_hex_float(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%a", x);
  return buf;
}

double from_hex_float(const std::string& s) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw Error("unparsable float: " + s);
  return x;
}

namespace {

json complex_decimal(Complex c) { return json::array({c.real(), c.imag()}); }

json complex_hex(Complex c) {
  return json::array({to_hex_float(c.real()), to_hex_float(c.imag())});
}

Complex read_complex(const json& j, const char* decimal_key, const char* hex_key) {
  if (j.contains(hex_key)) {
    const auto& h = j.at(hex_key);
    return {from_hex_float(h.at(0).get<std::string>()),
            from_hex_float(h.at(1).get<std::string>())};
  }
  const auto& d = j.at(decimal_key);
  return {d.at(0).get<double>(), d.at(1).get<double>()};
}

}  // namespace

std::string emit_document(const ExpansionDocument& doc) {
  json j;
  j["schema_version"] = kDocumentSchemaVersion;
  j["provenance"] = {{"identity", doc.expansion.provenance().identity},
                     {"parameters", doc.expansion.provenance().params},
                     {"indexing", "0-based"}};
  j["exp_terms"] = json::array();
  for (const ExpTerm& t : doc.expansion.exp_terms()) {
    j["exp_terms"].push_back({{"freq", t.freq},
                              {"coeff", complex_decimal(t.coeff)},
                              {"coeff_hex", complex_hex(t.coeff)}});
  }
  j["pole_terms"] = json::array();
  for (const PoleTerm& t : doc.expansion.pole_terms()) {
    j["pole_terms"].push_back({{"node_index", t.node_index},
                               {"center", t.center},
                               {"center_hex", to_hex_float(t.center)},
                               {"mu", t.phase_freq},
                               {"coeff", complex_decimal(t.coeff)},
                               {"coeff_hex", complex_hex(t.coeff)}});
  }
  if (doc.condition) {
    j["condition"] = {{"pole_coeff_magnitude", doc.condition->pole_coeff_magnitude},
                      {"digits_lost", doc.condition->digits_lost}};
    // Infinite for fewer than two nodes; JSON has no encoding for that,
    // so the field is simply absent.
    if (std::isfinite(doc.condition->min_node_separation)) {
      j["condition"]["min_node_separation"] = doc.condition->min_node_separation;
    }
  }
  return j.dump(2) + "\n";
}

ExpansionDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("document parse failure: ") + e.what());
  }
  try {
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kDocumentSchemaVersion) {
      throw Error("unsupported document schema version");
    }
    ExpansionDocument doc;
    Provenance prov;
    if (j.contains("provenance")) {
      prov.identity = j["provenance"].value("identity", "");
      prov.params = j["provenance"].value("parameters", "");
    }
    doc.expansion.set_provenance(prov);
    for (const auto& t : j.value("exp_terms", json::array())) {
      doc.expansion.add_exp(read_complex(t, "coeff", "coeff_hex"), t.at("freq").get<int>());
    }
    for (const auto& t : j.value("pole_terms", json::array())) {
      const double center = t.contains("center_hex")
                                ? from_hex_float(t.at("center_hex").get<std::string>())
                                : t.at("center").get<double>();
      doc.expansion.add_pole(t.at("node_index").get<int>(), center,
                             read_complex(t, "coeff", "coeff_hex"), t.at("mu").get<int>());
    }
    if (j.contains("condition")) {
      ConditionEstimate est;
      est.min_node_separation = j["condition"].value(
          "min_node_separation", std::numeric_limits<double>::infinity());
      est.pole_coeff_magnitude = j["condition"].value("pole_coeff_magnitude", 1.0);
      est.digits_lost = j["condition"].value("digits_lost", 0.0);
      doc.condition = est;
    }
    return doc;
  } catch (const json::exception& e) {
    throw Error(std::string("document parse failure: ") + e.what());
  }
}

namespace {

std::string fmt_num(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

bool essentially_real(Complex c) {
  return std::abs(c.imag()) <= 1e-11 * std::max({std::abs(c.real()), std::abs(c.imag()), 1e-300});
}

std::string fmt_complex(Complex c, bool latex) {
  if (essentially_real(c)) return fmt_num(c.real());
  std::ostringstream os;
  os << "(" << fmt_num(c.real()) << (c.imag() < 0 ? " - " : " + ")
     << fmt_num(std::abs(c.imag())) << (latex ? "\\,i" : "i") << ")";
  return os.str();
}

double normalize_angle(double x) {
  while (x > kPi) x -= 2.0 * kPi;
  while (x <= -kPi) x += 2.0 * kPi;
  return x;
}

std::string harmonic_arg(int freq, double phase, bool latex) {
  std::ostringstream os;
  if (freq == 1) {
    os << "z";
  } else {
    os << freq << (latex ? "\\,z" : " z");
  }
  if (std::abs(phase) > 1e-12) {
    os << (phase < 0 ? " - " : " + ") << fmt_num(std::abs(phase));
  }
  return os.str();
}

// One rendered additive term; `negated` pulls a leading minus out so the
// joiner can emit "a - b" instead of "a + -b".
struct RenderedTerm {
  std::string text;
  bool negated = false;
};

RenderedTerm render_conjugate_pair(int freq, Complex upper, bool latex) {
  // upper e^{i f z} + conj(upper) e^{-i f z} = R cos(f z + phi),
  // R = 2|upper|, phi = arg(upper); rendered as the sin form when that
  // shifts the phase closer to zero.
  const double amplitude = 2.0 * std::abs(upper);
  const double phi_cos = normalize_angle(std::arg(upper));
  const double phi_sin = normalize_angle(phi_cos + kPi / 2);
  const bool use_sin = std::abs(phi_sin) < std::abs(phi_cos) - 1e-12;
  const double phase = use_sin ? phi_sin : phi_cos;
  std::ostringstream os;
  os << fmt_num(amplitude) << " " << (latex ? (use_sin ? "\\sin" : "\\cos") : (use_sin ? "sin" : "cos"))
     << (latex ? "\\left(" : "(") << harmonic_arg(freq, phase, latex)
     << (latex ? "\\right)" : ")");
  return {os.str(), false};
}

std::string node_name(int index, bool latex) {
  std::ostringstream os;
  if (latex) {
    os << "b_{" << index << "}";
  } else {
    os << "b" << index;
  }
  return os.str();
}

RenderedTerm render_coefficient_times(Complex coeff, const std::string& body, bool latex,
                                      bool over_sin, const std::string& node) {
  bool neg = false;
  Complex c = coeff;
  if (essentially_real(c) && c.real() < 0) {
    neg = true;
    c = -c;
  }
  std::ostringstream os;
  const std::string cs = fmt_complex(c, latex);
  if (latex && over_sin) {
    os << "\\frac{" << cs << (body.empty() ? "" : "\\," + body) << "}{\\sin\\left(z - " << node
       << "\\right)}";
  } else if (over_sin) {
    os << cs << (body.empty() ? "" : " " + body) << " / sin(z - " << node << ")";
  } else {
    os << cs << (body.empty() ? "" : " " + body);
  }
  return {os.str(), neg};
}

std::vector<RenderedTerm> rendered_terms(const ClosedFormExpansion& e, bool latex) {
  std::vector<RenderedTerm> parts;

  std::map<int, Complex> exps;
  for (const ExpTerm& t : e.exp_terms()) exps[t.freq] = t.coeff;
  // Constant first, then conjugate pairs by rising frequency, then any
  // leftovers that have no conjugate partner.
  std::map<int, bool> consumed;
  if (exps.count(0)) {
    parts.push_back(render_coefficient_times(exps[0], "", latex, false, ""));
    consumed[0] = true;
  }
  for (const auto& [freq, coeff] : exps) {
    if (freq <= 0) continue;
    auto partner = exps.find(-freq);
    if (partner != exps.end() &&
        std::abs(partner->second - std::conj(coeff)) <=
            1e-10 * (std::abs(coeff) + std::abs(partner->second))) {
      parts.push_back(render_conjugate_pair(freq, coeff, latex));
      consumed[freq] = consumed[-freq] = true;
    }
  }
  for (const auto& [freq, coeff] : exps) {
    if (consumed[freq]) continue;
    std::ostringstream body;
    if (latex) {
      body << "e^{" << (freq == 1 ? "" : freq == -1 ? "-" : std::to_string(freq)) << "iz}";
    } else {
      body << "exp(" << freq << "iz)";
    }
    parts.push_back(render_coefficient_times(coeff, body.str(), latex, false, ""));
    consumed[freq] = true;
  }

  std::map<int, std::map<int, Complex>> by_node;  // node -> mu -> coeff
  std::map<int, double> centers;
  for (const PoleTerm& t : e.pole_terms()) {
    by_node[t.node_index][t.phase_freq] = t.coeff;
    centers[t.node_index] = t.center;
  }
  for (auto& [node, mus] : by_node) {
    const std::string bn = node_name(node, latex);
    // Matched +-1 phase pair with a common coefficient renders as cot.
    auto up = mus.find(1);
    auto dn = mus.find(-1);
    if (up != mus.end() && dn != mus.end() &&
        std::abs(up->second - dn->second) <= 1e-10 * (std::abs(up->second) + std::abs(dn->second))) {
      const Complex c = up->second + dn->second;
      std::ostringstream body;
      body << (latex ? "\\cot\\left(z - " : "cot(z - ") << bn << (latex ? "\\right)" : ")");
      parts.push_back(render_coefficient_times(c, body.str(), latex, false, ""));
      mus.erase(up);
      mus.erase(dn);
    }
    for (const auto& [mu, coeff] : mus) {
      if (mu == 0) {
        parts.push_back(render_coefficient_times(coeff, "", latex, true, bn));
      } else {
        std::ostringstream body;
        if (latex) {
          body << "e^{" << (mu == 1 ? "" : mu == -1 ? "-" : std::to_string(mu)) << "i(z - " << bn
               << ")}";
        } else {
          body << "exp(" << mu << "i(z - " << bn << "))";
        }
        parts.push_back(render_coefficient_times(coeff, body.str(), latex, true, bn));
      }
    }
  }
  return parts;
}

std::string join_terms(const std::vector<RenderedTerm>& parts, const char* sep) {
  std::ostringstream os;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i == 0) {
      if (parts[i].negated) os << "-";
    } else {
      os << sep << (parts[i].negated ? "- " : "+ ");
    }
    os << parts[i].text;
  }
  return os.str();
}

std::string node_legend(const ClosedFormExpansion& e, bool latex) {
  std::map<int, double> centers;
  for (const PoleTerm& t : e.pole_terms()) centers[t.node_index] = t.center;
  if (centers.empty()) return "";
  std::ostringstream os;
  os << (latex ? "% nodes: " : "nodes: ");
  bool first = true;
  for (const auto& [node, center] : centers) {
    if (!first) os << ", ";
    first = false;
    os << node_name(node, latex) << " = " << fmt_num(center);
  }
  os << "\n";
  return os.str();
}

}  // namespace

std::string render_text(const ClosedFormExpansion& e) {
  std::ostringstream os;
  const auto& prov = e.provenance();
  os << "expansion " << (prov.identity.empty() ? "(unnamed)" : prov.identity);
  if (!prov.params.empty()) os << " [" << prov.params << "]";
  os << "\n" << node_legend(e, false);
  const auto parts = rendered_terms(e, false);
  if (parts.empty()) {
    os << "F(z) = 0\n";
  } else {
    os << "F(z) = " << join_terms(parts, "\n       ") << "\n";
  }
  return os.str();
}

std::string render_latex(const ClosedFormExpansion& e) {
  std::ostringstream os;
  os << node_legend(e, true);
  const auto parts = rendered_terms(e, true);
  os << "F(z) = " << (parts.empty() ? std::string("0") : join_terms(parts, "\n  ")) << "\n";
  return os.str();
}

}  // namespace sinfrac
