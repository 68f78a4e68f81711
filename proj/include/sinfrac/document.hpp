#pragma once

#include <optional>
#include <string>

#include "sinfrac/core.hpp"
#include "sinfrac/numeric.hpp"

// Serialization of expansions: a versioned JSON document with exact
// hexadecimal-float fields (plus human-readable decimal duplicates), and
// text/LaTeX renderings that group conjugate exponential pairs into
// sin/cos forms and phase pairs into cotangent terms.

namespace sinfrac {

inline constexpr int kDocumentSchemaVersion = 1;

struct ExpansionDocument {
  ClosedFormExpansion expansion;
  std::optional<ConditionEstimate> condition;
};

// Exact round trip: parse_document(emit_document(d)) reproduces every
// coefficient bit for bit (hex-float fields are authoritative).
std::string emit_document(const ExpansionDocument& doc);
ExpansionDocument parse_document(const std::string& text);

std::string render_text(const ClosedFormExpansion& e);
std::string render_latex(const ClosedFormExpansion& e);

std::string to_hex_float(double x);
double from_hex_float(const std::string& s);

}  // namespace sinfrac
