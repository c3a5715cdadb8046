#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xcone/certify.hpp"
#include "xcone/classify.hpp"
#include "xcone/cones.hpp"
#include "xcone/criteria.hpp"
#include "xcone/extremals.hpp"
#include "xcone/tolerance.hpp"
#include "xcone/xmatrix.hpp"

namespace xcone {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One input: either the sparse X form {"a":[4],"b":[4],"z":[[re,im]x4]} or a
// dense self-adjoint {"matrix": 8x8 of [re,im]}, plus an optional label.
struct InputDocument {
  std::optional<XMatrix> x;
  std::optional<Hermitian8> matrix;
  std::string label;
};

namespace detail {

inline Complex parse_complex(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": complex values are [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::array<double, 4> parse_real4(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw ParseError(where + ": expected 4 numbers");
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_number()) throw ParseError(where + ": expected 4 numbers");
    out[i] = j[i].get<double>();
  }
  return out;
}

}  // namespace detail

inline InputDocument parse_document(const nlohmann::json& j, const Tolerance& tol = {}) {
  if (!j.is_object()) throw ParseError("input document must be a JSON object");
  InputDocument doc;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw ParseError("label must be a string");
    doc.label = j.at("label").get<std::string>();
  }
  const bool has_x = j.contains("x"), has_matrix = j.contains("matrix");
  if (has_x == has_matrix)
    throw ParseError("exactly one of \"x\" or \"matrix\" must be present");
  if (has_x) {
    const auto& jx = j.at("x");
    if (!jx.is_object() || !jx.contains("a") || !jx.contains("b") || !jx.contains("z"))
      throw ParseError("\"x\" needs fields a, b, z");
    std::array<Complex, 4> z{};
    const auto& jz = jx.at("z");
    if (!jz.is_array() || jz.size() != 4) throw ParseError("x.z: expected 4 complex entries");
    for (std::size_t i = 0; i < 4; ++i)
      z[i] = detail::parse_complex(jz[i], "x.z[" + std::to_string(i) + "]");
    doc.x = make_x(detail::parse_real4(jx.at("a"), "x.a"), detail::parse_real4(jx.at("b"), "x.b"), z);
    return doc;
  }
  const auto& jm = j.at("matrix");
  if (!jm.is_array() || jm.size() != 8) throw ParseError("matrix: expected 8 rows");
  Hermitian8 h;
  for (int r = 0; r < 8; ++r) {
    const auto& row = jm[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 8)
      throw ParseError("matrix: row " + std::to_string(r) + " must have 8 entries");
    for (int c = 0; c < 8; ++c)
      h.m[static_cast<std::size_t>(r * 8 + c)] = detail::parse_complex(
          row[static_cast<std::size_t>(c)],
          "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  // self-adjointness check, then exact symmetrization
  double scale = 1.0;
  for (const auto& v : h.m) scale = std::max(scale, std::abs(v));
  for (int r = 0; r < 8; ++r)
    for (int c = r; c < 8; ++c) {
      const Complex d = h.at(r, c) - std::conj(h.at(c, r));
      if (std::abs(d) > tol.eps * scale)
        throw ParseError("matrix is not self-adjoint at entries (" + std::to_string(r) + "," +
                         std::to_string(c) + ") / (" + std::to_string(c) + "," +
                         std::to_string(r) + ")");
    }
  for (int r = 0; r < 8; ++r)
    for (int c = r; c < 8; ++c)
      h.set(r, c, 0.5 * (h.at(r, c) + std::conj(h.at(c, r))));
  doc.matrix = h;
  return doc;
}

// Accepts a single JSON object, a JSON array of objects, or NDJSON.
inline std::vector<InputDocument> parse_documents(const std::string& text,
                                                  const Tolerance& tol = {}) {
  std::vector<InputDocument> docs;
  const auto whole = nlohmann::json::parse(text, nullptr, false);
  if (!whole.is_discarded()) {
    if (whole.is_array()) {
      for (const auto& j : whole) docs.push_back(parse_document(j, tol));
    } else {
      docs.push_back(parse_document(whole, tol));
    }
    return docs;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ParseError("line " + std::to_string(lineno) + ": invalid JSON");
    docs.push_back(parse_document(j, tol));
  }
  if (docs.empty()) throw ParseError("no input documents found");
  return docs;
}

// --- serialization -----------------------------------------------------------
// Reports are emitted through a hand-rolled writer so numbers are printed with
// 17 significant digits (round-trip exact) and output is byte-deterministic.

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace detail

inline std::string to_json(const XMatrix& x) {
  using detail::fmt_double;
  std::string s = "{\"a\":[";
  for (std::size_t i = 0; i < 4; ++i) s += fmt_double(x.a[i]) + (i < 3 ? "," : "");
  s += "],\"b\":[";
  for (std::size_t i = 0; i < 4; ++i) s += fmt_double(x.b[i]) + (i < 3 ? "," : "");
  s += "],\"z\":[";
  for (std::size_t i = 0; i < 4; ++i) {
    s += "[" + fmt_double(x.z[i].real()) + "," + fmt_double(x.z[i].imag()) + "]";
    if (i < 3) s += ",";
  }
  s += "]}";
  return s;
}

inline std::string to_json(const IneqReport& r) {
  using detail::fmt_double;
  std::string s = "{\"kind\":\"" + ineq_name(r.kind) + "\"";
  s += ",\"lhs\":" + fmt_double(r.lhs);
  s += ",\"rhs\":" + fmt_double(r.rhs);
  s += ",\"slack\":" + fmt_double(r.slack);
  s += std::string(",\"satisfied\":") + (r.satisfied ? "true" : "false");
  if (r.kind.family == IneqKind::Family::W2)
    s += ",\"raw_slacks\":[" + fmt_double(r.raw_slacks[0]) + "," + fmt_double(r.raw_slacks[1]) + "]";
  s += "}";
  return s;
}

inline std::string to_json(const GeneratorParams& p) {
  using detail::fmt_double;
  std::string s = "{\"ratios\":{";
  bool first = true;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!p.ratio[k]) continue;
    if (!first) s += ",";
    s += "\"" + std::to_string(k + 1) + "\":" + fmt_double(*p.ratio[k]);
    first = false;
  }
  s += "},\"phases\":{";
  first = true;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!p.phase[k]) continue;
    if (!first) s += ",";
    s += "\"" + std::to_string(k + 1) + "\":" + fmt_double(*p.phase[k]);
    first = false;
  }
  s += "}}";
  return s;
}

inline std::string to_json(const Decomposition& d, bool verified) {
  using detail::fmt_double;
  std::string s = "{\"cone\":\"" + cone_name(d.cone) + "\"";
  s += ",\"residual\":" + fmt_double(d.residual);
  s += std::string(",\"verified\":") + (verified ? "true" : "false");
  s += ",\"terms\":[";
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    const auto& t = d.terms[i];
    s += "{\"weight\":" + fmt_double(t.weight) + ",\"family\":\"" + family_name(t.family) +
         "\",\"params\":" + to_json(t.params) + "}";
    if (i + 1 < d.terms.size()) s += ",";
  }
  s += "]}";
  return s;
}

inline std::string to_json(const Certificate& c, ConeId cone, bool verified) {
  using detail::fmt_double;
  std::string s = "{\"kind\":\"";
  s += c.kind == Certificate::Kind::witness ? "witness" : "counterstate";
  s += "\",\"cone\":\"" + cone_name(cone) + "\"";
  s += ",\"pairing\":" + fmt_double(c.pairing_value);
  s += std::string(",\"verified\":") + (verified ? "true" : "false");
  s += ",\"object\":" + to_json(c.object) + "}";
  return s;
}

// Classification result for one document.
struct Report {
  std::string label;
  bool x_shaped = true;
  double off_x_residual = 0.0;
  LatticeProfile profile;
  ClassLabel class_label;
  std::vector<IneqReport> inequalities;
  std::optional<Certificate> certificate;
  ConeId certificate_cone = ConeId::JoinABC;
  bool certificate_verified = false;
};

// All distinct inequalities governing the state-side lattice, in a fixed
// reporting order.
inline std::vector<IneqKind> state_inequality_catalogue() {
  using K = IneqKind;
  return {K::s1(1, 2), K::s1(1, 3), K::s1(1, 4), K::s1(2, 3), K::s1(2, 4), K::s1(3, 4),
          K::s2(1, 2), K::s2(1, 3), K::s2(1, 4), K::s3(1),   K::s3(2),   K::s3(3),
          K::s3(4)};
}

inline Report classify_document(const InputDocument& doc, const Tolerance& tol = {},
                                bool attach_certificate = false) {
  Report rep;
  rep.label = doc.label;
  XMatrix x;
  if (doc.x) {
    x = *doc.x;
  } else {
    rep.off_x_residual = off_x_residual(*doc.matrix);
    rep.x_shaped = rep.off_x_residual <= tol.eps * (1.0 + frobenius_norm(*doc.matrix));
    x = x_part(*doc.matrix);
  }
  rep.profile = lattice_profile(x, tol);
  rep.class_label = partition_class(rep.profile);
  if (detail::diagonals_nonnegative(x, tol)) {
    for (const auto& k : state_inequality_catalogue())
      rep.inequalities.push_back(eval_state_inequality(x, k, tol));
  }
  if (attach_certificate && rep.profile.psd && !rep.profile.member(ConeId::JoinABC)) {
    rep.certificate_cone = ConeId::JoinABC;
    rep.certificate = find_state_witness(x, ConeId::JoinABC, tol);
    const auto check = witness_in_cone(rep.certificate->object, dual(ConeId::JoinABC), tol);
    rep.certificate_verified = check.member && rep.certificate->pairing_value < 0.0;
  }
  return rep;
}

inline std::string to_json(const Report& r) {
  using detail::fmt_double;
  std::string s = "{\"label\":\"" + detail::json_escape(r.label) + "\"";
  s += std::string(",\"x_shaped\":") + (r.x_shaped ? "true" : "false");
  if (!r.x_shaped) s += ",\"off_x_residual\":" + fmt_double(r.off_x_residual);
  s += std::string(",\"psd\":") + (r.profile.psd ? "true" : "false");
  s += ",\"class\":\"" + detail::json_escape(r.class_label.name) + "\"";
  s += ",\"signature\":\"";
  for (bool bit : r.class_label.signature) s += bit ? '1' : '0';
  s += "\",\"profile\":{";
  for (std::size_t k = 0; k < 11; ++k) {
    s += "\"" + cone_name(primal_cones()[k]) + "\":";
    s += r.profile.membership[k] ? "true" : "false";
    if (k < 10) s += ",";
  }
  s += "}";
  if (!r.x_shaped) {
    // memberships of the X-part do not transfer to the full input
    s += ",\"inconclusive\":[";
    bool first = true;
    for (std::size_t k = 0; k < 11; ++k) {
      if (!r.profile.membership[k]) continue;
      if (!first) s += ",";
      s += "\"" + cone_name(primal_cones()[k]) + "\"";
      first = false;
    }
    s += "]";
  }
  s += ",\"inequalities\":[";
  for (std::size_t i = 0; i < r.inequalities.size(); ++i) {
    s += to_json(r.inequalities[i]);
    if (i + 1 < r.inequalities.size()) s += ",";
  }
  s += "]";
  if (r.certificate) s += ",\"certificate\":" + to_json(*r.certificate, r.certificate_cone, r.certificate_verified);
  s += "}";
  return s;
}

// Plain-text rendering for interactive use.
inline std::string to_table(const Report& r) {
  std::ostringstream out;
  out << "label: " << (r.label.empty() ? "(unnamed)" : r.label) << "\n";
  if (!r.x_shaped)
    out << "  input is not X-shaped (off-X residual " << detail::fmt_double(r.off_x_residual)
        << "); verdicts are necessary criteria on the X-part only\n";
  out << "  psd: " << (r.profile.psd ? "yes" : "no") << "\n";
  out << "  class: " << r.class_label.name << "\n  cones:";
  for (std::size_t k = 0; k < 11; ++k)
    out << " " << cone_name(primal_cones()[k]) << "="
        << (r.profile.membership[k] ? "yes" : "no");
  out << "\n  inequalities:\n";
  for (const auto& iq : r.inequalities)
    out << "    " << ineq_name(iq.kind) << ": slack " << detail::fmt_double(iq.slack) << " "
        << (iq.satisfied ? "(holds)" : "(violated)") << "\n";
  if (r.certificate) {
    out << "  certificate (" << cone_name(r.certificate_cone)
        << "): pairing " << detail::fmt_double(r.certificate->pairing_value)
        << (r.certificate_verified ? " [verified]" : " [UNVERIFIED]") << "\n";
  }
  return out.str();
}

}  // namespace xcone
