#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "oracles.hpp"
#include "xcone/io.hpp"
#include "xcone/random_inputs.hpp"

using namespace xcone;
using oracles::golden_state;

TEST_CASE("documents parse from both input forms", "[io]") {
  const auto docs = parse_documents(
      R"({"label":"g","x":{"a":[0,1,1,2],"b":[0,1,1,2],"z":[[0,0],[1,0],[1,0],[0,0]]}})");
  REQUIRE(docs.size() == 1);
  REQUIRE(docs[0].x.has_value());
  CHECK(docs[0].label == "g");
  CHECK(*docs[0].x == golden_state());

  // NDJSON stream
  const auto many = parse_documents(
      "{\"x\":{\"a\":[1,0,0,0],\"b\":[1,0,0,0],\"z\":[[1,0],[0,0],[0,0],[0,0]]}}\n"
      "{\"x\":{\"a\":[0,0,0,0],\"b\":[0,0,0,0],\"z\":[[0,0],[0,0],[0,0],[0,0]]}}\n");
  CHECK(many.size() == 2);

  // array form
  const auto arr = parse_documents(
      "[{\"x\":{\"a\":[1,0,0,0],\"b\":[1,0,0,0],\"z\":[[1,0],[0,0],[0,0],[0,0]]}}]");
  CHECK(arr.size() == 1);
}

TEST_CASE("matrix inputs must be self-adjoint with the right shape", "[io]") {
  auto matrix_doc = [](const std::string& entries) {
    return std::string("{\"matrix\":") + entries + "}";
  };
  std::string rows = "[";
  for (int r = 0; r < 8; ++r) {
    rows += "[";
    for (int c = 0; c < 8; ++c) {
      rows += (r == 0 && c == 1) ? "[1,0]" : (r == 1 && c == 0) ? "[0.5,0]" : "[0,0]";
      if (c < 7) rows += ",";
    }
    rows += r < 7 ? "]," : "]";
  }
  rows += "]";
  CHECK_THROWS_WITH(parse_documents(matrix_doc(rows)),
                    Catch::Matchers::ContainsSubstring("(0,1)"));

  CHECK_THROWS_AS(parse_documents("{\"matrix\":[[ [0,0] ]]}"), ParseError);
  CHECK_THROWS_AS(parse_documents("{\"x\":{\"a\":[1,2,3],\"b\":[0,0,0,0],\"z\":[]}}"), ParseError);
  CHECK_THROWS_AS(parse_documents("{\"label\":\"nothing here\"}"), ParseError);
  CHECK_THROWS_AS(
      parse_documents("{\"x\":{\"a\":[0,0,0,0],\"b\":[0,0,0,0],\"z\":[[0,0],[0,0],[0,0],[0,0]]},"
                      "\"matrix\":[]}"),
      ParseError);
  CHECK_THROWS_AS(parse_documents("not json at all {"), ParseError);

  // a valid dense document roundtrips through x_part
  const auto docs = parse_documents(
      "{\"matrix\":[" + [] {
        std::string s;
        for (int r = 0; r < 8; ++r) {
          s += "[";
          for (int c = 0; c < 8; ++c) {
            const bool on = (r == 0 && c == 0) || (r == 7 && c == 7) || (r == 0 && c == 7) ||
                            (r == 7 && c == 0);
            s += on ? "[1,0]" : "[0,0]";
            if (c < 7) s += ",";
          }
          s += r < 7 ? "]," : "]";
        }
        return s;
      }() + "]}");
  REQUIRE(docs[0].matrix.has_value());
  CHECK(x_part(*docs[0].matrix) == oracles::ghz());
}

TEST_CASE("double formatting is round-trip exact", "[io]") {
  SplitMix64 rng(61);
  for (int t = 0; t < 2000; ++t) {
    double v = (rng.u01() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
    CHECK(std::strtod(detail::fmt_double(v).c_str(), nullptr) == v);
  }
  CHECK(detail::fmt_double(1.0) == "1");
  CHECK(detail::json_escape("a\"b\\c\n") == "a\\\"b\\\\c\\n");
}

TEST_CASE("classification reports carry class, profile and slacks", "[io]") {
  InputDocument doc;
  doc.label = "golden";
  doc.x = golden_state();
  const Report rep = classify_document(doc);
  CHECK(rep.class_label.name == "C^{2,6,1}(A)");
  CHECK(rep.x_shaped);
  CHECK(rep.inequalities.size() == 13);

  const std::string json = to_json(rep);
  CHECK(json.find("\"class\":\"C^{2,6,1}(A)\"") != std::string::npos);
  CHECK(json.find("\"A\":true") != std::string::npos);
  CHECK(json.find("\"B\":false") != std::string::npos);
  CHECK(json.find("S1[1,3]") != std::string::npos);
  CHECK(json.find("inconclusive") == std::string::npos);
  // emitted reports parse back as JSON
  CHECK_FALSE(nlohmann::json::parse(json, nullptr, false).is_discarded());

  // the table rendering mentions the class as well
  CHECK(to_table(rep).find("C^{2,6,1}(A)") != std::string::npos);
}

TEST_CASE("dense non-X inputs are flagged inconclusive", "[io]") {
  std::array<Complex, 8> wvec{};
  wvec[1] = wvec[2] = wvec[4] = Complex(1.0 / std::sqrt(3.0), 0);
  InputDocument doc;
  doc.label = "w state";
  doc.matrix = oracles::projector(wvec);
  const Report rep = classify_document(doc);
  CHECK_FALSE(rep.x_shaped);
  const std::string json = to_json(rep);
  CHECK(json.find("\"x_shaped\":false") != std::string::npos);
  CHECK(json.find("\"inconclusive\":[") != std::string::npos);
}

TEST_CASE("emitted certificates and decompositions re-verify after parsing", "[io]") {
  // certificate: serialize the witness object, parse it back, re-check both
  // halves of the certificate
  const XMatrix g = golden_state();
  const auto cert = find_state_witness(g, ConeId::B);
  const std::string obj_json = std::string("{\"x\":") + to_json(cert.object) + "}";
  const auto parsed = parse_documents(obj_json);
  REQUIRE(parsed[0].x.has_value());
  CHECK(*parsed[0].x == cert.object);  // 17 significant digits round-trip exactly
  CHECK(witness_in_cone(*parsed[0].x, dual(ConeId::B)).member);
  CHECK(pair_x(*parsed[0].x, g) == cert.pairing_value);

  // decomposition: family names and params survive serialization
  const auto dec = decompose_constructive(g, ConeId::A);
  const auto j = nlohmann::json::parse(to_json(dec, true));
  Decomposition rebuilt;
  rebuilt.cone = *parse_cone(j.at("cone").get<std::string>());
  for (const auto& jt : j.at("terms")) {
    DecompositionTerm term;
    term.weight = jt.at("weight").get<double>();
    const auto fam = parse_family(jt.at("family").get<std::string>());
    REQUIRE(fam.has_value());
    term.family = *fam;
    for (const auto& [slot, value] : jt.at("params").at("ratios").items())
      term.params.ratio[static_cast<std::size_t>(std::stoi(slot) - 1)] = value.get<double>();
    for (const auto& [slot, value] : jt.at("params").at("phases").items())
      term.params.phase[static_cast<std::size_t>(std::stoi(slot) - 1)] = value.get<double>();
    rebuilt.terms.push_back(term);
  }
  CHECK(verify_decomposition(rebuilt, g));
}

TEST_CASE("GHZ reports attach a verified witness on request", "[io]") {
  InputDocument doc;
  doc.label = "ghz";
  doc.x = oracles::ghz();
  const Report rep = classify_document(doc, Tolerance{}, /*attach_certificate=*/true);
  CHECK(rep.class_label.name == "genuinely entangled");
  REQUIRE(rep.certificate.has_value());
  CHECK(rep.certificate_verified);
  CHECK(rep.certificate->pairing_value == Catch::Approx(-2.0));
  const std::string json = to_json(rep);
  CHECK(json.find("\"certificate\":") != std::string::npos);
  CHECK(json.find("\"verified\":true") != std::string::npos);

  // identical inputs serialize to identical bytes
  CHECK(json == to_json(classify_document(doc, Tolerance{}, true)));
}
