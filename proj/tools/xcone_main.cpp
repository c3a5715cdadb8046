// Command-line front end: classify states, emit witnesses/counterstates and
// extreme-ray decompositions, sample cone members, and run verification
// suites. Exit codes: 0 success, 1 valid-but-negative result, 2 bad input.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define XCONE_ISATTY _isatty(_fileno(stdout))
#else
#include <unistd.h>
#define XCONE_ISATTY isatty(fileno(stdout))
#endif

#include <CLI11.hpp>

#include "xcone/random_inputs.hpp"
#include "xcone/xcone.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitBadInput = 2;

xcone::Tolerance tolerance_from(double flag_value, bool flag_given) {
  if (flag_given) return xcone::Tolerance(flag_value);
  if (const char* env = std::getenv("XCONE_TOL")) {
    try {
      return xcone::Tolerance(std::stod(env));
    } catch (const std::exception&) {
      throw xcone::ParseError("XCONE_TOL is not a valid tolerance");
    }
  }
  return xcone::Tolerance{};
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw xcone::ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

xcone::ConeId require_cone(const std::string& name) {
  const auto c = xcone::parse_cone(name);
  if (!c) throw xcone::ParseError("unknown cone name: " + name);
  return *c;
}

class OutputSink {
 public:
  OutputSink(const std::string& json_out, bool force_json) {
    if (!json_out.empty()) {
      file_.open(json_out);
      if (!file_) throw xcone::ParseError("cannot open output file: " + json_out);
      json_ = true;
    } else {
      json_ = force_json || !XCONE_ISATTY;
    }
  }

  bool json() const { return json_; }

  void line(const std::string& s) {
    if (file_.is_open())
      file_ << s << "\n";
    else
      std::cout << s << "\n";
  }

 private:
  std::ofstream file_;
  bool json_ = false;
};

int run_classify(const std::vector<std::string>& inputs, const xcone::Tolerance& tol,
                 const std::string& json_out, bool force_json, bool certify) {
  OutputSink sink(json_out, force_json);
  std::vector<xcone::InputDocument> docs;
  for (const auto& path : inputs.empty() ? std::vector<std::string>{"-"} : inputs) {
    auto batch = xcone::parse_documents(read_input(path), tol);
    docs.insert(docs.end(), batch.begin(), batch.end());
  }
  for (const auto& doc : docs) {
    const auto rep = xcone::classify_document(doc, tol, certify);
    sink.line(sink.json() ? xcone::to_json(rep) : xcone::to_table(rep));
  }
  return kExitOk;
}

int run_witness(const std::string& input, const std::string& cone_name,
                const xcone::Tolerance& tol, const std::string& json_out, bool force_json) {
  const auto cone = require_cone(cone_name);
  const auto docs = xcone::parse_documents(read_input(input), tol);
  OutputSink sink(json_out, force_json);
  int exit_code = kExitOk;
  for (const auto& doc : docs) {
    const xcone::XMatrix x = doc.x ? *doc.x : xcone::x_part(*doc.matrix);
    try {
      xcone::Certificate cert = xcone::is_primal(cone)
                                    ? xcone::find_state_witness(x, cone, tol)
                                    : xcone::find_witness_counterstate(x, cone, tol);
      // the certificate object lives on the opposite side of the duality
      const auto check = xcone::is_primal(cone)
                             ? xcone::witness_in_cone(cert.object, xcone::dual(cone), tol)
                             : xcone::state_in_cone(cert.object, xcone::dual(cone), tol);
      const bool verified = check.member && cert.pairing_value < 0.0;
      sink.line(xcone::to_json(cert, cone, verified));
      if (!verified) exit_code = kExitNegative;
    } catch (const xcone::NoCertificate& e) {
      sink.line(std::string("{\"error\":\"") + e.what() + "\",\"label\":\"" +
                xcone::detail::json_escape(doc.label) + "\"}");
      exit_code = kExitNegative;
    }
  }
  return exit_code;
}

int run_decompose(const std::string& input, const std::string& cone_name,
                  const std::string& method, const xcone::Tolerance& tol,
                  const std::string& json_out, bool force_json) {
  const auto cone = require_cone(cone_name);
  const auto docs = xcone::parse_documents(read_input(input), tol);
  OutputSink sink(json_out, force_json);
  int exit_code = kExitOk;
  for (const auto& doc : docs) {
    const xcone::XMatrix x = doc.x ? *doc.x : xcone::x_part(*doc.matrix);
    try {
      xcone::Decomposition dec;
      if (method == "constructive") {
        dec = xcone::decompose_constructive(x, cone, tol);
      } else {
        dec = xcone::decompose_dictionary(x, cone, {}, tol);
      }
      const bool verified = xcone::verify_decomposition(dec, x, tol);
      sink.line(xcone::to_json(dec, verified));
      if (!verified) exit_code = kExitNegative;
    } catch (const std::domain_error& e) {
      sink.line(std::string("{\"error\":\"") + e.what() + "\",\"label\":\"" +
                xcone::detail::json_escape(doc.label) + "\"}");
      exit_code = kExitNegative;
    }
  }
  return exit_code;
}

int run_sample(const std::string& cone_name, std::size_t count, std::uint64_t seed,
               const std::string& json_out, bool force_json) {
  const auto cone = require_cone(cone_name);
  OutputSink sink(json_out, force_json);
  xcone::SplitMix64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const auto terms = xcone::sample_cone_terms(cone, rng);
    const auto x = xcone::combine(terms);
    std::string s = "{\"label\":\"" + cone_name + "#" + std::to_string(k) + "\"";
    s += ",\"cone\":\"" + xcone::cone_name(cone) + "\"";
    s += ",\"seed\":" + std::to_string(seed);
    s += ",\"x\":" + xcone::to_json(x);
    s += ",\"recipe\":[";
    for (std::size_t t = 0; t < terms.size(); ++t) {
      s += "{\"weight\":" + xcone::detail::fmt_double(terms[t].weight) + ",\"family\":\"" +
           xcone::family_name(terms[t].family) + "\",\"params\":" + xcone::to_json(terms[t].params) +
           "}";
      if (t + 1 < terms.size()) s += ",";
    }
    s += "]}";
    sink.line(s);
  }
  return kExitOk;
}

int run_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
               const xcone::Tolerance& tol) {
  using namespace xcone;
  if (suite == "duality") {
    std::vector<std::pair<ConeId, ConeId>> pairs;
    for (const auto c : primal_cones()) pairs.emplace_back(c, dual(c));
    const auto stats = duality_fuzz(pairs, trials, seed);
    bool ok = true;
    for (const auto& st : stats) {
      std::printf("duality %-8s x %-13s trials=%llu min pairing = %.3e\n",
                  cone_name(st.primal).c_str(), cone_name(st.dual_cone).c_str(),
                  static_cast<unsigned long long>(st.trials), st.min_pairing);
      ok = ok && st.min_pairing >= -tol.eps;
    }
    std::printf("duality suite: %s\n", ok ? "PASS" : "FAIL");
    return ok ? kExitOk : kExitNegative;
  }
  if (suite == "ppt") {
    SplitMix64 rng(seed);
    std::uint64_t disagreements = 0;
    const std::array<std::pair<ConeId, std::vector<Party>>, 4> cases = {{
        {ConeId::A, {Party::A}},
        {ConeId::B, {Party::B}},
        {ConeId::C, {Party::C}},
        {ConeId::MeetABC, {Party::A, Party::B, Party::C}},
    }};
    for (std::uint64_t t = 0; t < trials; ++t) {
      const XMatrix x = random_x(rng);
      for (const auto& [cone, parties] : cases) {
        const bool via_criteria = state_in_cone(x, cone, tol).member;
        bool via_ppt = is_psd_x(x, tol);
        for (const Party p : parties)
          via_ppt = via_ppt && is_psd_x(partial_transpose(x, p), tol);
        if (via_criteria != via_ppt) ++disagreements;
      }
    }
    std::printf("ppt cross-check: %llu trials, %llu disagreements: %s\n",
                static_cast<unsigned long long>(trials),
                static_cast<unsigned long long>(disagreements),
                disagreements == 0 ? "PASS" : "FAIL");
    return disagreements == 0 ? kExitOk : kExitNegative;
  }
  if (suite == "lattice") {
    SplitMix64 rng(seed);
    std::uint64_t violations = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      try {
        (void)lattice_profile(random_psd_x(rng), tol);
      } catch (const std::logic_error&) {
        ++violations;
      }
    }
    std::printf("lattice monotonicity: %llu trials, %llu violations: %s\n",
                static_cast<unsigned long long>(trials),
                static_cast<unsigned long long>(violations),
                violations == 0 ? "PASS" : "FAIL");
    return violations == 0 ? kExitOk : kExitNegative;
  }
  if (suite == "roundtrip") {
    SplitMix64 rng(seed);
    std::uint64_t failures = 0;
    double worst_residual = 0.0;
    const std::array<ConeId, 4> cones = {ConeId::A, ConeId::B, ConeId::C, ConeId::MeetABC};
    for (const auto cone : cones) {
      for (std::uint64_t t = 0; t < trials; ++t) {
        const XMatrix x = combine(sample_cone_terms(cone, rng));
        const auto dec = decompose_constructive(x, cone, tol);
        worst_residual = std::max(worst_residual, dec.residual);
        if (!verify_decomposition(dec, x, tol)) ++failures;
      }
    }
    std::printf("decomposition roundtrip: %llu trials/cone, worst residual %.3e, %llu failures: %s\n",
                static_cast<unsigned long long>(trials), worst_residual,
                static_cast<unsigned long long>(failures), failures == 0 ? "PASS" : "FAIL");
    return failures == 0 ? kExitOk : kExitNegative;
  }
  throw xcone::ParseError("unknown suite: " + suite);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact classification and certification of three-qubit X-state entanglement cones"};
  app.require_subcommand(1);

  double tol_value = 1e-9;
  bool tol_given = false;
  app.add_option("--tol", tol_value, "comparison tolerance (overrides XCONE_TOL)")
      ->each([&](const std::string&) { tol_given = true; });

  std::string json_out;
  bool force_json = false;

  auto* classify = app.add_subcommand("classify", "classify state documents");
  std::vector<std::string> inputs;
  bool certify = false;
  classify->add_option("inputs", inputs, "input files (JSON/NDJSON), '-' for stdin");
  classify->add_option("--json-out", json_out, "write NDJSON reports to a file");
  classify->add_flag("--json", force_json, "force NDJSON output on a terminal");
  classify->add_flag("--certify", certify, "attach a genuine-entanglement witness when applicable");

  auto* witness = app.add_subcommand("witness", "produce a violation certificate");
  std::string witness_input = "-", witness_cone;
  witness->add_option("input", witness_input, "input file, '-' for stdin");
  witness->add_option("--cone", witness_cone, "target cone")->required();
  witness->add_option("--json-out", json_out, "write NDJSON to a file");
  witness->add_flag("--json", force_json, "force NDJSON output on a terminal");

  auto* decompose = app.add_subcommand("decompose", "decompose into extreme-ray generators");
  std::string dec_input = "-", dec_cone, dec_method = "constructive";
  decompose->add_option("input", dec_input, "input file, '-' for stdin");
  decompose->add_option("--cone", dec_cone, "target cone")->required();
  decompose->add_option("--method", dec_method, "constructive|dictionary")
      ->check(CLI::IsMember({"constructive", "dictionary"}));
  decompose->add_option("--json-out", json_out, "write NDJSON to a file");
  decompose->add_flag("--json", force_json, "force NDJSON output on a terminal");

  auto* sample = app.add_subcommand("sample", "sample members of a cone");
  std::string sample_cone_name;
  std::size_t sample_count = 1;
  std::uint64_t sample_seed = 0;
  sample->add_option("--cone", sample_cone_name, "cone to sample")->required();
  sample->add_option("--count", sample_count, "number of samples");
  sample->add_option("--seed", sample_seed, "random seed");
  sample->add_option("--json-out", json_out, "write NDJSON to a file");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  std::uint64_t trials = 10000, verify_seed = 1;
  verify->add_option("--suite", suite, "duality|ppt|lattice|roundtrip")
      ->required()
      ->check(CLI::IsMember({"duality", "ppt", "lattice", "roundtrip"}));
  verify->add_option("--trials", trials, "trials per check");
  verify->add_option("--seed", verify_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    const xcone::Tolerance tol = tolerance_from(tol_value, tol_given);
    if (classify->parsed()) return run_classify(inputs, tol, json_out, force_json, certify);
    if (witness->parsed()) return run_witness(witness_input, witness_cone, tol, json_out, force_json);
    if (decompose->parsed())
      return run_decompose(dec_input, dec_cone, dec_method, tol, json_out, force_json);
    if (sample->parsed()) return run_sample(sample_cone_name, sample_count, sample_seed, json_out, force_json);
    if (verify->parsed()) return run_verify(suite, trials, verify_seed, tol);
  } catch (const xcone::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
