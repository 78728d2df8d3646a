// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: lextag_acceptance [data-dir]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.h"
#include "lextag/generator.h"
#include "lextag/parser.h"
#include "lextag/resources.h"
#include "lextag/transfer.h"
#include "support.h"

namespace lextag {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int failures = 0;

void report(int number, const std::string& name, const Verdict& v,
            const std::string& summary) {
  std::cout << (v.pass ? "PASS" : "FAIL") << " [" << number << "] " << name << ": "
            << (v.pass ? summary : v.detail) << std::endl;
  failures += !v.pass;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun lextag_cli(std::vector<std::string> args) {
  args.insert(args.begin(), {"lextag", "--data-dir", testing::data_dir().string()});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

TransferTable table(const std::string& name) {
  return load_transfer(testing::data_file(name));
}

void criterion_reference_translations() {
  struct Case {
    const char *src, *tgt, *sentence, *expected;
  };
  const Case cases[] = {
      {"en", "zh", "John broke the vase", "Ji-Yong da sui huapin"},
      {"en", "zh", "John broke the journey", "Ji-Yong da puneig lucheng"},
      {"en", "ja", "he wears a hat", "kare wa boushi wo kaburu"},
      {"en", "ja", "he wears socks", "kare wa kutsushita wo haku"},
  };
  Verdict v;
  auto start = Clock::now();
  for (const Case& c : cases) {
    CliRun r = lextag_cli({"translate", "--src", c.src, "--tgt", c.tgt, c.sentence});
    v.require(r.code == 0 && r.out == std::string(c.expected) + "\n",
              std::string(c.sentence) + " -> '" + r.out + "'");
  }
  double elapsed = seconds_since(start);
  v.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  char summary[96];
  std::snprintf(summary, sizeof summary, "4/4 exact, %.3f s total", elapsed);
  report(1, "reference translations are exact", v, summary);
}

void criterion_trace() {
  Verdict v;
  Translation t = translate("John broke the vase", testing::fixture("en"),
                            testing::fixture("zh"), table("en-zh.json"));
  std::set<std::string> verbs;
  int failed = 0, reproduced = 0;
  for (const CandidateResult& c : t.candidates) {
    verbs.insert(c.lemmas.front());
    if (c.survived) continue;
    ++failed;
    Unification again = unify_values(c.failure->left, c.failure->right);
    if (!again.ok() && again.clash() == c.failure->clash) ++reproduced;
  }
  v.require(verbs.size() == 5 && t.candidates.size() == 5,
            std::to_string(verbs.size()) + " verb candidates");
  v.require(failed == 4, std::to_string(failed) + " failures");
  v.require(reproduced == failed,
            std::to_string(reproduced) + " failures reproduce in isolation");
  report(2, "vase trace: 5 candidates, 4 failures, each reproducible", v,
         "5 candidates, 4 failures, 4/4 reproduce via unify_values");
}

void criterion_set_mapping() {
  Verdict v;
  TransferTable zh_en = table("zh-en.json");
  v.require(zh_en.candidates("da sui") ==
                std::set<std::string>{"break", "crumble", "shatter"},
            "da sui candidate set");
  Translation t = translate("Ji-Yong da sui huapin", testing::fixture("zh"),
                            testing::fixture("en"), zh_en);
  std::vector<std::string> heads;
  for (const CandidateResult& c : rank(t.survivors)) heads.push_back(c.lemmas.front());
  v.require(heads == std::vector<std::string>{"shatter", "break"},
            "survivor order " + testing::join(heads));
  bool crumble_at_friable = false;
  for (const CandidateResult& c : t.candidates) {
    if (c.lemmas.front() == "crumble" && c.failure &&
        c.failure->clash.path_string() == "friable") {
      crumble_at_friable = true;
    }
  }
  v.require(crumble_at_friable, "crumble failure not at path friable");
  report(3, "zh->en set mapping and specificity ranking", v,
         "da sui -> {break, crumble, shatter}; survivors [shatter, break]; crumble fails at friable");
}

std::vector<std::string> canonicals(const std::vector<DerivationTree>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(canonical(d));
  return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> random_inputs() {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  std::mt19937 rng(20261018);
  const std::pair<const char*, int> split[] = {{"en", 34}, {"zh", 33}, {"ja", 33}};
  for (auto [code, n] : split) {
    for (auto& tokens : testing::random_sequences(code, n, 7, rng)) {
      out.emplace_back(code, std::move(tokens));
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> fixture_inputs() {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const char* code : {"en", "zh", "ja"}) {
    for (auto& tokens : testing::fixture_sentences(code)) out.emplace_back(code, tokens);
  }
  return out;
}

void criterion_oracle() {
  Verdict v;
  auto start = Clock::now();
  std::size_t checked = 0, parsed = 0;
  for (const auto& set : {fixture_inputs(), random_inputs()}) {
    for (const auto& [code, tokens] : set) {
      const Language& lang = testing::fixture(code);
      auto chart = canonicals(parse(tokens, lang));
      BruteForceResult brute = brute_force_parse(tokens, lang, tokens.size());
      v.require(!brute.bound_hit, "oracle bound hit on " + testing::join(tokens));
      v.require(chart == canonicals(brute.derivations),
                "mismatch on " + code + ": " + testing::join(tokens));
      ++checked;
      parsed += !chart.empty();
    }
  }
  double elapsed = seconds_since(start);
  v.require(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
  char summary[128];
  std::snprintf(summary, sizeof summary,
                "%zu inputs (%zu fixtures + 100 random, %zu with parses), %.2f s",
                checked, fixture_inputs().size(), parsed, elapsed);
  report(4, "chart parse equals brute-force parse", v, summary);
}

void criterion_properties() {
  Verdict v;
  testing::PropertyReport r = testing::run_unification_properties(20261018, 400);
  v.require(r.cases >= 1000, std::to_string(r.cases) + " cases");
  v.require(r.failures == 0, std::to_string(r.failures) + " failures" +
                                 (r.messages.empty() ? "" : ": " + r.messages[0]));
  report(5, "unification properties", v,
         std::to_string(r.cases) + " cases, 0 failures");
}

void criterion_deferred() {
  Verdict v;
  ParseOptions deferred;
  deferred.defer_unification = true;
  std::size_t checked = 0;
  for (const auto& set : {fixture_inputs(), random_inputs()}) {
    for (const auto& [code, tokens] : set) {
      const Language& lang = testing::fixture(code);
      v.require(canonicals(parse(tokens, lang)) ==
                    canonicals(parse(tokens, lang, deferred)),
                "differs on " + testing::join(tokens));
      ++checked;
    }
  }
  CliRun a = lextag_cli({"parse", "-g", "en", "--json", "John broke the vase"});
  CliRun b = lextag_cli({"parse", "-g", "en", "--json", "--defer-unification",
                         "John broke the vase"});
  v.require(a.code == 0 && a.out == b.out, "CLI --defer-unification output differs");
  report(6, "eager and deferred unification agree", v,
         std::to_string(checked) + " inputs, identical derivation sets");
}

void criterion_determinism() {
  Verdict v;
  std::string tsv = testing::data_file("corpus.tsv").string();
  CliRun a = lextag_cli({"corpus", "--tsv", tsv, "--json"});
  CliRun b = lextag_cli({"corpus", "--tsv", tsv, "--json"});
  v.require(a.code == 0, "corpus exit " + std::to_string(a.code));
  v.require(a.out == b.out, "corpus JSON differs between runs");
  v.require(!a.out.empty() && nlohmann::json::parse(a.out)["exact"] == 6,
            "corpus exact count");
  CliRun c = lextag_cli({"translate", "--src", "en", "--tgt", "zh", "--json", "--trace",
                         "John broke the vase"});
  CliRun d = lextag_cli({"translate", "--src", "en", "--tgt", "zh", "--json", "--trace",
                         "John broke the vase"});
  v.require(c.out == d.out, "translate JSON differs between runs");
  report(7, "byte-identical JSON across runs", v,
         "corpus (6/6) and translate JSON identical over two runs");
}

void criterion_validation() {
  Verdict v;
  std::vector<std::string> all = {"validate"};
  for (const char* f : {"en.json", "zh.json", "ja.json", "en-zh.json", "zh-en.json",
                        "en-ja.json"}) {
    all.push_back(testing::data_file(f).string());
  }
  CliRun clean = lextag_cli(all);
  v.require(clean.code == 0, "fixtures do not validate:\n" + clean.out);
  auto dir = std::filesystem::temp_directory_path() / "lextag_acceptance";
  int rejected = 0;
  for (const auto& c : testing::corruptions()) {
    std::filesystem::remove_all(dir);
    auto files = testing::stage_corruption(c, dir);
    CliRun r = lextag_cli({"validate", files[0]});
    bool ok = r.code == cli::kExitFault &&
              r.out.find(": " + c.expected_kind + " at ") != std::string::npos;
    v.require(ok, c.name + " not rejected as " + c.expected_kind);
    rejected += ok;
  }
  std::filesystem::remove_all(dir);
  report(8, "fixtures validate; corrupted variants rejected", v,
         "6 files clean; " + std::to_string(rejected) +
             "/5 corruptions rejected with the expected class");
}

}  // namespace
}  // namespace lextag

int main(int argc, char** argv) {
  if (argc > 1) setenv("LEXTAG_DATA", argv[1], 1);
  using namespace lextag;
  const std::pair<const char*, void (*)()> criteria[] = {
      {"1", criterion_reference_translations}, {"2", criterion_trace},
      {"3", criterion_set_mapping},    {"4", criterion_oracle},
      {"5", criterion_properties},     {"6", criterion_deferred},
      {"7", criterion_determinism},    {"8", criterion_validation},
  };
  for (const auto& [id, fn] : criteria) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::cout << "FAIL [" << id << "] raised: " << e.what() << std::endl;
      ++failures;
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : "some criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
