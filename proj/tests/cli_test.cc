#include "commands.h"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "support.h"

namespace lextag::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome lextag(std::vector<std::string> args) {
  args.insert(args.begin(), {"lextag", "--data-dir", testing::data_dir().string()});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return testing::data_file(name).string(); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "lextag_cli_test" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(CliTest, ValidateFixtures) {
  Outcome o = lextag({"validate", data("en.json"), data("zh.json"), data("ja.json"),
                      data("en-zh.json"), data("zh-en.json"), data("en-ja.json")});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_NE(o.out.find("en-ja.json: ok"), std::string::npos);
}

TEST(CliTest, ValidateRejectsCorruptions) {
  for (const auto& c : testing::corruptions()) {
    auto files = testing::stage_corruption(c, scratch("corrupt"));
    Outcome o = lextag({"validate", files[0]});
    EXPECT_EQ(o.code, kExitFault) << c.name;
    EXPECT_NE(o.out.find(c.expected_kind), std::string::npos) << c.name << "\n" << o.out;
  }
}

TEST(CliTest, ValidateMissingFileAndBadJson) {
  EXPECT_EQ(lextag({"validate", "/nonexistent.json"}).code, kExitFault);
  auto dir = scratch("badjson");
  std::ofstream(dir / "x.json") << "{not json";
  EXPECT_EQ(lextag({"validate", (dir / "x.json").string()}).code, kExitFault);
}

TEST(CliTest, ParseExitCodes) {
  Outcome ok = lextag({"parse", "--grammar", "en", "John broke the vase"});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_NE(ok.out.find("derivation 1/1"), std::string::npos);
  EXPECT_NE(ok.out.find("break-phys"), std::string::npos);

  Outcome tree = lextag({"parse", "-g", "ja", "--show", "tree", "kare wa boushi wo kaburu"});
  EXPECT_EQ(tree.code, kExitOk);
  EXPECT_NE(tree.out.find("(P wa)"), std::string::npos) << tree.out;

  EXPECT_EQ(lextag({"parse", "-g", "en", "vase the John"}).code, kExitNoResult);

  Outcome unknown = lextag({"parse", "-g", "en", "John broke the teapot"});
  EXPECT_EQ(unknown.code, kExitFault);
  EXPECT_NE(unknown.err.find("position 3"), std::string::npos);
}

TEST(CliTest, ParseDeferredMatchesEager) {
  Outcome a = lextag({"parse", "-g", "en", "--json", "the vase broke John"});
  Outcome b = lextag({"parse", "-g", "en", "--json", "--defer-unification",
                      "the vase broke John"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, TranslateAndTrace) {
  Outcome o = lextag({"translate", "--src", "en", "--tgt", "zh", "John broke the vase"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.out, "Ji-Yong da sui huapin\n");

  Outcome t = lextag({"translate", "--src", "en", "--tgt", "zh", "--trace",
                      "John broke the vase"});
  EXPECT_EQ(t.code, kExitOk);
  std::istringstream lines(t.out);
  std::string line;
  int failed = 0;
  while (std::getline(lines, line)) failed += line.rfind("  failed", 0) == 0;
  EXPECT_EQ(failed, 4);
  EXPECT_NE(t.out.find("lemma=da hui"), std::string::npos);
  // --trace only adds lines; the survivor list is unchanged.
  EXPECT_EQ(t.out.substr(t.out.size() - o.out.size()), o.out);
}

TEST(CliTest, TranslateFirstAndAll) {
  Outcome all = lextag({"translate", "--src", "zh", "--tgt", "en", "--all",
                        "Ji-Yong da sui huapin"});
  EXPECT_EQ(all.out, "John shatter vase\nJohn break vase\n");
  Outcome first = lextag({"translate", "--src", "zh", "--tgt", "en", "--first",
                          "Ji-Yong da sui huapin"});
  EXPECT_EQ(first.out, "John shatter vase\n");
  EXPECT_EQ(lextag({"translate", "--src", "zh", "--tgt", "en", "--first", "--all",
                    "Ji-Yong da sui huapin"}).code,
            kExitFault);
}

TEST(CliTest, TranslateJsonRoundTrips) {
  Outcome o = lextag({"translate", "--src", "en", "--tgt", "ja", "--json", "he wears socks"});
  EXPECT_EQ(o.code, kExitOk);
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j.dump(2) + "\n", o.out);
  EXPECT_EQ(j["survivors"][0], "kare wa kutsushita wo haku");
}

TEST(CliTest, TranslateExitClasses) {
  EXPECT_EQ(lextag({"translate", "--src", "en", "--tgt", "zh", "vase the John"}).code,
            kExitNoResult);
  Outcome none = lextag({"translate", "--src", "en", "--tgt", "zh", "John broke the hat"});
  EXPECT_EQ(none.code, kExitNoCandidate);
  EXPECT_EQ(lextag({"translate", "--src", "en", "--tgt", "zh", "--transfer",
                    data("en-ja.json"), "John broke the vase"}).code,
            kExitFault);
  EXPECT_EQ(lextag({"translate", "--src", "en", "--tgt", "zh", "John broke the teapot"}).code,
            kExitFault);
}

TEST(CliTest, LanguageCodeMustMatchFile) {
  auto dir = scratch("mismatch");
  std::filesystem::copy_file(testing::data_file("zh.json"), dir / "en.json");
  Outcome o = lextag({"--data-dir", dir.string(), "parse", "-g", "en", "John"});
  EXPECT_EQ(o.code, kExitFault);
}

TEST(CliTest, CorpusShipped) {
  Outcome o = lextag({"corpus", "--tsv", data("corpus.tsv")});
  EXPECT_EQ(o.code, kExitOk) << o.out;
  EXPECT_NE(o.out.find("total: 6\nexact: 6\n"), std::string::npos) << o.out;
}

TEST(CliTest, CorpusCountsOutcomes) {
  auto dir = scratch("corpus");
  std::ofstream(dir / "c.tsv") << "John broke the vase\tJi-Yong da sui huapin\n"
                               << "vase the John\tx\n"
                               << "John broke the teapot\tx\n"
                               << "John broke the hat\tx\n"
                               << "John broke the journey\twrong\n"
                               << "no tab here\n";
  Outcome o = lextag({"corpus", "--tsv", (dir / "c.tsv").string(), "--src", "en",
                      "--tgt", "zh", "--json"});
  EXPECT_EQ(o.code, kExitNoResult);
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["total"], 6);
  EXPECT_EQ(j["exact"], 1);
  EXPECT_EQ(j["no_parse"], 2);
  EXPECT_EQ(j["no_candidate"], 1);
  ASSERT_EQ(j["mismatches"].size(), 2u);
  EXPECT_EQ(j["mismatches"][1]["line"], 6);
  EXPECT_EQ(j["mismatches"][1]["reason"], "malformed line");
}

TEST(CliTest, CorpusEmptyFileIsVacuousSuccess) {
  auto dir = scratch("empty");
  std::ofstream(dir / "e.tsv") << "";
  Outcome o = lextag({"corpus", "--tsv", (dir / "e.tsv").string()});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("total: 0"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(lextag({}).code, kExitFault);
  EXPECT_EQ(lextag({"parse", "John"}).code, kExitFault);
  EXPECT_EQ(lextag({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace lextag::cli
