#include "lextag/transfer.h"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "lextag/errors.h"
#include "lextag/parser.h"
#include "lextag/resources.h"
#include "support.h"

namespace lextag {
namespace {

using testing::fixture;

TransferTable table(const std::string& name) {
  return load_transfer(testing::data_file(name));
}

std::vector<std::string> kinds(const std::vector<Violation>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.kind);
  return out;
}

TEST(TransferTest, CandidateSets) {
  TransferTable zh_en = table("zh-en.json");
  EXPECT_EQ(zh_en.candidates("da sui"),
            (std::set<std::string>{"break", "crumble", "shatter"}));
  EXPECT_TRUE(zh_en.candidates("da lie").empty());
  EXPECT_EQ(table("en-ja.json").candidates("wear"),
            (std::set<std::string>{"haku", "kaburu"}));
  EXPECT_EQ(table("en-zh.json").candidates("break").size(), 5u);
}

TEST(TransferTest, FixtureTablesValidate) {
  EXPECT_TRUE(validate_transfer(table("en-zh.json"), fixture("en"), fixture("zh")).empty());
  EXPECT_TRUE(validate_transfer(table("zh-en.json"), fixture("zh"), fixture("en")).empty());
  EXPECT_TRUE(validate_transfer(table("en-ja.json"), fixture("en"), fixture("ja")).empty());
}

TEST(TransferTest, MapDropsDeterminersAndRelinksSlots) {
  auto d = parse(tokenize("he wears a hat"), fixture("en"));
  ASSERT_EQ(d.size(), 1u);
  SkeletonNode s = map_derivation(d[0], table("en-ja.json"));
  EXPECT_EQ(s.tree, "tnx0wanx1woV");
  EXPECT_EQ(s.lemmas, (std::vector<std::string>{"haku", "kaburu"}));
  ASSERT_EQ(s.children.size(), 2u);
  EXPECT_EQ(s.children[0].address.str(), "0.1");
  EXPECT_EQ(s.children[1].address.str(), "0.3.1");
  EXPECT_TRUE(s.children[1].child.children.empty());
  EXPECT_EQ(s.children[1].child.lemmas, (std::vector<std::string>{"boushi"}));
}

TEST(TransferTest, ExpandIsCartesianInPreorder) {
  auto d = parse(tokenize("John broke the vase"), fixture("en"));
  SkeletonNode s = map_derivation(d[0], table("en-zh.json"));
  auto slots_ = slots(s);
  ASSERT_EQ(slots_.size(), 3u);
  EXPECT_EQ(slots_[0].first, "break");
  std::vector<Expansion> all = expand(s);
  ASSERT_EQ(all.size(), 5u);
  EXPECT_EQ(all[0].lemmas, (std::vector<std::string>{"da duan", "Ji-Yong", "huapin"}));
  EXPECT_EQ(all[4].lemmas, (std::vector<std::string>{"da sui", "Ji-Yong", "huapin"}));
  EXPECT_EQ(preorder_lemmas(all[4].derivation), all[4].lemmas);
  EXPECT_THROW(expand(s, 4), ExpansionLimitError);
}

TEST(TransferTest, EmptyCandidateSetExpandsToNothing) {
  SkeletonNode s;
  s.tree = "tNP";
  s.source_lemma = "teapot";
  EXPECT_TRUE(expand(s).empty());
}

TEST(TransferTest, MissingLinkThrows) {
  TransferTable t("en", "zh", 1, {}, {});
  auto d = parse(tokenize("John broke the vase"), fixture("en"));
  EXPECT_THROW(map_derivation(d[0], t), TransferError);
}

TEST(TransferTest, ValidationFindsDefects) {
  nlohmann::json j = read_json_file(testing::data_file("en-zh.json"));
  j["concepts"][0]["target"].push_back("da lie");
  j["tree_links"][0]["links"][1][1] = "0.2.9";
  j["tree_links"][2]["tgt_tree"] = nullptr;
  j["tree_links"].push_back({{"src_tree", "tNP"}, {"tgt_tree", "tnx0Vnx1"}});
  auto found = kinds(validate_transfer(transfer_from_json(j), fixture("en"), fixture("zh")));
  for (const char* k : {"unknown-lemma", "dangling-address", "duplicate-link",
                        "link-kind-mismatch", "unlinked-slot"}) {
    EXPECT_NE(std::find(found.begin(), found.end(), k), found.end()) << k;
  }
  EXPECT_EQ(kinds(validate_transfer(table("en-zh.json"), fixture("en"), fixture("ja")))
                .front(),
            "language-mismatch");
}

TEST(TransferTest, MalformedTableIsLoadError) {
  EXPECT_THROW(transfer_from_json(nlohmann::json::parse(R"({"source_lang": "en"})")),
               LoadError);
  nlohmann::json j = read_json_file(testing::data_file("en-zh.json"));
  j["tree_links"][0]["links"][0] = {"0.1"};
  EXPECT_THROW(transfer_from_json(j), LoadError);
}

}  // namespace
}  // namespace lextag
