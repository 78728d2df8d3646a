#include "support.h"

#include <algorithm>
#include <fstream>
#include <memory>

#include "lextag/errors.h"
#include "lextag/resources.h"

#ifndef LEXTAG_TEST_DATA
#define LEXTAG_TEST_DATA "data"
#endif

namespace lextag::testing {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("LEXTAG_DATA")) return env;
  return LEXTAG_TEST_DATA;
}

std::filesystem::path data_file(const std::string& name) {
  return data_dir() / name;
}

const Language& fixture(const std::string& code) {
  static std::map<std::string, std::unique_ptr<Language>> cache;
  auto& slot = cache[code];
  if (!slot) slot = std::make_unique<Language>(load_language(data_file(code + ".json")));
  return *slot;
}

namespace {

void flatten_into(const FeatureStructure& fs, std::vector<std::string>& path,
                  FlatFs& out) {
  if (fs.empty()) {
    out[path] = "{}";
    return;
  }
  for (const auto& [name, value] : fs) {
    path.push_back(name);
    if (value.is_structure()) {
      flatten_into(value.structure(), path, out);
    } else {
      out[path] = value.text();
    }
    path.pop_back();
  }
}

bool is_proper_prefix(const std::vector<std::string>& p,
                      const std::vector<std::string>& q) {
  return p.size() < q.size() && std::equal(p.begin(), p.end(), q.begin());
}

// Drops "{}" leaves that sit above some other path.
FlatFs normalize(FlatFs fs) {
  for (auto it = fs.begin(); it != fs.end();) {
    bool covered = false;
    if (it->second == "{}") {
      for (const auto& [q, leaf] : fs) {
        if (is_proper_prefix(it->first, q)) covered = true;
      }
    }
    it = covered ? fs.erase(it) : std::next(it);
  }
  return fs;
}

}  // namespace

FlatFs flatten(const FeatureStructure& fs) {
  FlatFs out;
  std::vector<std::string> path;
  flatten_into(fs, path, out);
  return normalize(std::move(out));
}

OracleResult oracle_unify(const FlatFs& a, const FlatFs& b) {
  std::vector<std::vector<std::string>> conflicts;
  for (const auto& [p, x] : a) {
    for (const auto& [q, y] : b) {
      if (p == q) {
        bool x_atom = x != "{}", y_atom = y != "{}";
        if ((x_atom || y_atom) && x != y) conflicts.push_back(p);
      } else if (is_proper_prefix(p, q) && x != "{}") {
        conflicts.push_back(p);
      } else if (is_proper_prefix(q, p) && y != "{}") {
        conflicts.push_back(q);
      }
    }
  }
  OracleResult r;
  if (!conflicts.empty()) {
    r.clash_path = *std::min_element(conflicts.begin(), conflicts.end());
    return r;
  }
  FlatFs merged = a;
  merged.insert(b.begin(), b.end());
  r.merged = normalize(std::move(merged));
  return r;
}

FeatureStructure random_ground(std::mt19937& rng, int max_depth) {
  static const char* kFeatures[] = {"a", "b", "c", "d"};
  static const char* kAtoms[] = {"+", "-"};
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> coin(0, 99);
  FeatureStructure fs;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    std::string name = kFeatures[pick(rng)];
    if (max_depth > 1 && coin(rng) < 30) {
      fs.set(name, random_ground(rng, max_depth - 1));
    } else {
      fs.set(name, FeatureValue::atom(kAtoms[coin(rng) % 2]));
    }
  }
  return fs;
}

namespace {

class PropertyRun {
 public:
  explicit PropertyRun(PropertyReport& report) : report_(report) {}

  void check(bool ok, const std::string& what, const FeatureStructure& a,
             const FeatureStructure& b) {
    ++report_.cases;
    if (ok) return;
    ++report_.failures;
    if (report_.messages.size() < 20) {
      report_.messages.push_back(what + ": " + to_string(a) + " / " + to_string(b));
    }
  }

 private:
  PropertyReport& report_;
};

bool same(const Unification& x, const Unification& y) {
  if (x.ok() != y.ok()) return false;
  if (!x.ok()) return x.clash().path == y.clash().path;
  return x.structure() == y.structure();
}

}  // namespace

PropertyReport run_unification_properties(std::uint32_t seed, int iterations) {
  PropertyReport report;
  PropertyRun run(report);
  std::mt19937 rng(seed);
  const FeatureStructure empty;
  for (int i = 0; i < iterations; ++i) {
    FeatureStructure a = random_ground(rng);
    FeatureStructure b = random_ground(rng);
    FeatureStructure c = random_ground(rng);

    Unification ab = unify(a, b);
    Unification ba = unify(b, a);
    run.check(same(ab, ba), "commutativity", a, b);

    Unification aa = unify(a, a);
    run.check(aa.ok() && aa.structure() == a, "idempotence", a, a);

    Unification ea = unify(empty, a);
    run.check(ea.ok() && ea.structure() == a && unify(a, empty).structure() == a,
              "empty identity", a, empty);

    if (ab.ok()) {
      run.check(subsumes(a, ab.structure()) && subsumes(b, ab.structure()),
                "monotonicity", a, b);
    } else {
      // Failure is monotone too: anything more specific than a still fails.
      Unification ac = unify(a, c);
      run.check(!ac.ok() || !unify(ac.structure(), b).ok(), "monotonicity", a, b);
    }

    Unification left = ab.ok() ? unify(ab.structure(), c) : ab;
    Unification bc = unify(b, c);
    Unification right = bc.ok() ? unify(a, bc.structure()) : bc;
    bool assoc = left.ok() == right.ok() &&
                 (!left.ok() || left.structure() == right.structure());
    run.check(assoc, "associativity", a, c);

    OracleResult oracle = oracle_unify(flatten(a), flatten(b));
    bool agrees = ab.ok() == oracle.merged.has_value();
    if (agrees && ab.ok()) agrees = flatten(ab.structure()) == *oracle.merged;
    if (agrees && !ab.ok()) agrees = ab.clash().path == oracle.clash_path;
    run.check(agrees, "oracle", a, b);
  }
  return report;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> split_all(
    const std::vector<std::string>& sentences) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : sentences) {
    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start < s.size()) {
      std::size_t end = s.find(' ', start);
      if (end == std::string::npos) end = s.size();
      tokens.push_back(s.substr(start, end - start));
      start = end + 1;
    }
    out.push_back(std::move(tokens));
  }
  return out;
}

std::vector<std::vector<std::string>> surfaces(const Language& lang,
                                               const std::string& pos) {
  std::set<std::vector<std::string>> seen;
  for (const auto& e : lang.entries()) {
    if (e.pos == pos) seen.insert(e.surface);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<std::vector<std::string>> fixture_sentences(const std::string& code) {
  if (code == "en") {
    return split_all({"John broke the vase", "John broke the journey",
                      "he wears a hat", "he wears socks", "the vase broke John",
                      "John shattered the vase", "John crumbled the vase",
                      "John broke vase", "vase the John", "John the broke",
                      "the John wears the the hat"});
  }
  if (code == "zh") {
    return split_all({"Ji-Yong da sui huapin", "Ji-Yong da puneig lucheng",
                      "Ji-Yong da hui lucheng", "huapin da sui Ji-Yong",
                      "da sui Ji-Yong huapin"});
  }
  return split_all({"kare wa boushi wo kaburu", "kare wa kutsushita wo haku",
                    "kare wa boushi wo haku", "boushi wa kare wo kaburu",
                    "kare wo boushi wa kaburu"});
}

std::vector<std::vector<std::string>> random_sequences(const std::string& code,
                                                       int count, int max_len,
                                                       std::mt19937& rng) {
  const Language& lang = fixture(code);
  auto vocab = lang.vocabulary();
  auto nouns = surfaces(lang, "N");
  auto verbs = surfaces(lang, "V");
  auto dets = surfaces(lang, "Det");
  auto any = [&](const std::vector<std::vector<std::string>>& from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  std::uniform_int_distribution<int> coin(0, 99);
  std::uniform_int_distribution<int> length(1, max_len);

  std::vector<std::vector<std::string>> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<std::string> tokens;
    auto append = [&](const std::vector<std::string>& words) {
      tokens.insert(tokens.end(), words.begin(), words.end());
    };
    if (coin(rng) < 50) {
      auto noun_phrase = [&] {
        if (!dets.empty() && coin(rng) < 40) append(any(dets));
        append(any(nouns));
      };
      noun_phrase();
      if (code == "ja") {
        append({"wa"});
        noun_phrase();
        append({"wo"});
        append(any(verbs));
      } else {
        append(any(verbs));
        noun_phrase();
      }
      if (coin(rng) < 25) {
        std::size_t at = std::uniform_int_distribution<std::size_t>(0, tokens.size() - 1)(rng);
        tokens[at] = any(vocab).front();
      }
    } else {
      int n = length(rng);
      while (static_cast<int>(tokens.size()) < n) append(any(vocab));
    }
    if (static_cast<int>(tokens.size()) > max_len) tokens.resize(max_len);
    // Truncation or substitution can split a multi-word surface.
    try {
      lang.lookup(tokens);
    } catch (const Error&) {
      continue;
    }
    out.push_back(std::move(tokens));
  }
  return out;
}

namespace {

nlohmann::json read_fixture(const std::string& name) {
  return read_json_file(data_file(name));
}

nlohmann::json& entry(nlohmann::json& grammar, const std::string& sense) {
  for (auto& e : grammar["lexicon"]) {
    if (e.value("sense", e["lemma"].get<std::string>()) == sense) return e;
  }
  throw Error("no fixture entry " + sense);
}

}  // namespace

std::vector<Corruption> corruptions() {
  std::vector<Corruption> out;

  nlohmann::json no_foot = read_fixture("en.json");
  for (auto& t : no_foot["trees"]) {
    if (t["name"] == "tDetNP") t["root"]["children"].erase(1);
  }
  out.push_back({"auxiliary tree without foot", "missing-foot", "en.json", no_foot});

  nlohmann::json atom = read_fixture("en.json");
  entry(atom, "vase")["semfeats"]["brittle"] = "somewhat";
  out.push_back({"undeclared atom", "undeclared-atom", "en.json", atom});

  nlohmann::json dangling = read_fixture("en.json");
  entry(dangling, "break-phys")["restrictions"][0]["addr"] = "0.2.7";
  out.push_back({"dangling Gorn address", "dangling-address", "en.json", dangling});

  nlohmann::json selectional = read_fixture("en.json");
  entry(selectional, "hat")["semfeats"].erase("brittle");
  out.push_back({"noun missing a selectional feature", "missing-selectional",
                 "en.json", selectional});

  nlohmann::json transfer = read_fixture("en-zh.json");
  transfer["concepts"][0]["target"].push_back("da lie");
  out.push_back({"transfer lemma absent from lexicon", "unknown-lemma",
                 "en-zh.json", transfer});
  return out;
}

std::vector<std::string> stage_corruption(const Corruption& c,
                                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const char* name : {"en.json", "zh.json", "ja.json"}) {
    std::filesystem::copy_file(data_file(name), dir / name,
                               std::filesystem::copy_options::overwrite_existing);
  }
  std::ofstream(dir / c.file_name) << c.content.dump(2);
  return {(dir / c.file_name).string()};
}

}  // namespace lextag::testing
