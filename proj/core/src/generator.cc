#include "lextag/generator.h"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "lextag/errors.h"
#include "lextag/parser.h"

namespace lextag {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

int specificity(const std::vector<const LexicalEntry*>& entries) {
  int n = 0;
  for (const LexicalEntry* e : entries) {
    for (const Restriction& r : e->restrictions) n += count_paths(r.fs);
  }
  return n;
}

}  // namespace

std::string CandidateResult::surface_string() const { return join(surface); }

CandidateResult realize(const DerivationTree& derivation, const Language& lang) {
  CandidateResult out;
  out.derivation = derivation;
  normalize(out.derivation);
  out.lemmas = preorder_lemmas(out.derivation);

  auto options = entry_options(out.derivation, lang);
  std::vector<std::size_t> index(options.size(), 0);
  while (true) {
    std::vector<const LexicalEntry*> entries;
    for (std::size_t i = 0; i < options.size(); ++i) {
      entries.push_back(options[i][index[i]]);
    }
    Result<Replayed> r = replay(out.derivation, lang, entries);
    if (r) {
      out.survived = true;
      out.failure.reset();
      out.surface = yield(r.value().checked);
      out.specificity = specificity(entries);
      return out;
    }
    if (!out.failure) {
      const CombinationFailure& f = r.failure();
      out.failure = CandidateFailure{f.blame, f.address, f.clash, f.left, f.right};
    }
    std::size_t i = options.size();
    while (i-- > 0) {
      if (++index[i] < options[i].size()) break;
      index[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return out;
  }
}

const char* to_string(TranslationStatus status) {
  switch (status) {
    case TranslationStatus::kOk:
      return "ok";
    case TranslationStatus::kNoParse:
      return "no-parse";
    case TranslationStatus::kNoCandidate:
      return "no-candidate";
  }
  return "?";
}

Translation translate(const std::string& sentence, const Language& source,
                      const Language& target, const TransferTable& table,
                      const TranslateOptions& options) {
  if (table.source_lang() != source.code() ||
      table.target_lang() != target.code()) {
    throw TransferError("transfer table is " + table.source_lang() + "->" +
                        table.target_lang() + " but grammars are " +
                        source.code() + "->" + target.code());
  }
  Translation t;
  t.source = sentence;
  t.tokens = tokenize(sentence);
  t.parses = parse(t.tokens, source);
  if (t.parses.empty()) {
    t.status = TranslationStatus::kNoParse;
    return t;
  }
  for (std::size_t p = 0; p < t.parses.size(); ++p) {
    SkeletonNode skeleton = map_derivation(t.parses[p], table);
    for (Expansion& e : expand(skeleton, options.max_expansion)) {
      CandidateResult c = realize(e.derivation, target);
      c.source_parse = p;
      t.candidates.push_back(std::move(c));
    }
  }
  std::set<std::string> seen;
  for (const CandidateResult& c : t.candidates) {
    if (c.survived && seen.insert(c.surface_string()).second) {
      t.survivors.push_back(c);
    }
  }
  if (t.survivors.empty()) t.status = TranslationStatus::kNoCandidate;
  return t;
}

std::vector<CandidateResult> rank(std::vector<CandidateResult> survivors) {
  std::stable_sort(survivors.begin(), survivors.end(),
                   [](const CandidateResult& a, const CandidateResult& b) {
                     if (a.specificity != b.specificity) {
                       return a.specificity > b.specificity;
                     }
                     return a.lemmas < b.lemmas;
                   });
  return survivors;
}

json to_json(const Translation& t) {
  json j;
  j["source"] = t.source;
  j["status"] = to_string(t.status);
  j["survivors"] = json::array();
  for (const CandidateResult& c : rank(t.survivors)) {
    j["survivors"].push_back(c.surface_string());
  }
  j["candidates"] = json::array();
  for (const CandidateResult& c : t.candidates) {
    json k;
    k["lemma-choices"] = c.lemmas;
    k["status"] = c.survived ? "survived" : "failed";
    k["source-parse"] = c.source_parse;
    if (c.survived) {
      k["surface"] = c.surface_string();
      k["specificity"] = c.specificity;
    } else {
      k["surface"] = nullptr;
    }
    if (c.failure) {
      const CandidateFailure& f = *c.failure;
      k["failure"] = {{"lemma", f.lemma},
                      {"addr", f.address.str()},
                      {"path", f.clash.path_string()},
                      {"atoms", {f.clash.left, f.clash.right}}};
    }
    j["candidates"].push_back(std::move(k));
  }
  return j;
}

}  // namespace lextag
