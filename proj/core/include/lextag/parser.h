#ifndef LEXTAG_PARSER_H_
#define LEXTAG_PARSER_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lextag/derivation.h"
#include "lextag/lexicon.h"

namespace lextag {

// Splits on whitespace and strips ASCII punctuation from both ends of each
// token. Throws EmptyInputError if nothing remains.
std::vector<std::string> tokenize(std::string_view sentence);

// One anchored elementary tree placed at a token span.
struct SelectedTree {
  AnchoredTree anchored;
  std::size_t start = 0;
  std::size_t length = 0;
  const LexicalEntry* entry = nullptr;
};

// Every (entry, tree) anchoring for every longest-match span of `tokens`.
// Instance ids are assigned in order. Throws UnknownTokenError.
std::vector<SelectedTree> select_trees(std::span<const std::string> tokens,
                                       const Language& lang);

struct ParseOptions {
  // Skip unification while parsing; check each recovered derivation with
  // replay() + finalize() instead.
  bool defer_unification = false;
  std::string root_category = "S";
};

struct ParseStats {
  std::size_t instances = 0;
  std::size_t items = 0;
  std::size_t analyses = 0;
};

// All derivations whose finalized derived tree spans the whole input with
// the root category, ordered by canonical string. Empty means no parse.
std::vector<DerivationTree> parse(std::span<const std::string> tokens,
                                  const Language& lang,
                                  const ParseOptions& options = {},
                                  ParseStats* stats = nullptr);

struct BruteForceResult {
  std::vector<DerivationTree> derivations;
  // Some derivation would have needed more elementary trees than allowed.
  bool bound_hit = false;
};

// Test oracle: freely generates every derivation of at most `max_trees`
// elementary trees from entries whose words occur in `tokens`, replays and
// finalizes each, and keeps those whose yield equals `tokens`.
BruteForceResult brute_force_parse(std::span<const std::string> tokens,
                                   const Language& lang, std::size_t max_trees,
                                   const std::string& root_category = "S");

}  // namespace lextag

#endif  // LEXTAG_PARSER_H_
