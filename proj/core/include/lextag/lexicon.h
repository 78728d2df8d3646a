#ifndef LEXTAG_LEXICON_H_
#define LEXTAG_LEXICON_H_

// Per-language resources: the ontology of semantic features, the syntactic
// lexicon (lemmas selecting trees, their semantic features and selectional
// restrictions) and the elementary trees those lemmas anchor.

#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lextag/avm.h"
#include "lextag/gorn.h"
#include "lextag/grammar.h"

namespace lextag {

// Semantic features a language distinguishes, with their allowed atoms.
// Nouns must value every feature in `selectional`, so open-world
// unification cannot let an unspecified feature slip through a restriction.
struct Ontology {
  std::string language;
  std::map<std::string, std::set<std::string>> features;
  std::set<std::string> selectional;
};

enum class Slot { kTop, kBottom };

// Feature equation applied to a node of the anchored tree.
struct Equation {
  GornAddress addr;
  Slot slot = Slot::kTop;
  FeatureStructure fs;
};

// Constraint a lexical item places on one of its argument slots.
struct Restriction {
  GornAddress addr;
  FeatureStructure fs;
};

struct LexicalEntry {
  std::vector<std::string> surface;
  std::string lemma;
  // Distinguishes senses that share a lemma (break-phys vs break-func).
  std::string sense;
  std::string language;
  std::string pos;
  std::vector<std::string> trees;
  FeatureStructure semfeats;
  std::vector<Equation> equations;
  std::vector<Restriction> restrictions;
  FeatureStructure syn;
  // True for the first listed form of a sense; generation realizes this one.
  bool citation = true;

  std::string surface_string() const;
  bool selects(const std::string& tree_name) const;
};

// An elementary tree anchored by one lexical entry. Variables carry the
// suffix "#<instance>" so two instances never share a variable.
struct AnchoredTree {
  ElementaryTree tree;
  Bindings env;
  int instance = 0;
  std::string lemma;
  std::string sense;
  std::vector<std::string> surface;
};

// Result of longest-match lookup for one stretch of the token stream.
// Co-anchor matches are words that only occur as fixed terminals inside
// elementary trees (e.g. case particles); they select no entry.
struct LexiconMatch {
  std::size_t start = 0;
  std::size_t length = 0;
  std::vector<const LexicalEntry*> entries;
  bool coanchor = false;
};

namespace violation {
inline constexpr const char* kUndeclaredFeature = "undeclared-feature";
inline constexpr const char* kUndeclaredAtom = "undeclared-atom";
inline constexpr const char* kNonAtomicValue = "non-atomic-value";
inline constexpr const char* kMissingSelectional = "missing-selectional";
inline constexpr const char* kDanglingAddress = "dangling-address";
inline constexpr const char* kUnknownTree = "unknown-tree";
inline constexpr const char* kDuplicateSense = "duplicate-sense";
inline constexpr const char* kSelectionalUndeclared = "selectional-undeclared";
inline constexpr const char* kRestrictionTarget = "restriction-not-slot";
inline constexpr const char* kAnchorClash = "anchor-clash";
inline constexpr const char* kDuplicateTree = "duplicate-tree";
inline constexpr const char* kEmptySurface = "empty-surface";
}  // namespace violation

class Language {
 public:
  Language(Ontology ontology, std::vector<ElementaryTree> trees,
           std::vector<LexicalEntry> entries, int max_depth = kDefaultMaxDepth);

  const std::string& code() const { return ontology_.language; }
  const Ontology& ontology() const { return ontology_; }
  const std::vector<ElementaryTree>& trees() const { return trees_; }
  const std::vector<LexicalEntry>& entries() const { return entries_; }
  int max_depth() const { return max_depth_; }

  const ElementaryTree* tree(const std::string& name) const;
  bool has_lemma(const std::string& lemma) const;

  // Entries whose surface is exactly `tokens`.
  std::vector<const LexicalEntry*> entries_for_surface(
      std::span<const std::string> tokens) const;
  // Citation entries of `lemma` that select `tree_name`, in lexicon order.
  std::vector<const LexicalEntry*> citation_entries(
      const std::string& lemma, const std::string& tree_name) const;
  const LexicalEntry* find_entry(const std::string& sense,
                                 std::span<const std::string> surface) const;

  const std::set<std::string>& coanchor_words() const { return coanchors_; }
  // Every distinct entry surface and co-anchor word.
  std::vector<std::vector<std::string>> vocabulary() const;

  // Longest-match lookup over the whole token stream. Throws
  // UnknownTokenError naming the first token that nothing covers.
  std::vector<LexiconMatch> lookup(std::span<const std::string> tokens) const;

  // Anchors `tree_name` with `entry`: fills the anchor, merges the entry's
  // semantic features into the anchor's parent bottom and its syntactic
  // features into the anchor bottom, applies equations, and unifies
  // restrictions into the top of the addressed argument slots. Throws
  // AnchorError if the entry does not select the tree or a merge clashes.
  AnchoredTree anchor(const LexicalEntry& entry, const std::string& tree_name,
                      int instance = 0) const;

 private:
  Ontology ontology_;
  std::vector<ElementaryTree> trees_;
  std::vector<LexicalEntry> entries_;
  int max_depth_;
  std::map<std::string, std::size_t> tree_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_surface_;
  std::set<std::string> lemmas_;
  std::set<std::string> coanchors_;
  std::size_t longest_surface_ = 1;
};

// Ontology and lexicon checks: undeclared features and atoms, nouns missing
// selectional features, dangling equation/restriction addresses, unknown
// trees, and entries that cannot be anchored at all.
std::vector<Violation> validate_lexicon(const Language& language);

// Tree checks plus lexicon checks.
std::vector<Violation> validate(const Language& language);

}  // namespace lextag

#endif  // LEXTAG_LEXICON_H_
