#ifndef LEXTAG_DERIVATION_H_
#define LEXTAG_DERIVATION_H_

// Derivation trees: which elementary trees were substituted or adjoined
// where. They are what the parser returns, what transfer maps, and what the
// generator replays.

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lextag/gorn.h"
#include "lextag/grammar.h"
#include "lextag/lexicon.h"

namespace lextag {

enum class Operation { kSubstitution, kAdjunction };

const char* to_string(Operation op);

struct DerivationChild;

struct DerivationTree {
  std::string tree;
  std::string lemma;
  // Sense and surface pin the exact lexical entry. Both are empty in target
  // derivations, where the generator picks citation entries of `lemma`.
  std::string sense;
  std::vector<std::string> surface;
  std::vector<DerivationChild> children;
};

struct DerivationChild {
  Operation op = Operation::kSubstitution;
  // Address in the parent's elementary tree.
  GornAddress address;
  DerivationTree child;
};

// Sorts children by (address, operation) recursively.
void normalize(DerivationTree& d);

// One-line canonical form, independent of child order. Two derivations are
// the same iff their canonical strings are equal.
std::string canonical(const DerivationTree& d);

std::size_t node_count(const DerivationTree& d);

// Lemmas in preorder (children in normalized order).
std::vector<std::string> preorder_lemmas(const DerivationTree& d);

// Indented text, one elementary tree per line.
std::string to_text(const DerivationTree& d);

nlohmann::json to_json(const DerivationTree& d);
DerivationTree derivation_from_json(const nlohmann::json& j);

// Lexical entries available for each derivation node, in preorder. Pinned
// nodes have exactly one option; lemma-only nodes list the citation entries
// of the lemma that select the node's tree. Throws Error if a node has no
// option at all.
std::vector<std::vector<const LexicalEntry*>> entry_options(
    const DerivationTree& d, const Language& lang);

struct Replayed {
  DerivedTree derived;
  FeatureCheckedTree checked;
  // Entry used at each derivation node, preorder.
  std::vector<const LexicalEntry*> entries;
};

// Anchors every node with the given entries (preorder), rebuilds the derived
// tree through substitute()/adjoin() and finalizes it.
Result<Replayed> replay(const DerivationTree& d, const Language& lang,
                        const std::vector<const LexicalEntry*>& entries);

// Replay using the first option of every node.
Result<Replayed> replay(const DerivationTree& d, const Language& lang);

}  // namespace lextag

#endif  // LEXTAG_DERIVATION_H_
