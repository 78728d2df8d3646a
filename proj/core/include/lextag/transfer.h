#ifndef LEXTAG_TRANSFER_H_
#define LEXTAG_TRANSFER_H_

// Maps a source derivation onto a target-language skeleton: each elementary
// tree is swapped for its linked target tree and each lemma for the set of
// target lemmas that share a concept with it.
//
// Transfer file format (JSON):
//   {"source_lang": "en", "target_lang": "zh", "version": 1,
//    "concepts":   [{"id": "BREAK", "source": ["break"],
//                    "target": ["da sui", "da duan"]}],
//    "tree_links": [{"src_tree": "tnx0Vnx1", "tgt_tree": "tnx0Vnx1",
//                    "links": [["0.1", "0.1"], ["0.2.2", "0.2.2"]]},
//                   {"src_tree": "tDetNP", "tgt_tree": null}]}
// A null tgt_tree drops the (auxiliary, childless) source tree from the
// target; languages without determiners use this.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lextag/derivation.h"
#include "lextag/gorn.h"
#include "lextag/grammar.h"
#include "lextag/lexicon.h"

namespace lextag {

inline constexpr std::size_t kDefaultMaxExpansion = 10000;

struct Concept {
  std::string id;
  std::vector<std::string> source;
  std::vector<std::string> target;
};

struct TreeLink {
  std::string src_tree;
  // Empty: the source tree has no counterpart and is dropped.
  std::optional<std::string> tgt_tree;
  // Source slot address -> target slot address.
  std::vector<std::pair<GornAddress, GornAddress>> links;
};

class TransferTable {
 public:
  TransferTable(std::string source_lang, std::string target_lang, int version,
                std::vector<Concept> concepts, std::vector<TreeLink> tree_links);

  const std::string& source_lang() const { return source_lang_; }
  const std::string& target_lang() const { return target_lang_; }
  int version() const { return version_; }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const std::vector<TreeLink>& tree_links() const { return tree_links_; }

  const TreeLink* link(const std::string& src_tree) const;

  // Union of the target lemmas of every concept listing `lemma` as a source,
  // sorted. Empty if the lemma is in no concept.
  std::set<std::string> candidates(const std::string& lemma) const;

 private:
  std::string source_lang_;
  std::string target_lang_;
  int version_;
  std::vector<Concept> concepts_;
  std::vector<TreeLink> tree_links_;
  std::map<std::string, std::size_t> link_index_;
};

TransferTable transfer_from_json(const nlohmann::json& j);
TransferTable load_transfer(const std::filesystem::path& path);

struct SkeletonChild;

// Target derivation with a candidate set in place of each lemma.
struct SkeletonNode {
  std::string tree;
  std::string source_lemma;
  std::vector<std::string> lemmas;  // sorted
  std::vector<SkeletonChild> children;
};

struct SkeletonChild {
  Operation op = Operation::kSubstitution;
  GornAddress address;
  SkeletonNode child;
};

// Throws TransferError if a source tree or slot address has no link, or a
// dropped tree would take children with it. Lemmas outside every concept
// yield an empty candidate list.
SkeletonNode map_derivation(const DerivationTree& source,
                            const TransferTable& table);

// Preorder (source lemma, candidates) pairs.
std::vector<std::pair<std::string, std::vector<std::string>>> slots(
    const SkeletonNode& skeleton);

struct Expansion {
  DerivationTree derivation;
  // Chosen target lemma per skeleton node, preorder.
  std::vector<std::string> lemmas;
};

// Cartesian product of the candidate sets, slots in preorder and lemmas in
// lexicographic order (the last slot varies fastest). Throws
// ExpansionLimitError if the product exceeds `max_expansion`.
std::vector<Expansion> expand(const SkeletonNode& skeleton,
                              std::size_t max_expansion = kDefaultMaxExpansion);

namespace violation {
inline constexpr const char* kLanguageMismatch = "language-mismatch";
inline constexpr const char* kUnknownLemma = "unknown-lemma";
inline constexpr const char* kEmptyConcept = "empty-concept";
inline constexpr const char* kDuplicateConcept = "duplicate-concept";
inline constexpr const char* kUnlinkedTree = "unlinked-tree";
inline constexpr const char* kDuplicateLink = "duplicate-link";
inline constexpr const char* kLinkKindMismatch = "link-kind-mismatch";
inline constexpr const char* kBadDrop = "bad-drop";
inline constexpr const char* kUnlinkedSlot = "unlinked-slot";
}  // namespace violation

// Cross-checks a table against both grammars: every lemma is known, every
// source tree is linked, linked trees agree in kind and root category, and
// every substitution slot maps onto a target substitution slot. Unknown
// trees and dangling link addresses use the grammar violation kinds.
std::vector<Violation> validate_transfer(const TransferTable& table,
                                         const Language& source,
                                         const Language& target);

}  // namespace lextag

#endif  // LEXTAG_TRANSFER_H_
