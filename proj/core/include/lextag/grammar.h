#ifndef LEXTAG_GRAMMAR_H_
#define LEXTAG_GRAMMAR_H_

// Elementary trees, their well-formedness rules, and the feature-based
// substitution / adjunction / finalization operations on derived trees.
//
// Feature bookkeeping follows the usual FB-TAG schedule:
//   substitution at n:  n.top := n.top U root.top,     n.bottom := root.bottom
//   adjunction at n:    root.top := n.top U root.top,  root.bottom kept,
//                       foot.bottom := n.bottom U foot.bottom
//   finalize:           every node's top U bottom must succeed.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lextag/avm.h"
#include "lextag/gorn.h"

namespace lextag {

enum class NodeKind { kInterior, kSubstitution, kFoot, kAnchor, kTerminal };
enum class TreeKind { kInitial, kAuxiliary };

const char* to_string(NodeKind kind);
const char* to_string(TreeKind kind);

struct TreeNode {
  std::string category;
  NodeKind kind = NodeKind::kInterior;
  FeatureValue top;
  FeatureValue bottom;
  bool adjoinable = false;
  // Terminal word, or the anchor's surface once the tree is anchored.
  std::vector<std::string> words;
  std::vector<TreeNode> children;

  bool is_leaf() const { return kind != NodeKind::kInterior; }
};

struct ElementaryTree {
  std::string name;
  std::string language;
  TreeKind kind = TreeKind::kInitial;
  TreeNode root;
};

// Throws AddressError if `addr` does not name a node.
const TreeNode& node_at(const ElementaryTree& tree, const GornAddress& addr);
TreeNode& node_at(TreeNode& root, const GornAddress& addr);
const TreeNode* find_node(const TreeNode& root, const GornAddress& addr);

// Preorder walk.
void for_each_node(
    const TreeNode& root,
    const std::function<void(const GornAddress&, const TreeNode&)>& fn);

GornAddress anchor_address(const ElementaryTree& tree);
std::optional<GornAddress> foot_address(const ElementaryTree& tree);

// A broken well-formedness rule. `kind` is a stable identifier such as
// "missing-foot" or "dangling-address".
struct Violation {
  std::string kind;
  std::string where;
  std::string message;
};

namespace violation {
inline constexpr const char* kMissingFoot = "missing-foot";
inline constexpr const char* kUnexpectedFoot = "unexpected-foot";
inline constexpr const char* kMultipleFeet = "multiple-feet";
inline constexpr const char* kFootCategory = "foot-category-mismatch";
inline constexpr const char* kMissingAnchor = "missing-anchor";
inline constexpr const char* kMultipleAnchors = "multiple-anchors";
inline constexpr const char* kLeafWithChildren = "leaf-with-children";
inline constexpr const char* kEmptyInterior = "empty-interior";
inline constexpr const char* kEmptyCategory = "empty-category";
inline constexpr const char* kTerminalWord = "terminal-without-word";
}  // namespace violation

std::vector<Violation> validate(const ElementaryTree& tree);

// ---------------------------------------------------------------------------
// Derived trees

// A derived-tree node remembers the elementary instance and address it came
// from, so later operations can keep addressing elementary nodes after the
// tree has been reshaped by adjunction.
struct DerivedNode {
  std::string category;
  NodeKind kind = NodeKind::kInterior;
  FeatureValue top;
  FeatureValue bottom;
  bool adjoinable = false;
  std::vector<std::string> words;
  int instance = 0;
  GornAddress origin;
  // Lemma whose tree contributed each side; used to attribute clashes.
  std::string top_owner;
  std::string bottom_owner;
  std::vector<DerivedNode> children;
};

class DerivedTree {
 public:
  // Wraps one anchored elementary tree. `owner` is the anchoring lemma.
  // Variables must already be distinct per instance (anchoring does this).
  DerivedTree(const ElementaryTree& tree, int instance, std::string owner);

  TreeKind kind() const { return kind_; }
  int instance() const { return instance_; }
  const std::string& owner() const { return owner_; }
  const DerivedNode& root() const { return root_; }
  std::size_t node_count() const;

  // Node of this tree's own elementary instance at elementary address
  // `addr`; nullptr if absent (e.g. replaced by an adjunction).
  const DerivedNode* find_origin(const GornAddress& addr) const;

 private:
  friend class TreeOps;

  TreeKind kind_;
  int instance_;
  std::string owner_;
  DerivedNode root_;
  std::set<GornAddress> adjoined_;
};

// A unification failure that surfaced while combining or finalizing.
struct CombinationFailure {
  // Address in the derived tree where the clash surfaced.
  GornAddress address;
  Clash clash;
  // The two values (resolved) whose unification failed; unify_values() on
  // them reproduces `clash`.
  FeatureValue left;
  FeatureValue right;
  // Lemma that imposed the constraining side.
  std::string blame;
};

template <typename T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}  // NOLINT
  Result(CombinationFailure f) : v_(std::move(f)) {}  // NOLINT

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }
  T& value() { return std::get<0>(v_); }
  const T& value() const { return std::get<0>(v_); }
  const CombinationFailure& failure() const { return std::get<1>(v_); }

 private:
  std::variant<T, CombinationFailure> v_;
};

struct Combined {
  DerivedTree tree;
  Bindings env;
};

struct CheckedNode {
  std::string category;
  NodeKind kind = NodeKind::kInterior;
  FeatureValue features;
  std::vector<std::string> words;
  std::vector<CheckedNode> children;
};

// A derived tree whose every node passed the final top/bottom unification.
struct FeatureCheckedTree {
  CheckedNode root;
  Bindings env;
};

// Substitutes `sub` (derived from an initial tree) at the substitution leaf
// of `host`'s own instance at `addr`. Throws OperationError on kind or
// category mismatch.
Result<Combined> substitute(const DerivedTree& host, const GornAddress& addr,
                            const DerivedTree& sub, Bindings env);

// Adjoins `aux` at the adjoinable interior node of `host`'s own instance at
// `addr`. Throws OperationError for non-adjoinable nodes, category mismatch,
// or a second adjunction at the same node.
Result<Combined> adjoin(const DerivedTree& host, const GornAddress& addr,
                        const DerivedTree& aux, Bindings env);

// Unifies top and bottom at every node in preorder. Throws OperationError if
// a substitution slot is still open.
Result<FeatureCheckedTree> finalize(const DerivedTree& tree, Bindings env);

// Left-to-right anchor and terminal words.
std::vector<std::string> yield(const DerivedTree& tree);
std::vector<std::string> yield(const FeatureCheckedTree& tree);

// Bracketed rendering, e.g. (S (NP (N John)) (VP (V broke) ...)).
std::string bracketed(const FeatureCheckedTree& tree, bool with_features);

}  // namespace lextag

#endif  // LEXTAG_GRAMMAR_H_
