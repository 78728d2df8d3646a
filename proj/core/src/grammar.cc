#include "lextag/grammar.h"

#include <optional>
#include <sstream>

#include "lextag/errors.h"

namespace lextag {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kInterior: return "interior";
    case NodeKind::kSubstitution: return "substitution";
    case NodeKind::kFoot: return "foot";
    case NodeKind::kAnchor: return "anchor";
    case NodeKind::kTerminal: return "terminal";
  }
  return "?";
}

const char* to_string(TreeKind kind) {
  return kind == TreeKind::kInitial ? "initial" : "auxiliary";
}

const TreeNode* find_node(const TreeNode& root, const GornAddress& addr) {
  const TreeNode* node = &root;
  for (int index : addr.path()) {
    if (index < 1 || index > static_cast<int>(node->children.size())) {
      return nullptr;
    }
    node = &node->children[index - 1];
  }
  return node;
}

const TreeNode& node_at(const ElementaryTree& tree, const GornAddress& addr) {
  const TreeNode* node = find_node(tree.root, addr);
  if (node == nullptr) {
    throw AddressError("address " + addr.str() + " dangles in tree '" +
                       tree.name + "'");
  }
  return *node;
}

TreeNode& node_at(TreeNode& root, const GornAddress& addr) {
  const TreeNode* node = find_node(root, addr);
  if (node == nullptr) throw AddressError("address " + addr.str() + " dangles");
  return const_cast<TreeNode&>(*node);
}

namespace {

void walk(const TreeNode& node, const GornAddress& addr,
          const std::function<void(const GornAddress&, const TreeNode&)>& fn) {
  fn(addr, node);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    walk(node.children[i], addr.child(static_cast<int>(i) + 1), fn);
  }
}

}  // namespace

void for_each_node(
    const TreeNode& root,
    const std::function<void(const GornAddress&, const TreeNode&)>& fn) {
  walk(root, GornAddress(), fn);
}

GornAddress anchor_address(const ElementaryTree& tree) {
  std::optional<GornAddress> found;
  for_each_node(tree.root, [&](const GornAddress& a, const TreeNode& n) {
    if (n.kind == NodeKind::kAnchor && !found) found = a;
  });
  if (!found) throw OperationError("tree '" + tree.name + "' has no anchor");
  return *found;
}

std::optional<GornAddress> foot_address(const ElementaryTree& tree) {
  std::optional<GornAddress> found;
  for_each_node(tree.root, [&](const GornAddress& a, const TreeNode& n) {
    if (n.kind == NodeKind::kFoot && !found) found = a;
  });
  return found;
}

std::vector<Violation> validate(const ElementaryTree& tree) {
  std::vector<Violation> out;
  auto report = [&](const char* kind, const GornAddress& addr,
                    std::string message) {
    out.push_back({kind, tree.name + "@" + addr.str(), std::move(message)});
  };

  std::vector<GornAddress> anchors, feet;
  for_each_node(tree.root, [&](const GornAddress& a, const TreeNode& n) {
    if (n.category.empty()) report(violation::kEmptyCategory, a, "node has no category");
    if (n.is_leaf() && !n.children.empty()) {
      report(violation::kLeafWithChildren, a,
             std::string(to_string(n.kind)) + " node has children");
    }
    if (n.kind == NodeKind::kInterior && n.children.empty()) {
      report(violation::kEmptyInterior, a, "interior node has no children");
    }
    if (n.kind == NodeKind::kTerminal && n.words.empty()) {
      report(violation::kTerminalWord, a, "terminal node has no word");
    }
    if (n.kind == NodeKind::kAnchor) anchors.push_back(a);
    if (n.kind == NodeKind::kFoot) feet.push_back(a);
  });

  if (anchors.empty()) {
    report(violation::kMissingAnchor, GornAddress(), "tree has no anchor");
  }
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    report(violation::kMultipleAnchors, anchors[i], "second anchor node");
  }

  if (tree.kind == TreeKind::kAuxiliary) {
    if (feet.empty()) {
      report(violation::kMissingFoot, GornAddress(),
             "auxiliary tree has no foot node");
    }
    for (std::size_t i = 1; i < feet.size(); ++i) {
      report(violation::kMultipleFeet, feet[i], "second foot node");
    }
    if (!feet.empty()) {
      const TreeNode& foot = node_at(tree, feet.front());
      if (foot.category != tree.root.category) {
        report(violation::kFootCategory, feet.front(),
               "foot " + foot.category + " differs from root " +
                   tree.root.category);
      }
    }
  } else {
    for (const GornAddress& a : feet) {
      report(violation::kUnexpectedFoot, a, "initial tree has a foot node");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived trees

namespace {

DerivedNode derive(const TreeNode& n, int instance, const GornAddress& addr,
                   const std::string& owner) {
  DerivedNode d;
  d.category = n.category;
  d.kind = n.kind;
  d.top = n.top;
  d.bottom = n.bottom;
  d.adjoinable = n.adjoinable;
  d.words = n.words;
  d.instance = instance;
  d.origin = addr;
  d.top_owner = owner;
  d.bottom_owner = owner;
  d.children.reserve(n.children.size());
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    d.children.push_back(derive(n.children[i], instance,
                                addr.child(static_cast<int>(i) + 1), owner));
  }
  return d;
}

std::size_t count_nodes(const DerivedNode& n) {
  std::size_t total = 1;
  for (const auto& c : n.children) total += count_nodes(c);
  return total;
}

DerivedNode* locate(DerivedNode& n, int instance, const GornAddress& origin,
                    GornAddress here, GornAddress* where) {
  if (n.instance == instance && n.origin == origin) {
    if (where) *where = here;
    return &n;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (DerivedNode* hit = locate(n.children[i], instance, origin,
                                  here.child(static_cast<int>(i) + 1), where)) {
      return hit;
    }
  }
  return nullptr;
}

DerivedNode* find_foot(DerivedNode& n, int instance) {
  if (n.kind == NodeKind::kFoot && n.instance == instance) return &n;
  for (auto& c : n.children) {
    if (DerivedNode* hit = find_foot(c, instance)) return hit;
  }
  return nullptr;
}

CombinationFailure make_failure(const GornAddress& where, const Clash& clash,
                                const FeatureValue& left,
                                const FeatureValue& right, const Bindings& env,
                                std::string blame) {
  return CombinationFailure{where, clash, resolve(left, env),
                            resolve(right, env), std::move(blame)};
}

}  // namespace

DerivedTree::DerivedTree(const ElementaryTree& tree, int instance,
                         std::string owner)
    : kind_(tree.kind),
      instance_(instance),
      owner_(std::move(owner)),
      root_(derive(tree.root, instance, GornAddress(), owner_)) {}

std::size_t DerivedTree::node_count() const { return count_nodes(root_); }

const DerivedNode* DerivedTree::find_origin(const GornAddress& addr) const {
  return locate(const_cast<DerivedNode&>(root_), instance_, addr, GornAddress(),
                nullptr);
}

class TreeOps {
 public:
  static Result<Combined> substitute(const DerivedTree& host,
                                     const GornAddress& addr,
                                     const DerivedTree& sub, Bindings env) {
    if (sub.kind() != TreeKind::kInitial) {
      throw OperationError("only initial trees substitute");
    }
    DerivedTree out = host;
    GornAddress where;
    DerivedNode* slot =
        locate(out.root_, out.instance_, addr, GornAddress(), &where);
    if (slot == nullptr) {
      throw AddressError("address " + addr.str() + " dangles in host tree");
    }
    if (slot->kind != NodeKind::kSubstitution) {
      throw OperationError("node " + addr.str() + " is a " +
                           to_string(slot->kind) + " node, not a substitution slot");
    }
    if (slot->category != sub.root().category) {
      throw OperationError("cannot substitute " + sub.root().category +
                           " at " + slot->category + " slot " + addr.str());
    }
    Unification u = unify_values(slot->top, sub.root().top, env);
    if (!u) {
      return make_failure(where, u.clash(), slot->top, sub.root().top, env,
                          slot->top_owner);
    }
    DerivedNode merged = sub.root();
    merged.top = u.value();
    merged.top_owner = slot->top_owner;
    *slot = std::move(merged);
    return Combined{std::move(out), u.take_env()};
  }

  static Result<Combined> adjoin(const DerivedTree& host,
                                 const GornAddress& addr,
                                 const DerivedTree& aux, Bindings env) {
    if (aux.kind() != TreeKind::kAuxiliary) {
      throw OperationError("only auxiliary trees adjoin");
    }
    if (host.adjoined_.count(addr)) {
      throw OperationError("node " + addr.str() + " already received an adjunction");
    }
    DerivedTree out = host;
    GornAddress where;
    DerivedNode* target =
        locate(out.root_, out.instance_, addr, GornAddress(), &where);
    if (target == nullptr) {
      throw AddressError("address " + addr.str() + " dangles in host tree");
    }
    if (target->kind != NodeKind::kInterior || !target->adjoinable) {
      throw OperationError("node " + addr.str() + " does not allow adjunction");
    }
    if (target->category != aux.root().category) {
      throw OperationError("cannot adjoin " + aux.root().category + " tree at " +
                           target->category + " node " + addr.str());
    }

    Unification top = unify_values(target->top, aux.root().top, env);
    if (!top) {
      return make_failure(where, top.clash(), target->top, aux.root().top, env,
                          target->top_owner);
    }
    DerivedNode spliced = aux.root();
    DerivedNode* foot = find_foot(spliced, aux.instance());
    if (foot == nullptr) throw OperationError("auxiliary tree lost its foot");
    Bindings env_after_top = top.take_env();
    Unification bottom =
        unify_values(target->bottom, foot->bottom, env_after_top);
    if (!bottom) {
      return make_failure(where, bottom.clash(), target->bottom, foot->bottom,
                          env_after_top, target->bottom_owner);
    }
    foot->kind = NodeKind::kInterior;
    foot->bottom = bottom.value();
    foot->bottom_owner = target->bottom_owner;
    foot->adjoinable = false;
    foot->children = std::move(target->children);
    spliced.top = top.value();
    spliced.top_owner = target->top_owner;
    *target = std::move(spliced);
    out.adjoined_.insert(addr);
    return Combined{std::move(out), bottom.take_env()};
  }
};

Result<Combined> substitute(const DerivedTree& host, const GornAddress& addr,
                            const DerivedTree& sub, Bindings env) {
  return TreeOps::substitute(host, addr, sub, std::move(env));
}

Result<Combined> adjoin(const DerivedTree& host, const GornAddress& addr,
                        const DerivedTree& aux, Bindings env) {
  return TreeOps::adjoin(host, addr, aux, std::move(env));
}

namespace {

void find_open_slot(const DerivedNode& n, const GornAddress& here,
                    std::optional<GornAddress>& out) {
  if (out) return;
  if (n.kind == NodeKind::kSubstitution) {
    out = here;
    return;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    find_open_slot(n.children[i], here.child(static_cast<int>(i) + 1), out);
  }
}

// First pass: unify top and bottom everywhere, keeping the merged values.
std::optional<CombinationFailure> collapse(const DerivedNode& n,
                                           const GornAddress& here,
                                           Bindings& env,
                                           std::vector<FeatureValue>& merged) {
  Unification u = unify_values(n.top, n.bottom, env);
  if (!u) {
    return make_failure(here, u.clash(), n.top, n.bottom, env, n.top_owner);
  }
  merged.push_back(u.value());
  env = u.take_env();
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (auto f = collapse(n.children[i], here.child(static_cast<int>(i) + 1),
                          env, merged)) {
      return f;
    }
  }
  return std::nullopt;
}

CheckedNode build_checked(const DerivedNode& n, const Bindings& env,
                          const std::vector<FeatureValue>& merged,
                          std::size_t& next) {
  CheckedNode c;
  c.category = n.category;
  c.kind = n.kind;
  c.features = resolve(merged[next++], env);
  c.words = n.words;
  for (const auto& child : n.children) {
    c.children.push_back(build_checked(child, env, merged, next));
  }
  return c;
}

void collect_words(const DerivedNode& n, std::vector<std::string>& out) {
  if (n.kind == NodeKind::kAnchor || n.kind == NodeKind::kTerminal) {
    out.insert(out.end(), n.words.begin(), n.words.end());
  }
  for (const auto& c : n.children) collect_words(c, out);
}

void collect_words(const CheckedNode& n, std::vector<std::string>& out) {
  if (n.kind == NodeKind::kAnchor || n.kind == NodeKind::kTerminal) {
    out.insert(out.end(), n.words.begin(), n.words.end());
  }
  for (const auto& c : n.children) collect_words(c, out);
}

void render(const CheckedNode& n, bool with_features, std::ostringstream& os) {
  bool leaf_word = (n.kind == NodeKind::kAnchor || n.kind == NodeKind::kTerminal);
  os << '(' << n.category;
  if (with_features && n.features.is_structure() &&
      !n.features.structure().empty()) {
    os << to_string(n.features);
  }
  if (leaf_word) {
    for (const auto& w : n.words) os << ' ' << w;
  }
  for (const auto& c : n.children) {
    os << ' ';
    render(c, with_features, os);
  }
  os << ')';
}

}  // namespace

Result<FeatureCheckedTree> finalize(const DerivedTree& tree, Bindings env) {
  std::optional<GornAddress> open;
  find_open_slot(tree.root(), GornAddress(), open);
  if (open) {
    throw OperationError("substitution slot " + open->str() + " is unfilled");
  }
  std::vector<FeatureValue> merged;
  if (auto f = collapse(tree.root(), GornAddress(), env, merged)) return *f;
  std::size_t next = 0;
  FeatureCheckedTree out;
  out.root = build_checked(tree.root(), env, merged, next);
  out.env = std::move(env);
  return out;
}

std::vector<std::string> yield(const DerivedTree& tree) {
  std::vector<std::string> out;
  collect_words(tree.root(), out);
  return out;
}

std::vector<std::string> yield(const FeatureCheckedTree& tree) {
  std::vector<std::string> out;
  collect_words(tree.root, out);
  return out;
}

std::string bracketed(const FeatureCheckedTree& tree, bool with_features) {
  std::ostringstream os;
  render(tree.root, with_features, os);
  return os.str();
}

}  // namespace lextag
