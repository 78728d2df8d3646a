#include "lextag/lexicon.h"

#include <algorithm>

#include "lextag/errors.h"

namespace lextag {

namespace {

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

void rename_tree(TreeNode& n, const std::string& suffix) {
  n.top = rename_variables(n.top, suffix);
  n.bottom = rename_variables(n.bottom, suffix);
  for (auto& c : n.children) rename_tree(c, suffix);
}

}  // namespace

std::string LexicalEntry::surface_string() const { return join(surface); }

bool LexicalEntry::selects(const std::string& tree_name) const {
  return std::find(trees.begin(), trees.end(), tree_name) != trees.end();
}

Language::Language(Ontology ontology, std::vector<ElementaryTree> trees,
                   std::vector<LexicalEntry> entries, int max_depth)
    : ontology_(std::move(ontology)),
      trees_(std::move(trees)),
      entries_(std::move(entries)),
      max_depth_(max_depth) {
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    tree_index_.emplace(trees_[i].name, i);
    for_each_node(trees_[i].root, [&](const GornAddress&, const TreeNode& n) {
      if (n.kind == NodeKind::kTerminal) {
        for (const auto& w : n.words) coanchors_.insert(w);
      }
    });
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const LexicalEntry& e = entries_[i];
    if (e.surface.empty()) continue;
    by_surface_[e.surface_string()].push_back(i);
    lemmas_.insert(e.lemma);
    longest_surface_ = std::max(longest_surface_, e.surface.size());
  }
}

const ElementaryTree* Language::tree(const std::string& name) const {
  auto it = tree_index_.find(name);
  return it == tree_index_.end() ? nullptr : &trees_[it->second];
}

bool Language::has_lemma(const std::string& lemma) const {
  return lemmas_.count(lemma) > 0;
}

std::vector<const LexicalEntry*> Language::entries_for_surface(
    std::span<const std::string> tokens) const {
  std::vector<const LexicalEntry*> out;
  auto it = by_surface_.find(join(tokens));
  if (it == by_surface_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&entries_[i]);
  return out;
}

std::vector<const LexicalEntry*> Language::citation_entries(
    const std::string& lemma, const std::string& tree_name) const {
  std::vector<const LexicalEntry*> out;
  for (const auto& e : entries_) {
    if (e.citation && e.lemma == lemma && e.selects(tree_name)) {
      out.push_back(&e);
    }
  }
  return out;
}

const LexicalEntry* Language::find_entry(
    const std::string& sense, std::span<const std::string> surface) const {
  for (const LexicalEntry* e : entries_for_surface(surface)) {
    if (e->sense == sense) return e;
  }
  return nullptr;
}

std::vector<std::vector<std::string>> Language::vocabulary() const {
  std::set<std::vector<std::string>> seen;
  for (const auto& e : entries_) {
    if (!e.surface.empty()) seen.insert(e.surface);
  }
  for (const auto& w : coanchors_) seen.insert({w});
  return {seen.begin(), seen.end()};
}

std::vector<LexiconMatch> Language::lookup(
    std::span<const std::string> tokens) const {
  std::vector<LexiconMatch> out;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    std::size_t max_len = std::min(longest_surface_, tokens.size() - pos);
    bool matched = false;
    for (std::size_t len = max_len; len >= 1; --len) {
      auto entries = entries_for_surface(tokens.subspan(pos, len));
      if (entries.empty()) continue;
      out.push_back({pos, len, std::move(entries), false});
      pos += len;
      matched = true;
      break;
    }
    if (matched) continue;
    if (coanchors_.count(tokens[pos])) {
      out.push_back({pos, 1, {}, true});
      ++pos;
      continue;
    }
    throw UnknownTokenError(pos, tokens[pos]);
  }
  return out;
}

AnchoredTree Language::anchor(const LexicalEntry& entry,
                              const std::string& tree_name,
                              int instance) const {
  if (!entry.selects(tree_name)) {
    throw AnchorError("entry '" + entry.sense + "' does not select tree '" +
                      tree_name + "'");
  }
  const ElementaryTree* source = tree(tree_name);
  if (source == nullptr) {
    throw AnchorError("entry '" + entry.sense + "' names unknown tree '" +
                      tree_name + "'");
  }

  AnchoredTree out;
  out.tree = *source;
  out.instance = instance;
  out.lemma = entry.lemma;
  out.sense = entry.sense;
  out.surface = entry.surface;

  const std::string suffix = "#" + std::to_string(instance);
  rename_tree(out.tree.root, suffix);

  Bindings env;
  auto merge = [&](FeatureValue& slot, const FeatureStructure& fs,
                   const GornAddress& addr, const char* what) {
    Unification u = unify_values(slot, FeatureValue(rename_variables(fs, suffix)),
                                 std::move(env), max_depth_);
    if (!u) {
      throw AnchorError("anchoring '" + entry.sense + "' in '" + tree_name +
                        "': " + what + " at " + addr.str() + " clashes on '" +
                        u.clash().path_string() + "' (" + u.clash().left +
                        " vs " + u.clash().right + ")");
    }
    slot = u.value();
    env = u.take_env();
  };
  auto node = [&](const GornAddress& addr) -> TreeNode& {
    try {
      return node_at(out.tree.root, addr);
    } catch (const AddressError&) {
      throw AnchorError("entry '" + entry.sense + "' addresses " + addr.str() +
                        ", which dangles in tree '" + tree_name + "'");
    }
  };

  GornAddress anchor_addr = anchor_address(out.tree);
  TreeNode& anchor_node = node(anchor_addr);
  anchor_node.words = entry.surface;
  merge(anchor_node.bottom, entry.syn, anchor_addr, "syntactic features");

  GornAddress parent_addr = anchor_addr.parent();
  merge(node(parent_addr).bottom, entry.semfeats, parent_addr,
        "semantic features");

  for (const auto& eq : entry.equations) {
    TreeNode& n = node(eq.addr);
    merge(eq.slot == Slot::kTop ? n.top : n.bottom, eq.fs, eq.addr, "equation");
  }
  for (const auto& r : entry.restrictions) {
    TreeNode& n = node(r.addr);
    merge(n.top, r.fs, r.addr, "restriction");
    // Substitution leaves carry a single structure.
    if (n.kind == NodeKind::kSubstitution || n.kind == NodeKind::kFoot) {
      n.bottom = n.top;
    }
  }
  out.env = std::move(env);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate_lexicon(const Language& lang) {
  std::vector<Violation> out;
  const Ontology& onto = lang.ontology();

  for (const auto& f : onto.selectional) {
    if (!onto.features.count(f)) {
      out.push_back({violation::kSelectionalUndeclared, "ontology",
                     "selectional feature '" + f + "' is not declared"});
    }
  }

  auto check_semantic = [&](const FeatureStructure& fs, const std::string& where) {
    for (const auto& [name, value] : fs) {
      auto decl = onto.features.find(name);
      if (decl == onto.features.end()) {
        out.push_back({violation::kUndeclaredFeature, where,
                       "feature '" + name + "' is not in the ontology"});
        continue;
      }
      if (value.is_structure()) {
        out.push_back({violation::kNonAtomicValue, where,
                       "feature '" + name + "' has a structured value"});
      } else if (value.is_atom() && !decl->second.count(value.text())) {
        out.push_back({violation::kUndeclaredAtom, where,
                       "atom '" + value.text() + "' is not declared for '" +
                           name + "'"});
      }
    }
  };

  std::set<std::pair<std::string, std::string>> seen_forms;
  for (const auto& e : lang.entries()) {
    const std::string where = e.sense + " '" + e.surface_string() + "'";
    if (e.surface.empty()) {
      out.push_back({violation::kEmptySurface, where, "entry has no surface"});
    }
    if (!seen_forms.emplace(e.sense, e.surface_string()).second) {
      out.push_back({violation::kDuplicateSense, where,
                     "sense and surface listed twice"});
    }
    check_semantic(e.semfeats, where);
    for (const auto& r : e.restrictions) check_semantic(r.fs, where + "@" + r.addr.str());

    if (e.pos == "N") {
      for (const auto& f : onto.selectional) {
        if (!e.semfeats.contains(f)) {
          out.push_back({violation::kMissingSelectional, where,
                         "noun does not value selectional feature '" + f + "'"});
        }
      }
    }

    bool addresses_ok = true;
    for (const auto& tree_name : e.trees) {
      const ElementaryTree* t = lang.tree(tree_name);
      if (t == nullptr) {
        out.push_back({violation::kUnknownTree, where,
                       "tree '" + tree_name + "' does not exist"});
        addresses_ok = false;
        continue;
      }
      for (const auto& eq : e.equations) {
        if (find_node(t->root, eq.addr) == nullptr) {
          out.push_back({violation::kDanglingAddress, where,
                         "equation address " + eq.addr.str() +
                             " dangles in tree '" + tree_name + "'"});
          addresses_ok = false;
        }
      }
      for (const auto& r : e.restrictions) {
        const TreeNode* n = find_node(t->root, r.addr);
        if (n == nullptr) {
          out.push_back({violation::kDanglingAddress, where,
                         "restriction address " + r.addr.str() +
                             " dangles in tree '" + tree_name + "'"});
          addresses_ok = false;
        } else if (n->kind != NodeKind::kSubstitution) {
          out.push_back({violation::kRestrictionTarget, where,
                         "restriction at " + r.addr.str() + " in tree '" +
                             tree_name + "' is not an argument slot"});
        }
      }
    }
    if (!addresses_ok) continue;
    for (const auto& tree_name : e.trees) {
      try {
        lang.anchor(e, tree_name);
      } catch (const Error& err) {
        out.push_back({violation::kAnchorClash, where, err.what()});
      }
    }
  }
  return out;
}

std::vector<Violation> validate(const Language& lang) {
  std::vector<Violation> out;
  std::set<std::string> names;
  for (const auto& t : lang.trees()) {
    if (!names.insert(t.name).second) {
      out.push_back({violation::kDuplicateTree, t.name, "tree defined twice"});
    }
    auto v = validate(t);
    out.insert(out.end(), v.begin(), v.end());
  }
  auto v = validate_lexicon(lang);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace lextag
