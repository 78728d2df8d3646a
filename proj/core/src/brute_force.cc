// Exhaustive generate-and-test parser used as a reference for the chart.
// It shares lexical lookup with the chart parser but nothing else: every
// combination of the looked-up entries is built, replayed through
// substitute()/adjoin()/finalize() and compared against the input.

#include <algorithm>
#include <map>

#include "lextag/errors.h"
#include "lextag/parser.h"

namespace lextag {

namespace {

struct Budget {
  std::map<std::string, int> tokens;
  std::size_t trees = 0;

  bool take(const std::vector<std::string>& words) {
    for (const auto& w : words) {
      auto it = tokens.find(w);
      if (it == tokens.end() || it->second == 0) return false;
      --it->second;
    }
    return true;
  }

  bool exhausted() const {
    for (const auto& [w, n] : tokens) {
      if (n > 0) return false;
    }
    return true;
  }
};

struct Partial {
  DerivationTree tree;
  Budget left;
};

struct Slot {
  GornAddress addr;
  const TreeNode* node;
};

void collect_slots(const TreeNode& n, const GornAddress& addr,
                   std::vector<Slot>& out, std::vector<std::string>& words) {
  if (n.kind == NodeKind::kSubstitution ||
      (n.kind == NodeKind::kInterior && n.adjoinable)) {
    out.push_back({addr, &n});
  }
  if (n.kind == NodeKind::kTerminal) {
    words.insert(words.end(), n.words.begin(), n.words.end());
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    collect_slots(n.children[i], addr.child(static_cast<int>(i) + 1), out, words);
  }
}

class Generator {
 public:
  Generator(const Language& lang, std::vector<const LexicalEntry*> entries)
      : lang_(lang), entries_(std::move(entries)) {}

  bool bound_hit() const { return bound_hit_; }

  // Every elementary tree of `kind` rooted in `category`, fully expanded.
  std::vector<Partial> trees(TreeKind kind, const std::string& category,
                             const Budget& budget) {
    std::vector<Partial> out;
    if (budget.trees == 0) {
      if (!budget.exhausted()) bound_hit_ = true;
      return out;
    }
    for (const LexicalEntry* e : entries_) {
      for (const auto& name : e->trees) {
        const ElementaryTree* t = lang_.tree(name);
        if (t == nullptr || t->kind != kind || t->root.category != category) {
          continue;
        }
        expand(*e, *t, budget, out);
      }
    }
    return out;
  }

 private:
  void expand(const LexicalEntry& e, const ElementaryTree& t,
              const Budget& budget, std::vector<Partial>& out) {
    std::vector<Slot> slots;
    std::vector<std::string> words = e.surface;
    collect_slots(t.root, GornAddress(), slots, words);
    Budget b = budget;
    if (!b.take(words)) return;
    --b.trees;

    DerivationTree head;
    head.tree = t.name;
    head.lemma = e.lemma;
    head.sense = e.sense;
    head.surface = e.surface;
    std::vector<Partial> states{{std::move(head), std::move(b)}};

    for (const Slot& slot : slots) {
      std::vector<Partial> next;
      for (Partial& s : states) {
        if (slot.node->kind == NodeKind::kSubstitution) {
          for (Partial& sub : trees(TreeKind::kInitial, slot.node->category, s.left)) {
            Partial p{s.tree, std::move(sub.left)};
            p.tree.children.push_back({Operation::kSubstitution, slot.addr,
                                       std::move(sub.tree)});
            next.push_back(std::move(p));
          }
          continue;
        }
        for (Partial& aux : trees(TreeKind::kAuxiliary, slot.node->category, s.left)) {
          Partial p{s.tree, std::move(aux.left)};
          p.tree.children.push_back({Operation::kAdjunction, slot.addr,
                                     std::move(aux.tree)});
          next.push_back(std::move(p));
        }
        next.push_back(std::move(s));
      }
      states = std::move(next);
      if (states.empty()) return;
    }
    for (Partial& s : states) out.push_back(std::move(s));
  }

  const Language& lang_;
  std::vector<const LexicalEntry*> entries_;
  bool bound_hit_ = false;
};

}  // namespace

BruteForceResult brute_force_parse(std::span<const std::string> tokens,
                                   const Language& lang, std::size_t max_trees,
                                   const std::string& root_category) {
  std::vector<const LexicalEntry*> entries;
  for (const LexiconMatch& m : lang.lookup(tokens)) {
    for (const LexicalEntry* e : m.entries) {
      if (std::find(entries.begin(), entries.end(), e) == entries.end()) {
        entries.push_back(e);
      }
    }
  }
  Budget budget;
  for (const auto& t : tokens) ++budget.tokens[t];
  budget.trees = max_trees;

  Generator gen(lang, entries);
  std::vector<Partial> all = gen.trees(TreeKind::kInitial, root_category, budget);

  std::map<std::string, DerivationTree> found;
  const std::vector<std::string> want(tokens.begin(), tokens.end());
  for (Partial& p : all) {
    if (!p.left.exhausted()) continue;
    normalize(p.tree);
    Result<Replayed> r = replay(p.tree, lang);
    if (!r) continue;
    if (yield(r.value().checked) != want) continue;
    found.emplace(canonical(p.tree), std::move(p.tree));
  }
  BruteForceResult out;
  out.bound_hit = gen.bound_hit();
  for (auto& [key, d] : found) out.derivations.push_back(std::move(d));
  return out;
}

}  // namespace lextag
