#include "lextag/parser.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "lextag/errors.h"

namespace lextag {

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
  auto is_punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)); };
  while (pos < sentence.size()) {
    while (pos < sentence.size() && is_space(sentence[pos])) ++pos;
    std::size_t end = pos;
    while (end < sentence.size() && !is_space(sentence[end])) ++end;
    std::size_t b = pos, e = end;
    while (b < e && is_punct(sentence[b])) ++b;
    while (e > b && is_punct(sentence[e - 1])) --e;
    if (e > b) out.emplace_back(sentence.substr(b, e - b));
    pos = end;
  }
  if (out.empty()) throw EmptyInputError("empty input sentence");
  return out;
}

std::vector<SelectedTree> select_trees(std::span<const std::string> tokens,
                                       const Language& lang) {
  std::vector<SelectedTree> out;
  int instance = 0;
  for (const LexiconMatch& m : lang.lookup(tokens)) {
    for (const LexicalEntry* e : m.entries) {
      for (const auto& tree_name : e->trees) {
        out.push_back({lang.anchor(*e, tree_name, instance++), m.start,
                       m.length, e});
      }
    }
  }
  return out;
}

namespace {

// Item states: kTop means the node is done, adjunction included; a value
// d >= 0 means the first d children have been recognized (d == #children is
// the node's bottom, before adjunction).
constexpr int kTop = -1;
constexpr int kNoFoot = -1;

struct NodeInfo {
  GornAddress addr;
  const TreeNode* node = nullptr;
  int parent = -1;
  int position = 0;  // index among the parent's children
  std::vector<int> children;
};

struct Instance {
  const SelectedTree* selected = nullptr;
  std::vector<NodeInfo> nodes;  // preorder, 0 is the root
  bool auxiliary = false;
};

void flatten(const TreeNode& n, const GornAddress& addr, int parent,
             int position, std::vector<NodeInfo>& out) {
  int id = static_cast<int>(out.size());
  out.push_back({addr, &n, parent, position, {}});
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    int child_id = static_cast<int>(out.size());
    out[id].children.push_back(child_id);
    flatten(n.children[i], addr.child(static_cast<int>(i) + 1), id,
            static_cast<int>(i), out);
  }
}

struct Key {
  int inst = 0;
  int node = 0;
  int state = kTop;
  int i = 0;
  int l = 0;
  int fj = kNoFoot;
  int fk = kNoFoot;
  auto operator<=>(const Key&) const = default;
};

enum class Rule { kLeaf, kFoot, kSubstitute, kDotInit, kDotAdvance, kNoAdjoin, kAdjoin };

struct Back {
  Rule rule;
  int a = -1;
  int b = -1;
  auto operator<=>(const Back&) const = default;
};

struct Item {
  Key key;
  std::vector<Back> backs;
};

// Bottom-up agenda-driven recognizer over dotted node items. Items are packed
// by key; every way of building an item is kept as a backpointer.
class Chart {
 public:
  Chart(std::span<const std::string> tokens,
        const std::vector<SelectedTree>& selected)
      : n_(static_cast<int>(tokens.size())) {
    instances_.reserve(selected.size());
    for (const auto& s : selected) {
      Instance inst;
      inst.selected = &s;
      inst.auxiliary = s.anchored.tree.kind == TreeKind::kAuxiliary;
      flatten(s.anchored.tree.root, GornAddress(), -1, 0, inst.nodes);
      instances_.push_back(std::move(inst));
    }
    for (int k = 0; k < static_cast<int>(instances_.size()); ++k) {
      for (int id = 0; id < static_cast<int>(instances_[k].nodes.size()); ++id) {
        const TreeNode& node = *instances_[k].nodes[id].node;
        if (node.kind == NodeKind::kSubstitution) {
          slots_[node.category].push_back({k, id});
        }
      }
    }
    seed(tokens);
    while (!agenda_.empty()) {
      int id = agenda_.front();
      agenda_.pop_front();
      process(id);
    }
  }

  const std::vector<Instance>& instances() const { return instances_; }
  const std::vector<Item>& items() const { return items_; }

  std::vector<int> complete(const std::string& category) const {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(instances_.size()); ++k) {
      if (instances_[k].auxiliary) continue;
      if (instances_[k].nodes[0].node->category != category) continue;
      auto it = index_.find(Key{k, 0, kTop, 0, n_, kNoFoot, kNoFoot});
      if (it != index_.end()) out.push_back(it->second);
    }
    return out;
  }

 private:
  const TreeNode& node(const Key& k) const {
    return *instances_[k.inst].nodes[k.node].node;
  }

  void add(const Key& key, Back back) {
    auto [it, fresh] = index_.emplace(key, static_cast<int>(items_.size()));
    if (fresh) {
      items_.push_back({key, {back}});
      agenda_.push_back(it->second);
      return;
    }
    auto& backs = items_[it->second].backs;
    if (std::find(backs.begin(), backs.end(), back) == backs.end()) {
      backs.push_back(back);
    }
  }

  void seed(std::span<const std::string> tokens) {
    for (int k = 0; k < static_cast<int>(instances_.size()); ++k) {
      const Instance& inst = instances_[k];
      for (int id = 0; id < static_cast<int>(inst.nodes.size()); ++id) {
        const TreeNode& nd = *inst.nodes[id].node;
        switch (nd.kind) {
          case NodeKind::kAnchor: {
            int start = static_cast<int>(inst.selected->start);
            int end = start + static_cast<int>(inst.selected->length);
            add({k, id, kTop, start, end, kNoFoot, kNoFoot}, {Rule::kLeaf});
            break;
          }
          case NodeKind::kTerminal:
            for (int p = 0; p < n_; ++p) {
              if (!nd.words.empty() && tokens[p] == nd.words.front()) {
                add({k, id, kTop, p, p + 1, kNoFoot, kNoFoot}, {Rule::kLeaf});
              }
            }
            break;
          case NodeKind::kFoot:
            for (int j = 0; j <= n_; ++j) {
              for (int l = j; l <= n_; ++l) {
                add({k, id, kTop, j, l, j, l}, {Rule::kFoot});
              }
            }
            break;
          case NodeKind::kInterior:
            for (int i = 0; i <= n_; ++i) {
              add({k, id, 0, i, i, kNoFoot, kNoFoot}, {Rule::kDotInit});
            }
            break;
          case NodeKind::kSubstitution:
            break;
        }
      }
    }
  }

  // Joins a dotted item with the next child's top item.
  void advance(int dot_id, int top_id) {
    const Key d = items_[dot_id].key;
    const Key t = items_[top_id].key;
    if (d.fj != kNoFoot && t.fj != kNoFoot) return;
    int fj = d.fj != kNoFoot ? d.fj : t.fj;
    int fk = d.fj != kNoFoot ? d.fk : t.fk;
    add({d.inst, d.node, d.state + 1, d.i, t.l, fj, fk},
        {Rule::kDotAdvance, dot_id, top_id});
  }

  void process(int id) {
    const Key key = items_[id].key;
    const Instance& inst = instances_[key.inst];
    const NodeInfo& info = inst.nodes[key.node];
    const TreeNode& nd = *info.node;

    if (key.state == kTop) {
      if (info.parent >= 0) {
        tops_by_start_[{key.inst, key.node, key.i}].push_back(id);
        auto it = dots_by_end_.find({key.inst, info.parent, info.position, key.i});
        if (it != dots_by_end_.end()) {
          for (int dot : std::vector<int>(it->second)) advance(dot, id);
        }
        return;
      }
      if (!inst.auxiliary && key.fj == kNoFoot) {
        auto it = slots_.find(nd.category);
        if (it == slots_.end()) return;
        for (auto [k, slot] : it->second) {
          if (k == key.inst) continue;
          add({k, slot, kTop, key.i, key.l, kNoFoot, kNoFoot},
              {Rule::kSubstitute, id});
        }
        return;
      }
      if (inst.auxiliary && key.fj != kNoFoot) {
        std::tuple<std::string, int, int> span{nd.category, key.fj, key.fk};
        aux_by_foot_[span].push_back(id);
        auto it = bots_by_span_.find(span);
        if (it == bots_by_span_.end()) return;
        for (int bot : std::vector<int>(it->second)) {
          const Key b = items_[bot].key;
          if (b.inst == key.inst) continue;
          add({b.inst, b.node, kTop, key.i, key.l, b.fj, b.fk},
              {Rule::kAdjoin, id, bot});
        }
      }
      return;
    }

    const int arity = static_cast<int>(info.children.size());
    if (key.state < arity) {
      dots_by_end_[{key.inst, key.node, key.state, key.l}].push_back(id);
      auto it = tops_by_start_.find({key.inst, info.children[key.state], key.l});
      if (it != tops_by_start_.end()) {
        for (int top : std::vector<int>(it->second)) advance(id, top);
      }
      return;
    }

    // Bottom of the node: finish without adjunction, or wait for one.
    add({key.inst, key.node, kTop, key.i, key.l, key.fj, key.fk},
        {Rule::kNoAdjoin, id});
    if (!nd.adjoinable) return;
    std::tuple<std::string, int, int> span{nd.category, key.i, key.l};
    bots_by_span_[span].push_back(id);
    auto it = aux_by_foot_.find(span);
    if (it == aux_by_foot_.end()) return;
    for (int aux : std::vector<int>(it->second)) {
      const Key a = items_[aux].key;
      if (a.inst == key.inst) continue;
      add({key.inst, key.node, kTop, a.i, a.l, key.fj, key.fk},
          {Rule::kAdjoin, aux, id});
    }
  }

  int n_;
  std::vector<Instance> instances_;
  std::map<std::string, std::vector<std::pair<int, int>>> slots_;
  std::vector<Item> items_;
  std::map<Key, int> index_;
  std::deque<int> agenda_;
  std::map<std::tuple<int, int, int>, std::vector<int>> tops_by_start_;
  std::map<std::tuple<int, int, int, int>, std::vector<int>> dots_by_end_;
  std::map<std::tuple<std::string, int, int>, std::vector<int>> bots_by_span_;
  std::map<std::tuple<std::string, int, int>, std::vector<int>> aux_by_foot_;
};

// One feature-consistent way of building an item.
struct Analysis {
  Bindings env;
  // Value the node exposes upward (top items only).
  FeatureValue exposed;
  // Merged top and bottom of an auxiliary tree's foot, waiting for the
  // bottom of the node it will be adjoined at.
  std::optional<FeatureValue> foot;
  // Operations performed on this item's own elementary instance.
  std::vector<DerivationChild> ops;
};

// Recovers derivations from the packed chart, unifying features as the
// pieces combine (eager) or not at all (deferred).
class Extractor {
 public:
  Extractor(const Chart& chart, bool eager, int max_depth)
      : chart_(chart),
        eager_(eager),
        max_depth_(max_depth),
        memo_(chart.items().size()) {}

  const std::vector<Analysis>& analyses(int id) {
    if (memo_[id]) return *memo_[id];
    std::vector<Analysis> out;
    const Item& item = chart_.items()[id];
    for (const Back& back : item.backs) expand(item.key, back, out);
    count_ += out.size();
    memo_[id] = std::move(out);
    return *memo_[id];
  }

  DerivationTree derivation(int inst_id, const Analysis& a) const {
    const SelectedTree& s = *chart_.instances()[inst_id].selected;
    DerivationTree d;
    d.tree = s.anchored.tree.name;
    d.lemma = s.anchored.lemma;
    d.sense = s.anchored.sense;
    d.surface = s.anchored.surface;
    d.children = a.ops;
    normalize(d);
    return d;
  }

  std::size_t count() const { return count_; }

 private:
  std::optional<FeatureValue> unify_into(const FeatureValue& a,
                                         const FeatureValue& b, Bindings& env) {
    Unification u = unify_values(a, b, env, max_depth_);
    if (!u) return std::nullopt;
    env = u.take_env();
    return u.value();
  }

  bool merge(Bindings& env, const Bindings& other) {
    if (!eager_) return true;
    return !merge_bindings(env, other, max_depth_);
  }

  void expand(const Key& key, const Back& back, std::vector<Analysis>& out) {
    const Instance& inst = chart_.instances()[key.inst];
    const NodeInfo& info = inst.nodes[key.node];
    const TreeNode& nd = *info.node;

    switch (back.rule) {
      case Rule::kLeaf: {
        Analysis a;
        if (nd.kind == NodeKind::kAnchor) a.env = inst.selected->anchored.env;
        if (eager_) {
          auto v = unify_into(nd.top, nd.bottom, a.env);
          if (!v) return;
          a.exposed = *v;
        }
        out.push_back(std::move(a));
        return;
      }
      case Rule::kFoot: {
        Analysis a;
        a.foot = FeatureValue();
        if (eager_) {
          auto v = unify_into(nd.top, nd.bottom, a.env);
          if (!v) return;
          a.foot = *v;
        }
        out.push_back(std::move(a));
        return;
      }
      case Rule::kDotInit:
        out.emplace_back();
        return;
      case Rule::kSubstitute: {
        int sub_inst = chart_.items()[back.a].key.inst;
        for (const Analysis& s : analyses(back.a)) {
          Analysis a;
          a.env = s.env;
          if (eager_) {
            auto v = unify_into(nd.top, s.exposed, a.env);
            if (!v) continue;
            a.exposed = *v;
          }
          a.ops.push_back({Operation::kSubstitution, info.addr,
                           derivation(sub_inst, s)});
          out.push_back(std::move(a));
        }
        return;
      }
      case Rule::kDotAdvance: {
        const auto& left = analyses(back.a);
        const auto& right = analyses(back.b);
        for (const Analysis& d : left) {
          for (const Analysis& t : right) {
            Analysis a;
            a.env = d.env;
            if (!merge(a.env, t.env)) continue;
            a.foot = d.foot ? d.foot : t.foot;
            a.ops = d.ops;
            a.ops.insert(a.ops.end(), t.ops.begin(), t.ops.end());
            out.push_back(std::move(a));
          }
        }
        return;
      }
      case Rule::kNoAdjoin: {
        for (const Analysis& b : analyses(back.a)) {
          Analysis a = b;
          if (eager_) {
            auto v = unify_into(nd.top, nd.bottom, a.env);
            if (!v) continue;
            a.exposed = *v;
          }
          out.push_back(std::move(a));
        }
        return;
      }
      case Rule::kAdjoin: {
        int aux_inst = chart_.items()[back.a].key.inst;
        const auto& auxes = analyses(back.a);
        const auto& bots = analyses(back.b);
        for (const Analysis& x : auxes) {
          for (const Analysis& b : bots) {
            Analysis a;
            a.env = b.env;
            if (!merge(a.env, x.env)) continue;
            if (eager_) {
              if (!unify_into(*x.foot, nd.bottom, a.env)) continue;
              auto v = unify_into(nd.top, x.exposed, a.env);
              if (!v) continue;
              a.exposed = *v;
            }
            a.foot = b.foot;
            a.ops = b.ops;
            a.ops.push_back({Operation::kAdjunction, info.addr,
                             derivation(aux_inst, x)});
            out.push_back(std::move(a));
          }
        }
        return;
      }
    }
  }

  const Chart& chart_;
  bool eager_;
  int max_depth_;
  std::vector<std::optional<std::vector<Analysis>>> memo_;
  std::size_t count_ = 0;
};

}  // namespace

std::vector<DerivationTree> parse(std::span<const std::string> tokens,
                                  const Language& lang,
                                  const ParseOptions& options,
                                  ParseStats* stats) {
  std::vector<SelectedTree> selected = select_trees(tokens, lang);
  Chart chart(tokens, selected);
  Extractor extractor(chart, !options.defer_unification, lang.max_depth());

  std::map<std::string, DerivationTree> found;
  for (int root : chart.complete(options.root_category)) {
    int inst = chart.items()[root].key.inst;
    for (const Analysis& a : extractor.analyses(root)) {
      DerivationTree d = extractor.derivation(inst, a);
      std::string key = canonical(d);
      if (found.count(key)) continue;
      if (options.defer_unification && !replay(d, lang)) continue;
      found.emplace(std::move(key), std::move(d));
    }
  }
  if (stats != nullptr) {
    stats->instances = selected.size();
    stats->items = chart.items().size();
    stats->analyses = extractor.count();
  }
  std::vector<DerivationTree> out;
  out.reserve(found.size());
  for (auto& [key, d] : found) out.push_back(std::move(d));
  return out;
}

}  // namespace lextag
