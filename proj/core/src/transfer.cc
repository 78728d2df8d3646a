#include "lextag/transfer.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "lextag/errors.h"
#include "lextag/resources.h"

namespace lextag {

using nlohmann::json;

TransferTable::TransferTable(std::string source_lang, std::string target_lang,
                             int version, std::vector<Concept> concepts,
                             std::vector<TreeLink> tree_links)
    : source_lang_(std::move(source_lang)),
      target_lang_(std::move(target_lang)),
      version_(version),
      concepts_(std::move(concepts)),
      tree_links_(std::move(tree_links)) {
  for (std::size_t i = 0; i < tree_links_.size(); ++i) {
    link_index_.emplace(tree_links_[i].src_tree, i);
  }
}

const TreeLink* TransferTable::link(const std::string& src_tree) const {
  auto it = link_index_.find(src_tree);
  return it == link_index_.end() ? nullptr : &tree_links_[it->second];
}

std::set<std::string> TransferTable::candidates(const std::string& lemma) const {
  std::set<std::string> out;
  for (const Concept& c : concepts_) {
    if (std::find(c.source.begin(), c.source.end(), lemma) == c.source.end()) {
      continue;
    }
    out.insert(c.target.begin(), c.target.end());
  }
  return out;
}

TransferTable transfer_from_json(const json& j) {
  try {
    std::vector<Concept> concepts;
    for (const auto& c : j.at("concepts")) {
      concepts.push_back({c.at("id").get<std::string>(),
                          c.at("source").get<std::vector<std::string>>(),
                          c.at("target").get<std::vector<std::string>>()});
    }
    std::vector<TreeLink> links;
    for (const auto& l : j.at("tree_links")) {
      TreeLink link;
      link.src_tree = l.at("src_tree").get<std::string>();
      if (l.contains("tgt_tree") && !l.at("tgt_tree").is_null()) {
        link.tgt_tree = l.at("tgt_tree").get<std::string>();
      }
      for (const auto& pair : l.value("links", json::array())) {
        if (!pair.is_array() || pair.size() != 2) {
          throw LoadError("transfer: each link must be a [source, target] pair");
        }
        link.links.emplace_back(GornAddress::parse(pair[0].get<std::string>()),
                                GornAddress::parse(pair[1].get<std::string>()));
      }
      links.push_back(std::move(link));
    }
    return TransferTable(j.at("source_lang").get<std::string>(),
                         j.at("target_lang").get<std::string>(),
                         j.value("version", 1), std::move(concepts),
                         std::move(links));
  } catch (const json::exception& e) {
    throw LoadError(std::string("transfer: ") + e.what());
  } catch (const AddressError& e) {
    throw LoadError(std::string("transfer: ") + e.what());
  }
}

TransferTable load_transfer(const std::filesystem::path& path) {
  json j = read_json_file(path);
  try {
    return transfer_from_json(j);
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

namespace {

const TreeLink& require_link(const TransferTable& table, const std::string& tree) {
  const TreeLink* link = table.link(tree);
  if (link == nullptr) {
    throw TransferError("no tree link for source tree '" + tree + "'");
  }
  return *link;
}

SkeletonNode map_node(const DerivationTree& d, const TransferTable& table) {
  const TreeLink& link = require_link(table, d.tree);
  if (!link.tgt_tree) {
    throw TransferError("tree '" + d.tree + "' is dropped and cannot head a derivation");
  }
  SkeletonNode s;
  s.tree = *link.tgt_tree;
  s.source_lemma = d.lemma;
  std::set<std::string> cands = table.candidates(d.lemma);
  s.lemmas.assign(cands.begin(), cands.end());
  for (const DerivationChild& c : d.children) {
    const TreeLink& child_link = require_link(table, c.child.tree);
    if (!child_link.tgt_tree) {
      if (!c.child.children.empty()) {
        throw TransferError("dropped tree '" + c.child.tree +
                            "' has dependents that would be lost");
      }
      continue;
    }
    auto it = std::find_if(link.links.begin(), link.links.end(),
                           [&](const auto& p) { return p.first == c.address; });
    if (it == link.links.end()) {
      throw TransferError("tree link '" + d.tree + "' does not map address " +
                          c.address.str());
    }
    s.children.push_back({c.op, it->second, map_node(c.child, table)});
  }
  std::stable_sort(s.children.begin(), s.children.end(),
                   [](const SkeletonChild& a, const SkeletonChild& b) {
                     if (a.address != b.address) return a.address < b.address;
                     return a.op < b.op;
                   });
  return s;
}

void slots_into(const SkeletonNode& s,
                std::vector<std::pair<std::string, std::vector<std::string>>>& out) {
  out.emplace_back(s.source_lemma, s.lemmas);
  for (const auto& c : s.children) slots_into(c.child, out);
}

DerivationTree instantiate(const SkeletonNode& s,
                           const std::vector<std::string>& lemmas,
                           std::size_t& next) {
  DerivationTree d;
  d.tree = s.tree;
  d.lemma = lemmas.at(next++);
  for (const auto& c : s.children) {
    d.children.push_back({c.op, c.address, instantiate(c.child, lemmas, next)});
  }
  return d;
}

}  // namespace

SkeletonNode map_derivation(const DerivationTree& source,
                            const TransferTable& table) {
  DerivationTree copy = source;
  normalize(copy);
  return map_node(copy, table);
}

std::vector<std::pair<std::string, std::vector<std::string>>> slots(
    const SkeletonNode& skeleton) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  slots_into(skeleton, out);
  return out;
}

std::vector<Expansion> expand(const SkeletonNode& skeleton,
                              std::size_t max_expansion) {
  auto choices = slots(skeleton);
  std::size_t total = 1;
  for (const auto& [lemma, cands] : choices) {
    if (cands.empty()) return {};
    if (total > max_expansion / cands.size()) {
      throw ExpansionLimitError("candidate expansion exceeds " +
                                std::to_string(max_expansion));
    }
    total *= cands.size();
  }
  std::vector<Expansion> out;
  out.reserve(total);
  std::vector<std::size_t> index(choices.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<std::string> lemmas;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      lemmas.push_back(choices[i].second[index[i]]);
    }
    std::size_t next = 0;
    out.push_back({instantiate(skeleton, lemmas, next), lemmas});
    for (std::size_t i = choices.size(); i-- > 0;) {
      if (++index[i] < choices[i].second.size()) break;
      index[i] = 0;
    }
  }
  return out;
}

namespace {

bool is_slot(const TreeNode& n) {
  return n.kind == NodeKind::kSubstitution ||
         (n.kind == NodeKind::kInterior && n.adjoinable);
}

// Lemmas in the lexicon whose entries select `tree`.
bool any_entry_selects(const Language& lang, const std::string& tree) {
  return std::any_of(lang.entries().begin(), lang.entries().end(),
                     [&](const LexicalEntry& e) { return e.selects(tree); });
}

}  // namespace

std::vector<Violation> validate_transfer(const TransferTable& table,
                                         const Language& source,
                                         const Language& target) {
  std::vector<Violation> out;
  auto add = [&](const char* kind, std::string where, std::string message) {
    out.push_back({kind, std::move(where), std::move(message)});
  };

  if (table.source_lang() != source.code()) {
    add(violation::kLanguageMismatch, "source_lang",
        "table source '" + table.source_lang() + "' but grammar is '" +
            source.code() + "'");
  }
  if (table.target_lang() != target.code()) {
    add(violation::kLanguageMismatch, "target_lang",
        "table target '" + table.target_lang() + "' but grammar is '" +
            target.code() + "'");
  }

  std::set<std::string> ids;
  for (const Concept& c : table.concepts()) {
    const std::string where = "concept " + c.id;
    if (c.id.empty() || c.source.empty() || c.target.empty()) {
      add(violation::kEmptyConcept, where, "concept needs an id, sources and targets");
    }
    if (!ids.insert(c.id).second) {
      add(violation::kDuplicateConcept, where, "concept id listed twice");
    }
    for (const auto& l : c.source) {
      if (!source.has_lemma(l)) {
        add(violation::kUnknownLemma, where,
            "source lemma '" + l + "' is not in the " + source.code() + " lexicon");
      }
    }
    for (const auto& l : c.target) {
      if (!target.has_lemma(l)) {
        add(violation::kUnknownLemma, where,
            "target lemma '" + l + "' is not in the " + target.code() + " lexicon");
      }
    }
  }

  std::set<std::string> seen;
  for (const TreeLink& link : table.tree_links()) {
    const std::string where = "tree_link " + link.src_tree;
    if (!seen.insert(link.src_tree).second) {
      add(violation::kDuplicateLink, where, "source tree linked twice");
    }
    const ElementaryTree* src = source.tree(link.src_tree);
    if (src == nullptr) {
      add(violation::kUnknownTree, where,
          "no " + source.code() + " tree '" + link.src_tree + "'");
    }
    if (!link.tgt_tree) {
      if (src != nullptr && src->kind != TreeKind::kAuxiliary) {
        add(violation::kBadDrop, where, "only auxiliary trees may be dropped");
      }
      if (!link.links.empty()) {
        add(violation::kBadDrop, where, "a dropped tree cannot link addresses");
      }
      continue;
    }
    const ElementaryTree* tgt = target.tree(*link.tgt_tree);
    if (tgt == nullptr) {
      add(violation::kUnknownTree, where,
          "no " + target.code() + " tree '" + *link.tgt_tree + "'");
    }
    if (src == nullptr || tgt == nullptr) continue;
    if (src->kind != tgt->kind || src->root.category != tgt->root.category) {
      add(violation::kLinkKindMismatch, where,
          "linked trees differ in kind or root category");
    }
    std::set<GornAddress> linked;
    for (const auto& [from, to] : link.links) {
      const TreeNode* a = find_node(src->root, from);
      const TreeNode* b = find_node(tgt->root, to);
      if (a == nullptr || b == nullptr) {
        add(violation::kDanglingAddress, where,
            "link " + from.str() + " -> " + to.str() + " names no node");
        continue;
      }
      linked.insert(from);
      if (!is_slot(*a) || !is_slot(*b) || a->kind != b->kind ||
          a->category != b->category) {
        add(violation::kLinkKindMismatch, where,
            "link " + from.str() + " -> " + to.str() +
                " joins nodes of different kind or category");
      }
    }
    for_each_node(src->root, [&](const GornAddress& addr, const TreeNode& n) {
      if (n.kind == NodeKind::kSubstitution && !linked.count(addr)) {
        add(violation::kUnlinkedSlot, where,
            "substitution slot " + addr.str() + " has no target");
      }
    });
  }

  for (const ElementaryTree& t : source.trees()) {
    if (!seen.count(t.name) && any_entry_selects(source, t.name)) {
      add(violation::kUnlinkedTree, "tree " + t.name,
          "tree is used by the lexicon but has no tree link");
    }
  }
  return out;
}

}  // namespace lextag
