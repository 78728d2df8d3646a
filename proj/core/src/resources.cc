#include "lextag/resources.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "lextag/errors.h"

namespace lextag {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw LoadError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

std::string require_string(const json& j, const char* key,
                           const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
    throw LoadError(where + ": field '" + key + "' must be a nonempty string");
  }
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw LoadError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw LoadError(where + ": expected strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

GornAddress address(const json& j, const std::string& where) {
  if (!j.is_string()) throw LoadError(where + ": address must be a string");
  try {
    return GornAddress::parse(j.get<std::string>());
  } catch (const AddressError& e) {
    throw LoadError(where + ": " + e.what());
  }
}

NodeKind node_kind(const std::string& s, const std::string& where) {
  if (s == "interior") return NodeKind::kInterior;
  if (s == "substitution") return NodeKind::kSubstitution;
  if (s == "foot") return NodeKind::kFoot;
  if (s == "anchor") return NodeKind::kAnchor;
  if (s == "terminal") return NodeKind::kTerminal;
  throw LoadError(where + ": unknown node kind '" + s + "'");
}

FeatureValue node_features(const json& node, const char* key, int max_depth,
                           const std::string& where) {
  if (!node.contains(key)) return FeatureValue();
  FeatureValue v = value_from_json(node.at(key), max_depth);
  if (v.is_atom()) {
    throw LoadError(where + ": node '" + key +
                    "' must be a structure or a variable");
  }
  return v;
}

TreeNode node_from_json(const json& j, int max_depth, const std::string& where) {
  if (!j.is_object()) throw LoadError(where + ": tree node must be an object");
  TreeNode n;
  n.category = j.contains("cat") && j.at("cat").is_string()
                   ? j.at("cat").get<std::string>()
                   : std::string();
  n.kind = node_kind(j.value("kind", std::string("interior")), where);
  n.top = node_features(j, "top", max_depth, where);
  n.bottom = node_features(j, "bottom", max_depth, where);
  n.adjoinable = j.value("adjoinable", n.kind == NodeKind::kInterior);
  if (n.kind == NodeKind::kTerminal && j.contains("word")) {
    n.words.push_back(j.at("word").get<std::string>());
  }
  // Substitution and foot leaves carry one structure for both sides.
  if (n.kind == NodeKind::kSubstitution || n.kind == NodeKind::kFoot) {
    n.bottom = n.top;
  }
  if (j.contains("children")) {
    const json& kids = j.at("children");
    if (!kids.is_array()) throw LoadError(where + ": children must be an array");
    for (std::size_t i = 0; i < kids.size(); ++i) {
      n.children.push_back(node_from_json(kids[i], max_depth,
                                          where + "." + std::to_string(i + 1)));
    }
  }
  return n;
}

json node_to_json(const TreeNode& n) {
  json j;
  j["cat"] = n.category;
  j["kind"] = to_string(n.kind);
  j["top"] = to_json(n.top);
  if (n.kind != NodeKind::kSubstitution && n.kind != NodeKind::kFoot) {
    j["bottom"] = to_json(n.bottom);
  }
  j["adjoinable"] = n.adjoinable;
  if (n.kind == NodeKind::kTerminal && !n.words.empty()) j["word"] = n.words.front();
  if (!n.children.empty()) {
    j["children"] = json::array();
    for (const auto& c : n.children) j["children"].push_back(node_to_json(c));
  }
  return j;
}

Ontology ontology_from_json(const json& j, const std::string& language) {
  Ontology o;
  o.language = language;
  const json& feats = require(j, "features", "ontology");
  if (!feats.is_object()) throw LoadError("ontology: features must be an object");
  for (auto it = feats.begin(); it != feats.end(); ++it) {
    auto atoms = string_list(it.value(), "ontology feature '" + it.key() + "'");
    o.features[it.key()] = {atoms.begin(), atoms.end()};
  }
  if (j.contains("selectional")) {
    auto sel = string_list(j.at("selectional"), "ontology selectional");
    o.selectional = {sel.begin(), sel.end()};
  }
  return o;
}

std::vector<LexicalEntry> entries_from_json(const json& j,
                                            const std::string& language,
                                            int max_depth) {
  std::vector<LexicalEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& item = j[i];
    const std::string where = "lexicon[" + std::to_string(i) + "]";
    LexicalEntry base;
    base.language = language;
    base.lemma = require_string(item, "lemma", where);
    base.sense = item.value("sense", base.lemma);
    base.pos = require_string(item, "pos", where);
    base.trees = string_list(require(item, "trees", where), where + ".trees");
    if (item.contains("semfeats")) {
      base.semfeats = structure_from_json(item.at("semfeats"), max_depth);
    }
    for (const auto& r : item.value("restrictions", json::array())) {
      base.restrictions.push_back(
          {address(require(r, "addr", where), where),
           structure_from_json(require(r, "fs", where), max_depth)});
    }
    for (const auto& e : item.value("equations", json::array())) {
      std::string slot = e.value("slot", std::string("top"));
      if (slot != "top" && slot != "bottom") {
        throw LoadError(where + ": equation slot must be top or bottom");
      }
      base.equations.push_back(
          {address(require(e, "addr", where), where),
           slot == "top" ? Slot::kTop : Slot::kBottom,
           structure_from_json(require(e, "fs", where), max_depth)});
    }
    const json& forms = require(item, "forms", where);
    if (!forms.is_array() || forms.empty()) {
      throw LoadError(where + ": forms must be a nonempty array");
    }
    for (std::size_t f = 0; f < forms.size(); ++f) {
      LexicalEntry e = base;
      e.surface = string_list(require(forms[f], "surface", where),
                              where + ".surface");
      if (forms[f].contains("syn")) {
        e.syn = structure_from_json(forms[f].at("syn"), max_depth);
      }
      e.citation = (f == 0);
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

ElementaryTree tree_from_json(const json& j, const std::string& language,
                              int max_depth) {
  ElementaryTree t;
  t.name = require_string(j, "name", "tree");
  t.language = language;
  std::string kind = require_string(j, "kind", "tree '" + t.name + "'");
  if (kind == "initial") {
    t.kind = TreeKind::kInitial;
  } else if (kind == "auxiliary") {
    t.kind = TreeKind::kAuxiliary;
  } else {
    throw LoadError("tree '" + t.name + "': unknown kind '" + kind + "'");
  }
  t.root = node_from_json(require(j, "root", "tree '" + t.name + "'"), max_depth,
                          t.name + "@0");
  return t;
}

json to_json(const ElementaryTree& tree) {
  json j;
  j["name"] = tree.name;
  j["kind"] = to_string(tree.kind);
  j["root"] = node_to_json(tree.root);
  return j;
}

Language language_from_json(const json& j, int max_depth) {
  try {
    const json& version = require(j, "schema_version", "grammar");
    if (!version.is_number_integer() ||
        version.get<int>() != kGrammarSchemaVersion) {
      throw LoadError("grammar: unsupported schema_version " + version.dump());
    }
    std::string language = require_string(j, "language", "grammar");
    Ontology onto = ontology_from_json(require(j, "ontology", "grammar"), language);
    std::vector<ElementaryTree> trees;
    for (const auto& t : require(j, "trees", "grammar")) {
      trees.push_back(tree_from_json(t, language, max_depth));
    }
    const json& lex = require(j, "lexicon", "grammar");
    if (!lex.is_array()) throw LoadError("grammar: lexicon must be an array");
    auto entries = entries_from_json(lex, language, max_depth);
    return Language(std::move(onto), std::move(trees), std::move(entries),
                    max_depth);
  } catch (const json::exception& e) {
    throw LoadError(std::string("grammar: ") + e.what());
  }
}

Language load_language(const std::filesystem::path& path, int max_depth) {
  json j = read_json_file(path);
  try {
    return language_from_json(j, max_depth);
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

}  // namespace lextag
