#include "lextag/derivation.h"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lextag/errors.h"

namespace lextag {

using nlohmann::json;

const char* to_string(Operation op) {
  return op == Operation::kSubstitution ? "substitution" : "adjunction";
}

void normalize(DerivationTree& d) {
  for (auto& c : d.children) normalize(c.child);
  std::stable_sort(d.children.begin(), d.children.end(),
                   [](const DerivationChild& a, const DerivationChild& b) {
                     if (a.address != b.address) return a.address < b.address;
                     return a.op < b.op;
                   });
}

namespace {

std::string join(const std::vector<std::string>& words, char sep) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += sep;
    out += w;
  }
  return out;
}

std::string head(const DerivationTree& d) {
  std::string out = d.tree + "<" + d.lemma;
  if (!d.sense.empty() && d.sense != d.lemma) out += "/" + d.sense;
  if (!d.surface.empty()) out += ":" + join(d.surface, '_');
  out += ">";
  return out;
}

void canonical_into(const DerivationTree& d, std::string& out) {
  out += head(d);
  if (d.children.empty()) return;
  std::vector<std::string> kids;
  for (const auto& c : d.children) {
    std::string s = (c.op == Operation::kSubstitution ? "s@" : "a@") +
                    c.address.str() + "=";
    canonical_into(c.child, s);
    kids.push_back(std::move(s));
  }
  std::sort(kids.begin(), kids.end());
  out += "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ",";
    out += kids[i];
  }
  out += ")";
}

void text_into(const DerivationTree& d, int depth, const std::string& prefix,
               std::ostringstream& os) {
  os << std::string(2 * depth, ' ') << prefix << d.tree << " <" << d.lemma
     << ">";
  if (!d.sense.empty() && d.sense != d.lemma) os << " [" << d.sense << "]";
  if (!d.surface.empty()) os << " \"" << join(d.surface, ' ') << "\"";
  os << '\n';
  for (const auto& c : d.children) {
    std::string p = std::string(c.op == Operation::kSubstitution ? "subst " : "adjoin ") +
                    c.address.str() + ": ";
    text_into(c.child, depth + 1, p, os);
  }
}

void lemmas_into(const DerivationTree& d, std::vector<std::string>& out) {
  out.push_back(d.lemma);
  for (const auto& c : d.children) lemmas_into(c.child, out);
}

void options_into(const DerivationTree& d, const Language& lang,
                  std::vector<std::vector<const LexicalEntry*>>& out) {
  std::vector<const LexicalEntry*> opts;
  if (!d.sense.empty()) {
    const LexicalEntry* e = lang.find_entry(d.sense, d.surface);
    if (e != nullptr && e->selects(d.tree)) opts.push_back(e);
  } else {
    opts = lang.citation_entries(d.lemma, d.tree);
  }
  if (opts.empty()) {
    throw Error("no '" + lang.code() + "' entry for lemma '" + d.lemma +
                "' selects tree '" + d.tree + "'");
  }
  out.push_back(std::move(opts));
  for (const auto& c : d.children) options_into(c.child, lang, out);
}

Result<Combined> build(const DerivationTree& d, const Language& lang,
                       const std::vector<const LexicalEntry*>& entries,
                       std::size_t& next) {
  const int instance = static_cast<int>(next);
  const LexicalEntry* entry = entries.at(next++);
  AnchoredTree anchored = lang.anchor(*entry, d.tree, instance);
  DerivedTree host(anchored.tree, instance, anchored.lemma);
  Bindings env = std::move(anchored.env);

  for (const auto& c : d.children) {
    Result<Combined> sub = build(c.child, lang, entries, next);
    if (!sub) return sub.failure();
    // Instances never share variables, so this merge cannot clash.
    if (auto clash = merge_bindings(env, sub.value().env)) {
      throw Error("variable capture between elementary instances");
    }
    Result<Combined> step =
        c.op == Operation::kSubstitution
            ? substitute(host, c.address, sub.value().tree, std::move(env))
            : adjoin(host, c.address, sub.value().tree, std::move(env));
    if (!step) return step.failure();
    host = std::move(step.value().tree);
    env = std::move(step.value().env);
  }
  return Combined{std::move(host), std::move(env)};
}

}  // namespace

std::string canonical(const DerivationTree& d) {
  std::string out;
  canonical_into(d, out);
  return out;
}

std::size_t node_count(const DerivationTree& d) {
  std::size_t n = 1;
  for (const auto& c : d.children) n += node_count(c.child);
  return n;
}

std::vector<std::string> preorder_lemmas(const DerivationTree& d) {
  DerivationTree copy = d;
  normalize(copy);
  std::vector<std::string> out;
  lemmas_into(copy, out);
  return out;
}

std::string to_text(const DerivationTree& d) {
  std::ostringstream os;
  text_into(d, 0, "", os);
  return os.str();
}

json to_json(const DerivationTree& d) {
  json j;
  j["tree"] = d.tree;
  j["lemma"] = d.lemma;
  if (!d.sense.empty()) j["sense"] = d.sense;
  if (!d.surface.empty()) j["surface"] = d.surface;
  json kids = json::array();
  for (const auto& c : d.children) {
    json k;
    k["op"] = to_string(c.op);
    k["address"] = c.address.str();
    k["child"] = to_json(c.child);
    kids.push_back(std::move(k));
  }
  j["children"] = std::move(kids);
  return j;
}

DerivationTree derivation_from_json(const json& j) {
  try {
    DerivationTree d;
    d.tree = j.at("tree").get<std::string>();
    d.lemma = j.at("lemma").get<std::string>();
    d.sense = j.value("sense", std::string());
    d.surface = j.value("surface", std::vector<std::string>());
    for (const auto& k : j.value("children", json::array())) {
      std::string op = k.at("op").get<std::string>();
      if (op != "substitution" && op != "adjunction") {
        throw LoadError("unknown derivation operation '" + op + "'");
      }
      d.children.push_back(
          {op == "substitution" ? Operation::kSubstitution : Operation::kAdjunction,
           GornAddress::parse(k.at("address").get<std::string>()),
           derivation_from_json(k.at("child"))});
    }
    return d;
  } catch (const json::exception& e) {
    throw LoadError(std::string("derivation: ") + e.what());
  }
}

std::vector<std::vector<const LexicalEntry*>> entry_options(
    const DerivationTree& d, const Language& lang) {
  DerivationTree copy = d;
  normalize(copy);
  std::vector<std::vector<const LexicalEntry*>> out;
  options_into(copy, lang, out);
  return out;
}

Result<Replayed> replay(const DerivationTree& d, const Language& lang,
                        const std::vector<const LexicalEntry*>& entries) {
  DerivationTree copy = d;
  normalize(copy);
  if (entries.size() != node_count(copy)) {
    throw Error("replay needs one lexical entry per derivation node");
  }
  std::size_t next = 0;
  Result<Combined> built = build(copy, lang, entries, next);
  if (!built) return built.failure();
  Result<FeatureCheckedTree> checked =
      finalize(built.value().tree, std::move(built.value().env));
  if (!checked) return checked.failure();
  return Replayed{std::move(built.value().tree), std::move(checked.value()),
                  entries};
}

Result<Replayed> replay(const DerivationTree& d, const Language& lang) {
  std::vector<const LexicalEntry*> first;
  for (const auto& opts : entry_options(d, lang)) first.push_back(opts.front());
  return replay(d, lang, first);
}

}  // namespace lextag
