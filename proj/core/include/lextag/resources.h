#ifndef LEXTAG_RESOURCES_H_
#define LEXTAG_RESOURCES_H_

// Grammar files: one JSON document per language.
//
//   {
//     "schema_version": 1,
//     "language": "zh",
//     "ontology": {"features": {"brittle": ["+", "-"], ...},
//                  "selectional": ["brittle", ...]},
//     "trees": [{"name": "...", "kind": "initial"|"auxiliary",
//                "root": {"cat": "S", "kind": "interior", "top": {...},
//                         "bottom": {...}, "adjoinable": true,
//                         "children": [...]}}],
//     "lexicon": [{"lemma": "...", "sense": "...", "pos": "V",
//                  "trees": [...], "semfeats": {...},
//                  "restrictions": [{"addr": "0.2.2", "fs": {...}}],
//                  "equations": [{"addr": "0.1", "slot": "top", "fs": {...}}],
//                  "forms": [{"surface": ["broke"], "syn": {...}}]}]
//   }
//
// Node kinds are interior, substitution, foot, anchor and terminal; terminal
// nodes carry "word". Node "top"/"bottom" may be a structure or a variable
// string ("?s") for whole-structure co-indexation.

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "lextag/lexicon.h"

namespace lextag {

inline constexpr int kGrammarSchemaVersion = 1;

// Throws LoadError on unreadable files, malformed JSON or schema errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

Language language_from_json(const nlohmann::json& j,
                            int max_depth = kDefaultMaxDepth);
Language load_language(const std::filesystem::path& path,
                       int max_depth = kDefaultMaxDepth);

nlohmann::json to_json(const ElementaryTree& tree);
ElementaryTree tree_from_json(const nlohmann::json& j,
                              const std::string& language,
                              int max_depth = kDefaultMaxDepth);

}  // namespace lextag

#endif  // LEXTAG_RESOURCES_H_
