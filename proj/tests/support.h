#ifndef LEXTAG_TESTS_SUPPORT_H_
#define LEXTAG_TESTS_SUPPORT_H_

// Helpers shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lextag/avm.h"
#include "lextag/lexicon.h"

namespace lextag::testing {

std::filesystem::path data_dir();
std::filesystem::path data_file(const std::string& name);
const Language& fixture(const std::string& code);

// --- Flattened reference model of ground feature structures -------------

// Path -> leaf. A leaf is an atom or "{}" for an empty structure.
using FlatFs = std::map<std::vector<std::string>, std::string>;

FlatFs flatten(const FeatureStructure& fs);

struct OracleResult {
  std::optional<FlatFs> merged;
  // Lexicographically first conflicting path when `merged` is empty.
  std::vector<std::string> clash_path;
};

// Unification computed on path sets, independent of the real unifier.
OracleResult oracle_unify(const FlatFs& a, const FlatFs& b);

// Random ground structure over a small feature/atom alphabet so random
// pairs unify often enough to be interesting.
FeatureStructure random_ground(std::mt19937& rng, int max_depth = 3);

struct PropertyReport {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;
};

// Commutativity, idempotence, monotonicity (subsumption), associativity,
// empty-structure identity and agreement with oracle_unify(), each checked
// `iterations` times.
PropertyReport run_unification_properties(std::uint32_t seed, int iterations);

// --- Sentences ----------------------------------------------------------

// Grammatical and ungrammatical fixture sentences per language.
std::vector<std::vector<std::string>> fixture_sentences(const std::string& code);

// Token sequences of 1..max_len tokens drawn from the language vocabulary;
// about half are built from a clause template so some of them parse.
std::vector<std::vector<std::string>> random_sequences(const std::string& code,
                                                       int count, int max_len,
                                                       std::mt19937& rng);

std::string join(const std::vector<std::string>& tokens);

// --- Corrupted resources --------------------------------------------------

// A fixture file with one deliberate defect and the violation kind
// validation must report for it.
struct Corruption {
  std::string name;
  std::string expected_kind;
  std::string file_name;  // name of the fixture it replaces
  nlohmann::json content;
};

std::vector<Corruption> corruptions();

// Writes `c` next to copies of the clean fixtures in a fresh directory and
// returns the paths to pass to `lextag validate`.
std::vector<std::string> stage_corruption(const Corruption& c,
                                          const std::filesystem::path& dir);

}  // namespace lextag::testing

#endif  // LEXTAG_TESTS_SUPPORT_H_
