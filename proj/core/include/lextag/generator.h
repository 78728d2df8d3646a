#ifndef LEXTAG_GENERATOR_H_
#define LEXTAG_GENERATOR_H_

// Target-side filtering: every expanded target derivation is replayed
// through the target grammar, and the ones whose features unify survive.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lextag/avm.h"
#include "lextag/derivation.h"
#include "lextag/lexicon.h"
#include "lextag/transfer.h"

namespace lextag {

// First clash met while realizing a candidate.
struct CandidateFailure {
  // Lemma whose constraint was violated (the imposing side).
  std::string lemma;
  GornAddress address;
  Clash clash;
  // The pair handed to the failing unification, fully resolved. Calling
  // unify_values(left, right) on its own reproduces `clash`.
  FeatureValue left;
  FeatureValue right;
};

struct CandidateResult {
  DerivationTree derivation;
  // Chosen target lemma per derivation node, preorder.
  std::vector<std::string> lemmas;
  bool survived = false;
  std::optional<CandidateFailure> failure;
  std::vector<std::string> surface;
  // Number of restriction paths carried by the chosen entries; more paths
  // means a more specific choice.
  int specificity = 0;
  // Index of the source derivation this candidate came from.
  std::size_t source_parse = 0;

  std::string surface_string() const;
};

// Replays a lemma-only target derivation. Lemmas with several citation
// entries (senses) are tried in lexicon order; the first combination that
// unifies wins, otherwise the failure of the first combination is reported.
// Throws Error if a lemma has no entry selecting its tree.
CandidateResult realize(const DerivationTree& derivation, const Language& lang);

enum class TranslationStatus { kOk, kNoParse, kNoCandidate };

const char* to_string(TranslationStatus status);

struct Translation {
  std::string source;
  std::vector<std::string> tokens;
  TranslationStatus status = TranslationStatus::kOk;
  std::vector<DerivationTree> parses;
  // Expansion order: source parse, then candidate product order.
  std::vector<CandidateResult> candidates;
  // Survivors in candidate order, one per distinct surface.
  std::vector<CandidateResult> survivors;
};

struct TranslateOptions {
  std::size_t max_expansion = kDefaultMaxExpansion;
};

// tokenize -> parse -> map_derivation -> expand -> realize. Throws
// EmptyInputError, UnknownTokenError, TransferError and Error subclasses for
// faults; a missing parse or an empty survivor list is reported in `status`.
Translation translate(const std::string& sentence, const Language& source,
                      const Language& target, const TransferTable& table,
                      const TranslateOptions& options = {});

// Most specific first; ties broken by the chosen lemmas, lexicographically.
std::vector<CandidateResult> rank(std::vector<CandidateResult> survivors);

nlohmann::json to_json(const Translation& t);

}  // namespace lextag

#endif  // LEXTAG_GENERATOR_H_
