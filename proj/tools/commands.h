#ifndef LEXTAG_TOOLS_COMMANDS_H_
#define LEXTAG_TOOLS_COMMANDS_H_

// Subcommands of the lextag binary. They live in a library so tests can run
// them in-process against string streams.

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace lextag::cli {

// Exit codes. Each outcome class maps to exactly one code.
enum ExitCode : int {
  kExitOk = 0,
  kExitNoResult = 1,     // no parse / corpus mismatch
  kExitNoCandidate = 2,  // every target candidate failed
  kExitFault = 3,        // bad input, invalid resources, usage errors
};

// Directory holding <lang>.json grammars and <src>-<tgt>.json tables.
// LEXTAG_DATA overrides the compiled-in default.
std::filesystem::path default_data_dir();

int cmd_validate(const std::vector<std::string>& files, std::ostream& out,
                 std::ostream& err);

struct ParseArgs {
  std::string grammar;
  std::string show = "derivation";  // or "tree"
  bool defer_unification = false;
  bool json = false;
  std::string sentence;
  std::filesystem::path data_dir = default_data_dir();
};

int cmd_parse(const ParseArgs& args, std::ostream& out, std::ostream& err);

struct TranslateArgs {
  // Grammar file path or language code resolved in `data_dir`.
  std::string src;
  std::string tgt;
  // Empty: <data_dir>/<src>-<tgt>.json.
  std::string transfer;
  bool first = false;
  bool trace = false;
  bool json = false;
  std::string sentence;
  std::filesystem::path data_dir = default_data_dir();
};

int cmd_translate(const TranslateArgs& args, std::ostream& out,
                  std::ostream& err);

struct CorpusArgs {
  std::string tsv;
  // Used for records without a third "src-tgt" column.
  std::string src;
  std::string tgt;
  std::string transfer;
  bool json = false;
  std::filesystem::path data_dir = default_data_dir();
};

struct CorpusMismatch {
  std::size_t line = 0;
  std::string source;
  std::string expected;
  std::string got;
  std::string reason;
};

struct CorpusReport {
  std::size_t total = 0;
  std::size_t exact = 0;
  std::size_t no_parse = 0;
  std::size_t no_candidate = 0;
  std::vector<CorpusMismatch> mismatches;
};

// Runs every record; throws only if the TSV itself cannot be read.
CorpusReport run_corpus(const CorpusArgs& args);

int cmd_corpus(const CorpusArgs& args, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lextag::cli

#endif  // LEXTAG_TOOLS_COMMANDS_H_
