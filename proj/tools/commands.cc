#include "commands.h"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lextag/errors.h"
#include "lextag/generator.h"
#include "lextag/lexicon.h"
#include "lextag/parser.h"
#include "lextag/resources.h"
#include "lextag/transfer.h"

#ifndef LEXTAG_DATA_DIR
#define LEXTAG_DATA_DIR "data"
#endif

namespace lextag::cli {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path default_data_dir() {
  if (const char* env = std::getenv("LEXTAG_DATA")) return env;
  return LEXTAG_DATA_DIR;
}

namespace {

std::size_t max_expansion() {
  if (const char* env = std::getenv("LEXTAG_MAX_EXPANSION")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw Error(std::string("LEXTAG_MAX_EXPANSION is not a number: ") + env);
    }
  }
  return kDefaultMaxExpansion;
}

bool looks_like_path(const std::string& which) {
  return which.find('/') != std::string::npos || which.ends_with(".json") ||
         fs::exists(which);
}

// A grammar named by path or by language code. A code must match the
// language the file declares.
Language load_grammar(const std::string& which, const fs::path& data_dir) {
  if (looks_like_path(which)) return load_language(which);
  Language lang = load_language(data_dir / (which + ".json"));
  if (lang.code() != which) {
    throw LoadError("grammar for '" + which + "' declares language '" +
                    lang.code() + "'");
  }
  return lang;
}

TransferTable load_table(const std::string& which, const Language& src,
                         const Language& tgt, const fs::path& data_dir) {
  fs::path path = which.empty()
                      ? data_dir / (src.code() + "-" + tgt.code() + ".json")
                      : fs::path(which);
  TransferTable table = load_transfer(path);
  if (table.source_lang() != src.code() || table.target_lang() != tgt.code()) {
    throw TransferError("transfer table '" + path.string() + "' is " +
                        table.source_lang() + "->" + table.target_lang() +
                        " but the grammars are " + src.code() + "->" + tgt.code());
  }
  return table;
}

void report_violations(const std::string& file, const std::vector<Violation>& vs,
                       std::ostream& out) {
  if (vs.empty()) {
    out << file << ": ok\n";
    return;
  }
  for (const Violation& v : vs) {
    out << file << ": " << v.kind << " at " << v.where << ": " << v.message << '\n';
  }
}

std::string bracket_list(const std::vector<std::string>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += items[i];
  }
  return s + "]";
}

void print_table(const Translation& t, std::ostream& out) {
  out << "candidates: " << t.candidates.size() << '\n';
  for (const CandidateResult& c : t.candidates) {
    if (c.survived) {
      out << "  survived  " << bracket_list(c.lemmas) << "  surface=\""
          << c.surface_string() << "\"\n";
      continue;
    }
    const CandidateFailure& f = *c.failure;
    out << "  failed    " << bracket_list(c.lemmas) << "  lemma=" << f.lemma
        << "  node=" << f.address.str() << "  path=" << f.clash.path_string()
        << "  atoms=" << f.clash.left << "|" << f.clash.right << '\n';
  }
}

int report_error(const std::exception& e, std::ostream& err) {
  if (auto* u = dynamic_cast<const UnknownTokenError*>(&e)) {
    err << "error: unknown token '" << u->token() << "' at position "
        << u->position() << '\n';
  } else {
    err << "error: " << e.what() << '\n';
  }
  return kExitFault;
}

}  // namespace

int cmd_validate(const std::vector<std::string>& files, std::ostream& out,
                 std::ostream& err) {
  if (files.empty()) {
    err << "error: validate needs at least one file\n";
    return kExitFault;
  }
  bool clean = true;
  std::map<std::string, std::shared_ptr<const Language>> grammars;
  std::vector<std::pair<std::string, json>> tables;

  for (const std::string& file : files) {
    try {
      json j = read_json_file(file);
      if (j.is_object() && j.contains("source_lang")) {
        tables.emplace_back(file, std::move(j));
        continue;
      }
      auto lang = std::make_shared<const Language>(language_from_json(j));
      auto vs = validate(*lang);
      report_violations(file, vs, out);
      clean = clean && vs.empty();
      grammars[lang->code()] = lang;
    } catch (const std::exception& e) {
      err << file << ": error: " << e.what() << '\n';
      clean = false;
    }
  }

  for (const auto& [file, j] : tables) {
    try {
      TransferTable table = transfer_from_json(j);
      auto grammar_for = [&](const std::string& code) {
        auto it = grammars.find(code);
        if (it != grammars.end()) return it->second;
        fs::path sibling = fs::path(file).parent_path() / (code + ".json");
        auto lang = std::make_shared<const Language>(load_language(sibling));
        grammars[code] = lang;
        return lang;
      };
      auto src = grammar_for(table.source_lang());
      auto tgt = grammar_for(table.target_lang());
      auto vs = validate_transfer(table, *src, *tgt);
      report_violations(file, vs, out);
      clean = clean && vs.empty();
    } catch (const std::exception& e) {
      err << file << ": error: " << e.what() << '\n';
      clean = false;
    }
  }
  return clean ? kExitOk : kExitFault;
}

int cmd_parse(const ParseArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Language lang = load_grammar(args.grammar, args.data_dir);
    ParseOptions options;
    options.defer_unification = args.defer_unification;
    std::vector<std::string> tokens = tokenize(args.sentence);
    std::vector<DerivationTree> ds = parse(tokens, lang, options);
    if (ds.empty()) {
      err << "no parse\n";
      return kExitNoResult;
    }
    if (args.json) {
      json j = json::array();
      for (const auto& d : ds) {
        json entry = {{"derivation", to_json(d)}};
        if (args.show == "tree") {
          entry["tree"] = bracketed(replay(d, lang).value().checked, false);
        }
        j.push_back(std::move(entry));
      }
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
      out << "derivation " << (i + 1) << "/" << ds.size() << '\n';
      if (args.show == "tree") {
        out << bracketed(replay(ds[i], lang).value().checked, false) << '\n';
      } else {
        out << to_text(ds[i]);
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

int cmd_translate(const TranslateArgs& args, std::ostream& out,
                  std::ostream& err) {
  try {
    Language src = load_grammar(args.src, args.data_dir);
    Language tgt = load_grammar(args.tgt, args.data_dir);
    TransferTable table = load_table(args.transfer, src, tgt, args.data_dir);
    TranslateOptions options;
    options.max_expansion = max_expansion();
    Translation t = translate(args.sentence, src, tgt, table, options);
    std::vector<CandidateResult> ranked = rank(t.survivors);
    if (args.first && ranked.size() > 1) ranked.resize(1);

    if (args.json) {
      json j = to_json(t);
      if (args.first && j["survivors"].size() > 1) {
        j["survivors"] = json::array({j["survivors"][0]});
      }
      out << j.dump(2) << '\n';
    } else {
      if (args.trace || t.status == TranslationStatus::kNoCandidate) {
        print_table(t, out);
      }
      for (const CandidateResult& c : ranked) out << c.surface_string() << '\n';
    }
    switch (t.status) {
      case TranslationStatus::kOk:
        return kExitOk;
      case TranslationStatus::kNoParse:
        err << "no parse for '" << args.sentence << "'\n";
        return kExitNoResult;
      case TranslationStatus::kNoCandidate:
        err << "no candidate survived target-side unification\n";
        return kExitNoCandidate;
    }
    return kExitFault;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

namespace {

struct Pipeline {
  std::unique_ptr<Language> src;
  std::unique_ptr<Language> tgt;
  std::unique_ptr<TransferTable> table;
};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

CorpusReport run_corpus(const CorpusArgs& args) {
  std::ifstream in(args.tsv);
  if (!in) throw LoadError("cannot read '" + args.tsv + "'");

  CorpusReport report;
  std::map<std::string, Pipeline> pipelines;
  auto pipeline = [&](const std::string& src, const std::string& tgt,
                      const std::string& transfer) -> Pipeline& {
    std::string key = src + "\n" + tgt + "\n" + transfer;
    auto it = pipelines.find(key);
    if (it != pipelines.end()) return it->second;
    Pipeline p;
    p.src = std::make_unique<Language>(load_grammar(src, args.data_dir));
    p.tgt = std::make_unique<Language>(load_grammar(tgt, args.data_dir));
    p.table = std::make_unique<TransferTable>(
        load_table(transfer, *p.src, *p.tgt, args.data_dir));
    return pipelines.emplace(key, std::move(p)).first->second;
  };

  const std::size_t cap = max_expansion();
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    ++report.total;
    std::vector<std::string> cols = split_tabs(line);
    CorpusMismatch m{number, cols[0], cols.size() > 1 ? cols[1] : "", "", ""};
    if (cols.size() < 2 || cols.size() > 3 || cols[0].empty()) {
      m.reason = "malformed line";
      report.mismatches.push_back(std::move(m));
      continue;
    }
    std::string src = args.src, tgt = args.tgt, transfer = args.transfer;
    if (cols.size() == 3) {
      std::size_t dash = cols[2].find('-');
      if (dash == std::string::npos) {
        m.reason = "malformed language pair '" + cols[2] + "'";
        report.mismatches.push_back(std::move(m));
        continue;
      }
      src = cols[2].substr(0, dash);
      tgt = cols[2].substr(dash + 1);
      transfer.clear();
    }
    if (src.empty() || tgt.empty()) {
      m.reason = "no language pair";
      report.mismatches.push_back(std::move(m));
      continue;
    }
    try {
      Pipeline& p = pipeline(src, tgt, transfer);
      Translation t = translate(cols[0], *p.src, *p.tgt, *p.table, {cap});
      if (t.status == TranslationStatus::kNoParse) {
        ++report.no_parse;
        continue;
      }
      if (t.status == TranslationStatus::kNoCandidate) {
        ++report.no_candidate;
        continue;
      }
      m.got = rank(t.survivors).front().surface_string();
      if (m.got == m.expected) {
        ++report.exact;
      } else {
        m.reason = "wrong output";
        report.mismatches.push_back(std::move(m));
      }
    } catch (const UnknownTokenError&) {
      ++report.no_parse;
    } catch (const EmptyInputError&) {
      ++report.no_parse;
    } catch (const std::exception& e) {
      m.reason = e.what();
      report.mismatches.push_back(std::move(m));
    }
  }
  return report;
}

int cmd_corpus(const CorpusArgs& args, std::ostream& out, std::ostream& err) {
  CorpusReport r;
  try {
    r = run_corpus(args);
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
  if (args.json) {
    json j;
    j["total"] = r.total;
    j["exact"] = r.exact;
    j["no_parse"] = r.no_parse;
    j["no_candidate"] = r.no_candidate;
    j["mismatches"] = json::array();
    for (const auto& m : r.mismatches) {
      j["mismatches"].push_back({{"line", m.line},
                                 {"source", m.source},
                                 {"expected", m.expected},
                                 {"got", m.got},
                                 {"reason", m.reason}});
    }
    out << j.dump(2) << '\n';
  } else {
    out << "total: " << r.total << '\n'
        << "exact: " << r.exact << '\n'
        << "no-parse: " << r.no_parse << '\n'
        << "no-candidate: " << r.no_candidate << '\n'
        << "mismatches: " << r.mismatches.size() << '\n';
    for (const auto& m : r.mismatches) {
      out << "  line " << m.line << ": " << m.reason << ": \"" << m.source
          << "\" expected \"" << m.expected << "\" got \"" << m.got << "\"\n";
    }
  }
  return r.exact == r.total ? kExitOk : kExitNoResult;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lextag: lexicalized TAG transfer and lexical selection"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string data_dir = default_data_dir().string();
  app.add_option("--data-dir", data_dir,
                 "Directory of <lang>.json grammars and <src>-<tgt>.json tables");

  std::vector<std::string> files;
  auto* validate_cmd = app.add_subcommand("validate", "Check grammars and transfer tables");
  validate_cmd->add_option("files", files, "Grammar or transfer JSON files")->required();

  ParseArgs parse_args;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a sentence");
  parse_cmd->add_option("--grammar,-g", parse_args.grammar, "Grammar file or language code")
      ->required();
  parse_cmd->add_option("--show", parse_args.show, "derivation or tree")
      ->check(CLI::IsMember({"derivation", "tree"}));
  parse_cmd->add_flag("--defer-unification", parse_args.defer_unification,
                      "Unify after recognition instead of during it");
  parse_cmd->add_flag("--json", parse_args.json, "JSON output");
  parse_cmd->add_option("sentence", parse_args.sentence)->required();

  TranslateArgs tr;
  auto* translate_cmd = app.add_subcommand("translate", "Translate a sentence");
  translate_cmd->add_option("--src", tr.src, "Source grammar file or language code")->required();
  translate_cmd->add_option("--tgt", tr.tgt, "Target grammar file or language code")->required();
  translate_cmd->add_option("--transfer", tr.transfer, "Transfer table file");
  auto* all = translate_cmd->add_flag("--all", "Print every survivor (default)");
  translate_cmd->add_flag("--first", tr.first, "Print only the best survivor")->excludes(all);
  translate_cmd->add_flag("--trace", tr.trace, "Print every candidate and its failure");
  translate_cmd->add_flag("--json", tr.json, "JSON output");
  translate_cmd->add_option("sentence", tr.sentence)->required();

  CorpusArgs corpus;
  auto* corpus_cmd = app.add_subcommand("corpus", "Run a TSV corpus of expected translations");
  corpus_cmd->add_option("--tsv", corpus.tsv, "source<TAB>expected[<TAB>src-tgt] per line")
      ->required();
  corpus_cmd->add_option("--src", corpus.src, "Default source grammar");
  corpus_cmd->add_option("--tgt", corpus.tgt, "Default target grammar");
  corpus_cmd->add_option("--transfer", corpus.transfer, "Default transfer table");
  corpus_cmd->add_flag("--json", corpus.json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFault;
  }

  if (validate_cmd->parsed()) return cmd_validate(files, out, err);
  if (parse_cmd->parsed()) {
    parse_args.data_dir = data_dir;
    return cmd_parse(parse_args, out, err);
  }
  if (translate_cmd->parsed()) {
    tr.data_dir = data_dir;
    return cmd_translate(tr, out, err);
  }
  corpus.data_dir = data_dir;
  return cmd_corpus(corpus, out, err);
}

}  // namespace lextag::cli
