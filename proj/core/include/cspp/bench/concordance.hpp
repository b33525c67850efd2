#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cspp/bench/common.hpp"

namespace cspp::bench {

enum class ConcordanceArch { gop, pog };

struct ConcordanceConfig {
  std::string file;        // source text; ignored when `text` is set
  std::string text;        // inline source text
  std::size_t N = 4;       // longest word string
  std::size_t min_seq_len = 2;
  ConcordanceArch arch = ConcordanceArch::gop;
  std::size_t width = 2;   // groups (GoP) or workers per group (PoG)
  std::string out_dir;     // empty: no files written
};

/// Lower-cased with leading and trailing non-alphanumerics removed.
std::string clean_word(const std::string& raw);

/// Sum of the byte codes of a word.
std::int64_t word_value(const std::string& word);

struct Corpus {
  std::vector<std::string> words;
  std::vector<std::int64_t> values;
};

Corpus make_corpus(const std::string& text);

/// word string -> ascending word positions
using WordsMap = std::map<std::string, std::vector<std::size_t>>;

struct ConcordanceData {
  std::size_t n = 0;
  std::shared_ptr<const Corpus> corpus;
  std::vector<std::int64_t> value_list;
  std::map<std::int64_t, std::vector<std::size_t>> indices_map;
  WordsMap words_map;
};

/// n -> entries occurring at least min_seq_len times
struct ConcordanceResult {
  std::size_t min_seq_len = 2;
  std::string out_dir;
  std::map<std::size_t, WordsMap> entries;
};

/// One line per entry, "string<TAB>count<TAB>loc,loc,...", sorted.
std::string concordance_text(const WordsMap& entries);

// init [N, file] or [N, {"text": ...}]
EmitDetails concordance_data();
WorkerFn value_list();
WorkerFn indices_map();
WorkerFn words_map();
// init [minSeqLen, outDir]
ResultDetails concordance_results();

void register_concordance(FunctionRegistry& registry);

NetworkSpec concordance_spec(const ConcordanceConfig& config);

/// Merged output of every collect, keyed by n.
ConcordanceResult concordance_run(const ConcordanceConfig& config, const BuildOptions& options = {});
ConcordanceResult concordance_sequential(const ConcordanceConfig& config);

/// Writes n-word files as "<dir>/concordance_<n>.txt".
void write_concordance(const ConcordanceResult& result, const std::string& dir);

/// Deterministic English-like text of roughly `bytes` bytes.
std::string synthetic_text(std::size_t bytes, std::uint64_t seed);

}  // namespace cspp::bench
