#include "cspp/bench/concordance.hpp"

#include <array>
#include <cctype>
#include <filesystem>
#include <sstream>

#include "cspp/terminals/sequential.hpp"
#include "params.hpp"

namespace cspp::bench {

namespace {

struct ConcordanceClass {
  std::size_t N = 0;
  std::shared_ptr<const Corpus> corpus;
  std::size_t next = 1;
};

std::string join_words(const Corpus& c, std::size_t at, std::size_t n) {
  std::string s = c.words[at];
  for (std::size_t k = 1; k < n; ++k) s += ' ' + c.words[at + k];
  return s;
}

ConcordanceResult merge(const std::vector<std::shared_ptr<CollectOutcome>>& slots) {
  ConcordanceResult merged;
  for (const auto& slot : slots) {
    auto& r = slot->result.as<ConcordanceResult>();
    merged.min_seq_len = r.min_seq_len;
    merged.out_dir = r.out_dir;
    for (auto& [n, m] : r.entries) merged.entries[n] = m;
  }
  return merged;
}

}  // namespace

std::string clean_word(const std::string& raw) {
  std::size_t b = 0, e = raw.size();
  auto alnum = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0; };
  while (b < e && !alnum(raw[b])) ++b;
  while (e > b && !alnum(raw[e - 1])) --e;
  std::string w = raw.substr(b, e - b);
  for (auto& ch : w) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return w;
}

std::int64_t word_value(const std::string& word) {
  std::int64_t v = 0;
  for (unsigned char ch : word) v += ch;
  return v;
}

Corpus make_corpus(const std::string& text) {
  Corpus c;
  std::istringstream in(text);
  std::string raw;
  while (in >> raw) {
    auto w = clean_word(raw);
    if (w.empty()) continue;
    c.values.push_back(word_value(w));
    c.words.push_back(std::move(w));
  }
  return c;
}

std::string concordance_text(const WordsMap& entries) {
  std::string out;
  for (const auto& [words, locs] : entries) {
    out += words;
    out += '\t';
    out += std::to_string(locs.size());
    out += '\t';
    for (std::size_t i = 0; i < locs.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(locs[i]);
    }
    out += '\n';
  }
  return out;
}

EmitDetails concordance_data() {
  auto d = emit_details<ConcordanceClass, ConcordanceData>(
      [](ConcordanceClass& c, const Params& p) {
        auto N = detail::param<std::size_t>(p, 0);
        if (!N || p.size() < 2) return StepResult::error(detail::bad_params, "concordance init needs [N, file]");
        std::string text;
        if (p[1].is_object() && p[1].contains("text")) {
          text = p[1]["text"].get<std::string>();
        } else {
          try {
            text = read_text(p[1].get<std::string>());
          } catch (const std::exception& e) {
            return StepResult::error(detail::io_failure, e.what());
          }
        }
        c.N = *N;
        c.corpus = std::make_shared<const Corpus>(make_corpus(text));
        return StepResult::completed_ok();
      },
      Params::array(),
      [](ConcordanceClass& c, ConcordanceData& d, const Params&) {
        if (c.next > c.N) return StepResult::normal_termination();
        d.n = c.next++;
        d.corpus = c.corpus;
        return StepResult::normal_continuation();
      },
      Params::array());
  d.tag = [](const Payload& p) { return "n-" + std::to_string(p.as<ConcordanceData>().n); };
  return d;
}

WorkerFn value_list() {
  return [](Payload& item, const Params&, Payload*) {
    auto& d = item.as<ConcordanceData>();
    const auto& v = d.corpus->values;
    d.value_list.clear();
    if (d.n == 0 || v.size() < d.n) return StepResult::completed_ok();
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < d.n; ++k) sum += v[k];
    d.value_list.push_back(sum);
    for (std::size_t i = 1; i + d.n <= v.size(); ++i) {
      sum += v[i + d.n - 1] - v[i - 1];
      d.value_list.push_back(sum);
    }
    return StepResult::completed_ok();
  };
}

WorkerFn indices_map() {
  return [](Payload& item, const Params&, Payload*) {
    auto& d = item.as<ConcordanceData>();
    d.indices_map.clear();
    for (std::size_t i = 0; i < d.value_list.size(); ++i) d.indices_map[d.value_list[i]].push_back(i);
    return StepResult::completed_ok();
  };
}

WorkerFn words_map() {
  return [](Payload& item, const Params&, Payload*) {
    auto& d = item.as<ConcordanceData>();
    d.words_map.clear();
    // Equal sums need not be equal strings, so group each value's
    // positions by the words actually found there.
    for (const auto& [value, positions] : d.indices_map) {
      for (auto at : positions) d.words_map[join_words(*d.corpus, at, d.n)].push_back(at);
    }
    return StepResult::completed_ok();
  };
}

ResultDetails concordance_results() {
  return result_details<ConcordanceResult, ConcordanceData>(
      [](ConcordanceResult& r, const Params& p) {
        r.min_seq_len = detail::param<std::size_t>(p, 0).value_or(2);
        r.out_dir = detail::param<std::string>(p, 1).value_or("");
        return StepResult::completed_ok();
      },
      Params::array({2}),
      [](ConcordanceResult& r, ConcordanceData& d) {
        auto& out = r.entries[d.n];
        for (auto& [words, locs] : d.words_map)
          if (locs.size() >= r.min_seq_len) out.emplace(words, std::move(locs));
        return StepResult::completed_ok();
      },
      [](ConcordanceResult& r, const Params&) {
        if (r.out_dir.empty()) return StepResult::completed_ok();
        try {
          write_concordance(r, r.out_dir);
        } catch (const std::exception& e) {
          return StepResult::error(detail::io_failure, e.what());
        }
        return StepResult::completed_ok();
      });
}

void register_concordance(FunctionRegistry& registry) {
  registry.add("conc.data", concordance_data());
  registry.add("conc.valueList", value_list());
  registry.add("conc.indicesMap", indices_map());
  registry.add("conc.wordsMap", words_map());
  registry.add("conc.results", concordance_results());
}

namespace {

Params source_param(const ConcordanceConfig& c) {
  if (!c.text.empty()) return Params{{"text", c.text}};
  return c.file;
}

}  // namespace

NetworkSpec concordance_spec(const ConcordanceConfig& config) {
  const Params init = {config.N, source_param(config)};
  const Params ops = {"conc.valueList", "conc.indicesMap", "conc.wordsMap"};
  const Params result_init = {config.min_seq_len, config.out_dir};
  const auto w = config.width;
  NetworkSpec spec;
  if (config.arch == ConcordanceArch::gop) {
    spec.nodes = {
        {"emit", {{"details", "conc.data"}, {"initData", init}}},
        {"spreader", {{"policy", "fanAny"}, {"destinations", w}}},
        {"composite",
         {{"type", "groupOfPipelineCollects"}, {"groups", w}, {"stages", 3}, {"stageOps", ops},
          {"results", "conc.results"}, {"resultInitData", result_init}}},
    };
  } else {
    spec.nodes = {
        {"composite",
         {{"type", "taskParallelOfGroupCollects"}, {"emit", "conc.data"}, {"initData", init}, {"workers", w},
          {"stages", 3}, {"stageOps", ops}, {"results", "conc.results"}, {"resultInitData", result_init}}},
    };
  }
  return spec;
}

ConcordanceResult concordance_run(const ConcordanceConfig& config, const BuildOptions& options) {
  auto report = run_spec(concordance_spec(config), options);
  return merge(report.results);
}

ConcordanceResult concordance_sequential(const ConcordanceConfig& config) {
  auto emit = concordance_data();
  emit.init_data = {config.N, source_param(config)};
  auto result = concordance_results();
  result.init_data = {config.min_seq_len, config.out_dir};
  auto outcome = run_sequential(emit, {value_list(), indices_map(), words_map()}, result);
  return std::move(outcome.result.as<ConcordanceResult>());
}

void write_concordance(const ConcordanceResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [n, entries] : result.entries)
    write_text((std::filesystem::path(dir) / ("concordance_" + std::to_string(n) + ".txt")).string(),
               concordance_text(entries));
}

std::string synthetic_text(std::size_t bytes, std::uint64_t seed) {
  static const std::array<const char*, 48> vocabulary = {
      "the",   "and",    "of",     "to",    "in",     "that",  "he",     "shall", "unto",   "for",
      "i",     "his",    "a",      "lord",  "they",   "be",    "is",     "him",   "not",    "them",
      "it",    "with",   "all",    "thou",  "thy",    "was",   "god",    "which", "my",     "me",
      "said",  "but",    "ye",     "their", "have",   "will",  "thee",   "from",  "as",     "are",
      "when",  "this",   "out",    "were",  "upon",   "man",   "by",     "house"};
  static const std::array<const char*, 6> punctuation = {"", "", "", ",", ";", "."};
  SplitMix64 rng(seed);
  std::string text;
  std::size_t line = 0;
  while (text.size() < bytes) {
    // Zipf-like: low indices are far more frequent.
    const double u = rng.uniform();
    const auto idx = static_cast<std::size_t>(u * u * u * vocabulary.size());
    std::string w = vocabulary[idx];
    if (rng.next() % 11 == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    text += w;
    text += punctuation[rng.next() % punctuation.size()];
    if (++line % 12 == 0) {
      text += '\n';
    } else {
      text += ' ';
    }
  }
  return text;
}

}  // namespace cspp::bench
