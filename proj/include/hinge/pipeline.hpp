#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hinge/error.hpp"
#include "hinge/eval.hpp"
#include "hinge/generate.hpp"

namespace hinge::pipeline {

inline constexpr std::string_view kVersion = "0.1.0";

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct PipelineConfig {
  // required
  std::string seed_dict;
  std::string pairs;
  std::string refs;
  std::string out_dir;
  // optional inputs; empty means absent
  std::string ratings;
  std::string hi_vectors;
  std::string en_vectors;
  std::string score_vectors;
  std::string pos_lexicon;
  std::string stopwords;
  std::string hindi_stopwords;
  std::string translit_table;

  std::size_t ibm1_iterations = 5;
  double embed_threshold = 0.5;
  std::size_t align_min_count = 2;
  double align_min_prob = 0.3;
  std::size_t bleu_max_n = 4;
  std::size_t nist_max_n = 5;
  std::size_t pac_max_n = 3;
  generate::MethodSelection method = generate::MethodSelection::Both;
  eval::DedupMode dedup = eval::DedupMode::PerRating;
  bool per_observation = false;
  bool lowercase = false;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Throws ConfigError naming the first missing path or out-of-range knob.
void validate(const PipelineConfig& config);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a_file(const std::string& path);
std::string hex64(std::uint64_t value);

struct ScoredSet {
  std::vector<std::string> ids;
  metrics::ScoreReport report;
  std::size_t unreferenced = 0;  // hypotheses whose pair id has no reference
};

// Scores generated sentences against the references of their pair id.
// Unreferenced hypotheses are skipped.
ScoredSet score_generated(const std::vector<GeneratedSentence>& hyps, const ReferenceSet& refs,
                          const embed::VectorStore* vectors, const metrics::MetricConfig& config,
                          std::size_t threads, bool lowercase = false);

struct RunSummary {
  std::size_t pairs = 0;
  std::size_t skipped_pairs = 0;
  std::size_t seed_entries = 0;
  std::size_t align_entries = 0;
  std::size_t embed_entries = 0;
  generate::CorpusSummary generation;
  std::size_t scored = 0;
  std::size_t unreferenced = 0;
  std::optional<metrics::CorpusScore> corpus;
};

// dict -> align -> extend -> generate -> score -> evaluate. Writes
// dictionary.tsv, translation.tsv, generated.jsonl, scores.tsv, the
// evaluation tables when ratings are given, and manifest.json.
RunSummary run(const PipelineConfig& config);

}  // namespace hinge::pipeline
