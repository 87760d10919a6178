#include "hinge/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "hinge/align.hpp"
#include "hinge/embed.hpp"
#include "hinge/lexicon.hpp"
#include "hinge/translit.hpp"

namespace hinge::pipeline {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw ConfigError(std::string("missing ") + what);
  if (!fs::is_regular_file(path)) throw ConfigError(std::string(what) + " not found: " + path);
}

void optional_file(const std::string& path, const char* what) {
  if (!path.empty()) require_file(path, what);
}

std::string_view method_name(generate::MethodSelection m) {
  switch (m) {
    case generate::MethodSelection::WAC: return "wac";
    case generate::MethodSelection::PAC: return "pac";
    case generate::MethodSelection::Both: return "both";
  }
  return "both";
}

}  // namespace

void validate(const PipelineConfig& c) {
  require_file(c.seed_dict, "seed dictionary");
  require_file(c.pairs, "parallel corpus");
  require_file(c.refs, "references");
  if (c.out_dir.empty()) throw ConfigError("missing output directory");
  optional_file(c.ratings, "ratings");
  optional_file(c.hi_vectors, "Hindi vectors");
  optional_file(c.en_vectors, "English vectors");
  optional_file(c.score_vectors, "scoring vectors");
  optional_file(c.pos_lexicon, "POS lexicon");
  optional_file(c.stopwords, "stopword list");
  optional_file(c.hindi_stopwords, "Hindi stopword list");
  optional_file(c.translit_table, "transliteration table");
  if (c.hi_vectors.empty() != c.en_vectors.empty()) {
    throw ConfigError("Hindi and English vectors must be given together");
  }
  if (c.ibm1_iterations < 1 || c.ibm1_iterations > 1000) throw ConfigError("ibm1 iterations must be in [1, 1000]");
  if (!(c.embed_threshold > 0.0 && c.embed_threshold <= 1.0)) throw ConfigError("embed threshold must be in (0, 1]");
  if (c.align_min_count < 1) throw ConfigError("align min count must be >= 1");
  if (!(c.align_min_prob >= 0.0 && c.align_min_prob <= 1.0)) throw ConfigError("align min prob must be in [0, 1]");
  if (c.bleu_max_n < 1 || c.bleu_max_n > 9) throw ConfigError("bleu max n must be in [1, 9]");
  if (c.nist_max_n < 1 || c.nist_max_n > 9) throw ConfigError("nist max n must be in [1, 9]");
  if (c.pac_max_n < 1 || c.pac_max_n > 3) throw ConfigError("pac max n must be 1, 2 or 3");
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return fnv1a(bytes);
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

ScoredSet score_generated(const std::vector<GeneratedSentence>& hyps, const ReferenceSet& refs,
                          const embed::VectorStore* vectors, const metrics::MetricConfig& config,
                          std::size_t threads, bool lowercase) {
  ScoredSet set;
  std::vector<metrics::Tokens> hyp_tokens;
  std::vector<std::vector<metrics::Tokens>> ref_tokens;
  for (const auto& h : hyps) {
    const auto it = refs.refs.find(h.pair_id);
    if (it == refs.refs.end()) {
      ++set.unreferenced;
      continue;
    }
    set.ids.push_back(h.sentence_id());
    hyp_tokens.push_back(metrics::surfaces(h.tokens, lowercase));
    auto& rs = ref_tokens.emplace_back();
    for (const auto& r : it->second) rs.push_back(metrics::surfaces(r.tokens, lowercase));
  }
  set.report = metrics::score_corpus(hyp_tokens, ref_tokens, vectors, config, threads);
  return set;
}

RunSummary run(const PipelineConfig& c) {
  validate(c);
  fs::create_directories(c.out_dir);
  RunSummary summary;

  // dict
  auto seed = lexicon::load_seed(c.seed_dict);
  for (const auto& p : seed.problems) {
    throw ParseError(c.seed_dict, p.line, p.message);
  }
  summary.seed_entries = seed.dictionary.size();

  auto loaded = load_parallel(c.pairs, guess_format(c.pairs));
  summary.pairs = loaded.items.size();
  summary.skipped_pairs = loaded.skipped();
  const auto& pairs = loaded.items;
  if (pairs.empty()) throw Error("no usable sentence pairs in " + c.pairs);

  // align
  const auto table = align::train_ibm1(pairs, c.ibm1_iterations, c.threads);
  table.save(c.out_dir + "/translation.tsv");
  std::vector<align::AlignmentLinks> links;
  links.reserve(pairs.size());
  for (const auto& p : pairs) links.push_back(align::align_pair(p, table));
  {
    std::ofstream out(c.out_dir + "/links.txt", std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + c.out_dir + "/links.txt");
    for (const auto& l : links) out << align::format_links(l) << '\n';
  }
  const auto extracted = align::extract_pairs(pairs, links, table, c.align_min_count, c.align_min_prob);

  // extend
  auto dict = lexicon::extend_with_alignments(seed.dictionary, extracted);
  if (!c.hi_vectors.empty()) {
    const auto hi = embed::VectorStore::load(c.hi_vectors);
    const auto en = embed::VectorStore::load(c.en_vectors);
    const auto mapping = embed::learn_mapping(hi, en, lexicon::mapping_seed(seed.dictionary));
    mapping.save(c.out_dir + "/mapping.bin");
    std::unordered_set<std::string> hindi_stop;
    if (!c.hindi_stopwords.empty()) hindi_stop = lexicon::load_word_list(c.hindi_stopwords);
    dict = lexicon::extend_with_embeddings(dict, pairs, hi, en, mapping, c.embed_threshold, hindi_stop);
  }
  summary.align_entries = dict.count(lexicon::Provenance::Align);
  summary.embed_entries = dict.count(lexicon::Provenance::Embed);
  dict.save(c.out_dir + "/dictionary.tsv");

  // generate
  generate::GenerationConfig gen;
  if (!c.pos_lexicon.empty()) gen.pos_lexicon = generate::load_pos_lexicon(c.pos_lexicon);
  gen.pac_max_n = c.pac_max_n;
  keyphrase::Stopwords stopwords;
  if (!c.stopwords.empty()) {
    stopwords = lexicon::load_word_list(c.stopwords);
    gen.stopwords = &stopwords;
  }
  const auto translit =
      c.translit_table.empty() ? translit::TranslitTable::builtin() : translit::TranslitTable::load(c.translit_table);
  auto outcome = generate::generate_corpus(pairs, c.method, dict, gen, translit, c.threads);
  summary.generation = outcome.summary;
  save_generated(c.out_dir + "/generated.jsonl", outcome.sentences);

  // score
  const auto refs = load_references(c.refs);
  std::optional<embed::VectorStore> score_vectors;
  if (!c.score_vectors.empty()) score_vectors = embed::VectorStore::load(c.score_vectors);
  metrics::MetricConfig mc;
  mc.bleu_max_n = c.bleu_max_n;
  mc.nist_max_n = c.nist_max_n;
  const auto scored =
      score_generated(outcome.sentences, refs, score_vectors ? &*score_vectors : nullptr, mc, c.threads, c.lowercase);
  metrics::save_report(c.out_dir + "/scores.tsv", scored.ids, scored.report);
  summary.scored = scored.ids.size();
  summary.unreferenced = scored.unreferenced;
  if (!scored.ids.empty()) summary.corpus = scored.report.corpus;

  // evaluate
  if (!c.ratings.empty()) {
    auto ratings = load_ratings(c.ratings);
    for (const auto& p : ratings.problems) throw ParseError(c.ratings, p.line, p.message);
    std::map<std::string, metrics::SentenceScore> by_id;
    for (std::size_t k = 0; k < scored.ids.size(); ++k) by_id.emplace(scored.ids[k], scored.report.sentences[k]);
    const auto report = eval::evaluate(by_id, ratings.items, {c.dedup, c.per_observation});
    eval::write_reports(c.out_dir, report);
  }

  // manifest
  Json m;
  m["tool"] = "hinge";
  m["version"] = kVersion;
  Json inputs = Json::object();
  auto add_input = [&](const char* name, const std::string& path) {
    if (path.empty()) return;
    inputs[name] = {{"path", path}, {"fnv1a64", hex64(fnv1a_file(path))}};
  };
  add_input("seed_dict", c.seed_dict);
  add_input("pairs", c.pairs);
  add_input("refs", c.refs);
  add_input("ratings", c.ratings);
  add_input("hi_vectors", c.hi_vectors);
  add_input("en_vectors", c.en_vectors);
  add_input("score_vectors", c.score_vectors);
  add_input("pos_lexicon", c.pos_lexicon);
  add_input("stopwords", c.stopwords);
  add_input("hindi_stopwords", c.hindi_stopwords);
  add_input("translit_table", c.translit_table);
  m["inputs"] = inputs;
  m["config"] = {{"ibm1_iterations", c.ibm1_iterations},
                 {"embed_threshold", c.embed_threshold},
                 {"align_min_count", c.align_min_count},
                 {"align_min_prob", c.align_min_prob},
                 {"bleu_max_n", c.bleu_max_n},
                 {"nist_max_n", c.nist_max_n},
                 {"pac_max_n", c.pac_max_n},
                 {"method", method_name(c.method)},
                 {"dedup_mode", eval::to_string(c.dedup)},
                 {"per_observation", c.per_observation},
                 {"lowercase", c.lowercase},
                 {"seed", c.seed}};
  m["summary"] = {{"pairs", summary.pairs},
                  {"skipped_pairs", summary.skipped_pairs},
                  {"seed_entries", summary.seed_entries},
                  {"align_entries", summary.align_entries},
                  {"embed_entries", summary.embed_entries},
                  {"outputs", summary.generation.outputs},
                  {"zero_replacement", summary.generation.zero_replacement},
                  {"replacement_rate", summary.generation.replacement_rate()},
                  {"unmapped_characters", summary.generation.unmapped},
                  {"scored", summary.scored},
                  {"unreferenced", summary.unreferenced}};
  Json outputs = Json::object();
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(c.out_dir)) {
    if (entry.is_regular_file() && entry.path().filename() != "manifest.json") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  for (const auto& n : names) outputs[n] = hex64(fnv1a_file(c.out_dir + "/" + n));
  m["outputs"] = outputs;
  std::ofstream out(c.out_dir + "/manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + c.out_dir + "/manifest.json");
  out << m.dump(2) << '\n';
  return summary;
}

}  // namespace hinge::pipeline
