// hinge: command-line front end for Hindi-English code-mixed text generation
// and evaluation.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <thread>

#include "hinge/align.hpp"
#include "hinge/embed.hpp"
#include "hinge/eval.hpp"
#include "hinge/generate.hpp"
#include "hinge/keyphrase.hpp"
#include "hinge/lexicon.hpp"
#include "hinge/metrics.hpp"
#include "hinge/pipeline.hpp"
#include "hinge/translit.hpp"

namespace {

using namespace hinge;

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
};

void warn_problems(const std::string& path, const std::vector<Problem>& problems) {
  for (const auto& p : problems) std::cerr << "warning: " << path << ":" << p.line << ": " << p.message << '\n';
}

std::vector<ParallelPair> read_pairs(const std::string& path) {
  auto loaded = load_parallel(path, guess_format(path));
  warn_problems(path, loaded.problems);
  if (loaded.skipped()) std::cerr << "skipped " << loaded.skipped() << " record(s) in " << path << '\n';
  return std::move(loaded.items);
}

lexicon::BilingualDictionary read_dict(const std::string& path) {
  auto report = lexicon::load_seed(path);
  warn_problems(path, report.problems);
  return std::move(report.dictionary);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

std::string slurp(std::istream& in) { return std::string(std::istreambuf_iterator<char>(in), {}); }

std::string format_double(double v, const char* fmt = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

const std::map<std::string, generate::MethodSelection> kMethods{
    {"wac", generate::MethodSelection::WAC},
    {"pac", generate::MethodSelection::PAC},
    {"both", generate::MethodSelection::Both}};

const std::map<std::string, eval::DedupMode> kDedupModes{
    {"per-rating", eval::DedupMode::PerRating},
    {"mean-rounded", eval::DedupMode::MeanRounded}};

// ---------------------------------------------------------------------------

void setup_dict(CLI::App& app) {
  auto* dict = app.add_subcommand("dict", "Bilingual dictionary tools");
  dict->require_subcommand(1);

  struct BuildOpts {
    std::string seed_dict, out;
  };
  auto build = std::make_shared<BuildOpts>();
  auto* b = dict->add_subcommand("build", "Validate a seed dictionary and write it in the four-column format");
  b->add_option("--seed-dict", build->seed_dict, "english<TAB>hindi seed list")->required()->check(CLI::ExistingFile);
  b->add_option("--out", build->out, "Output dictionary TSV")->required();
  b->callback([build] {
    const auto dict = read_dict(build->seed_dict);
    dict.save(build->out);
    std::cerr << "dictionary: " << dict.size() << " entries\n";
  });

  struct ExtendOpts {
    std::string dict, pairs, table, hi_vectors, en_vectors, mapping, hindi_stopwords, out;
    std::size_t min_count = 2;
    double min_prob = 0.3;
    double threshold = 0.5;
  };
  auto ext = std::make_shared<ExtendOpts>();
  auto* e = dict->add_subcommand("extend", "Extend a dictionary from alignments and/or mapped embeddings");
  e->add_option("--dict", ext->dict, "Input dictionary TSV")->required()->check(CLI::ExistingFile);
  e->add_option("--pairs", ext->pairs, "Parallel corpus (TSV or JSONL)")->required()->check(CLI::ExistingFile);
  e->add_option("--table", ext->table, "Translation table from `align train`")->check(CLI::ExistingFile);
  e->add_option("--min-count", ext->min_count, "Minimum link count for an aligned pair")->check(CLI::PositiveNumber);
  e->add_option("--min-prob", ext->min_prob, "Minimum translation probability")->check(CLI::Range(0.0, 1.0));
  auto* hv = e->add_option("--hi-vectors", ext->hi_vectors, "Hindi word vectors")->check(CLI::ExistingFile);
  auto* ev = e->add_option("--en-vectors", ext->en_vectors, "English word vectors")->check(CLI::ExistingFile);
  hv->needs(ev);
  ev->needs(hv);
  e->add_option("--mapping", ext->mapping, "Mapping from `embed map`; learned from SEED entries when absent")
      ->needs(hv)
      ->check(CLI::ExistingFile);
  e->add_option("--embed-threshold", ext->threshold, "Minimum cosine for an embedding pair")
      ->check(CLI::Range(0.0, 1.0));
  e->add_option("--hindi-stopwords", ext->hindi_stopwords, "Hindi words never looked up")->check(CLI::ExistingFile);
  e->add_option("--out", ext->out, "Output dictionary TSV")->required();
  e->callback([ext] {
    if (ext->table.empty() && ext->hi_vectors.empty()) {
      throw CLI::ValidationError("dict extend", "needs --table and/or --hi-vectors/--en-vectors");
    }
    if (!(ext->threshold > 0.0)) throw CLI::ValidationError("--embed-threshold", "must be in (0, 1]");
    auto dict = read_dict(ext->dict);
    const auto pairs = read_pairs(ext->pairs);
    if (!ext->table.empty()) {
      const auto table = align::TranslationTable::load(ext->table);
      std::vector<align::AlignmentLinks> links;
      for (const auto& p : pairs) links.push_back(align::align_pair(p, table));
      dict = lexicon::extend_with_alignments(dict, align::extract_pairs(pairs, links, table, ext->min_count,
                                                                        ext->min_prob));
    }
    if (!ext->hi_vectors.empty()) {
      const auto hi = embed::VectorStore::load(ext->hi_vectors);
      const auto en = embed::VectorStore::load(ext->en_vectors);
      const auto mapping = ext->mapping.empty() ? embed::learn_mapping(hi, en, lexicon::mapping_seed(dict))
                                                : embed::MappingMatrix::load(ext->mapping);
      std::unordered_set<std::string> stop;
      if (!ext->hindi_stopwords.empty()) stop = lexicon::load_word_list(ext->hindi_stopwords);
      dict = lexicon::extend_with_embeddings(dict, pairs, hi, en, mapping, ext->threshold, stop);
    }
    dict.save(ext->out);
    std::cerr << "dictionary: " << dict.size() << " entries (SEED " << dict.count(lexicon::Provenance::Seed)
              << ", EMBED " << dict.count(lexicon::Provenance::Embed) << ", ALIGN "
              << dict.count(lexicon::Provenance::Align) << ")\n";
  });
}

void setup_align(CLI::App& app, const Globals& g) {
  auto* align = app.add_subcommand("align", "IBM Model 1 word alignment");
  align->require_subcommand(1);

  struct TrainOpts {
    std::string pairs, out;
    std::size_t iterations = 5;
    double min_prob = 1e-6;
  };
  auto train = std::make_shared<TrainOpts>();
  auto* t = align->add_subcommand("train", "Train a translation table");
  t->add_option("--pairs", train->pairs, "Parallel corpus (TSV or JSONL)")->required()->check(CLI::ExistingFile);
  t->add_option("--iterations", train->iterations, "EM iterations")->check(CLI::Range(1, 1000));
  t->add_option("--min-prob", train->min_prob, "Drop probabilities below this when writing")
      ->check(CLI::Range(0.0, 1.0));
  t->add_option("--out", train->out, "Output table TSV")->required();
  t->callback([train, &g] {
    const auto table = align::train_ibm1(read_pairs(train->pairs), train->iterations, g.threads);
    table.save(train->out, train->min_prob);
    std::cerr << "log-likelihood: " << format_double(table.final_log_likelihood(), "%.6g") << '\n';
  });

  struct InferOpts {
    std::string pairs, table, out;
  };
  auto infer = std::make_shared<InferOpts>();
  auto* i = align->add_subcommand("infer", "Viterbi links for every pair");
  i->add_option("--pairs", infer->pairs, "Parallel corpus (TSV or JSONL)")->required()->check(CLI::ExistingFile);
  i->add_option("--table", infer->table, "Translation table TSV")->required()->check(CLI::ExistingFile);
  i->add_option("--out", infer->out, "Output links file")->required();
  i->callback([infer] {
    const auto table = align::TranslationTable::load(infer->table);
    auto out = open_out(infer->out);
    for (const auto& p : read_pairs(infer->pairs)) out << align::format_links(align::align_pair(p, table)) << '\n';
  });
}

void setup_embed(CLI::App& app) {
  auto* embed_cmd = app.add_subcommand("embed", "Cross-lingual embedding tools");
  embed_cmd->require_subcommand(1);
  struct MapOpts {
    std::string hi_vectors, en_vectors, seed_dict, out;
  };
  auto opts = std::make_shared<MapOpts>();
  auto* m = embed_cmd->add_subcommand("map", "Learn an orthogonal Hindi-to-English mapping");
  m->add_option("--hi-vectors", opts->hi_vectors, "Hindi word vectors")->required()->check(CLI::ExistingFile);
  m->add_option("--en-vectors", opts->en_vectors, "English word vectors")->required()->check(CLI::ExistingFile);
  m->add_option("--seed-dict", opts->seed_dict, "Seed dictionary")->required()->check(CLI::ExistingFile);
  m->add_option("--out", opts->out, "Output mapping (binary)")->required();
  m->callback([opts] {
    const auto hi = embed::VectorStore::load(opts->hi_vectors);
    const auto en = embed::VectorStore::load(opts->en_vectors);
    const auto mapping = embed::learn_mapping(hi, en, lexicon::mapping_seed(read_dict(opts->seed_dict)));
    mapping.save(opts->out);
    std::cerr << "orthogonality error: " << format_double(mapping.orthogonality_error(), "%.3g") << '\n';
  });
}

void setup_translit(CLI::App& app) {
  struct Opts {
    std::string table, in, out, dump;
  };
  auto opts = std::make_shared<Opts>();
  auto* t = app.add_subcommand("translit", "Romanize Devanagari text line by line");
  t->add_option("--table", opts->table, "Transliteration table TSV (built-in table when absent)")
      ->check(CLI::ExistingFile);
  t->add_option("--in", opts->in, "Input text (stdin when absent)")->check(CLI::ExistingFile);
  t->add_option("--out", opts->out, "Output text (stdout when absent)");
  t->add_option("--dump-table", opts->dump, "Write the active table as TSV and exit");
  t->callback([opts] {
    const auto table =
        opts->table.empty() ? translit::TranslitTable::builtin() : translit::TranslitTable::load(opts->table);
    if (!opts->dump.empty()) {
      table.save(opts->dump);
      return;
    }
    std::ifstream file;
    if (!opts->in.empty()) {
      file.open(opts->in, std::ios::binary);
      if (!file) throw IoError("cannot open " + opts->in);
    }
    std::istream& in = opts->in.empty() ? std::cin : file;
    std::ofstream out_file;
    if (!opts->out.empty()) out_file = open_out(opts->out);
    std::ostream& out = opts->out.empty() ? std::cout : out_file;
    std::size_t unmapped = 0;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      out << translit::transliterate_sentence(tokenize(line), table, &unmapped).text() << '\n';
    }
    if (unmapped) std::cerr << "unmapped characters: " << unmapped << '\n';
  });
}

void setup_keyphrase(CLI::App& app) {
  struct Opts {
    std::string in, out, stopwords;
    std::size_t max_n = 3;
    std::size_t top_k = 0;
  };
  auto opts = std::make_shared<Opts>();
  auto* k = app.add_subcommand("keyphrase", "Rank keyphrases of one document");
  k->add_option("--in", opts->in, "Document text (stdin when absent)")->check(CLI::ExistingFile);
  k->add_option("--out", opts->out, "Output TSV (stdout when absent)");
  k->add_option("--max-n", opts->max_n, "Longest phrase in tokens")->check(CLI::Range(1, 3));
  k->add_option("--top-k", opts->top_k, "Keep the best K phrases (0 keeps all)");
  k->add_option("--stopwords", opts->stopwords, "Stopword list, one per line")->check(CLI::ExistingFile);
  k->callback([opts] {
    std::string text;
    if (opts->in.empty()) {
      text = slurp(std::cin);
    } else {
      std::ifstream in(opts->in, std::ios::binary);
      if (!in) throw IoError("cannot open " + opts->in);
      text = slurp(in);
    }
    keyphrase::Stopwords stop = opts->stopwords.empty() ? keyphrase::default_stopwords()
                                                        : lexicon::load_word_list(opts->stopwords);
    const std::size_t top_k = opts->top_k ? opts->top_k : std::numeric_limits<std::size_t>::max();
    const auto phrases = keyphrase::extract(tokenize(text).tokens, opts->max_n, top_k, stop);
    std::ofstream out_file;
    if (!opts->out.empty()) out_file = open_out(opts->out);
    std::ostream& out = opts->out.empty() ? std::cout : out_file;
    out << "phrase\tscore\tstart\tend\n";
    for (const auto& p : phrases) {
      out << p.text() << '\t' << format_double(p.score, "%.10g") << '\t' << p.start << '\t' << p.end << '\n';
    }
  });
}

void setup_generate(CLI::App& app, const Globals& g) {
  struct Opts {
    std::string method = "both";
    std::string dict, pairs, out, pos_lexicon, stopwords, table, hi_vectors, en_vectors, hindi_stopwords;
    double threshold = 0.5;
    std::size_t pac_max_n = 3;
  };
  auto opts = std::make_shared<Opts>();
  auto* c = app.add_subcommand("generate", "Generate code-mixed sentences with WAC and/or PAC");
  c->add_option("--method", opts->method, "wac, pac or both")->check(CLI::IsMember({"wac", "pac", "both"}));
  c->add_option("--dict", opts->dict, "Bilingual dictionary TSV")->required()->check(CLI::ExistingFile);
  c->add_option("--pairs", opts->pairs, "Parallel corpus (TSV or JSONL)")->required()->check(CLI::ExistingFile);
  c->add_option("--out", opts->out, "Output JSONL")->required();
  c->add_option("--pos-lexicon", opts->pos_lexicon, "word<TAB>TAG lexicon")->check(CLI::ExistingFile);
  c->add_option("--stopwords", opts->stopwords, "English keyphrase stopwords")->check(CLI::ExistingFile);
  c->add_option("--translit-table", opts->table, "Transliteration table TSV")->check(CLI::ExistingFile);
  c->add_option("--pac-max-n", opts->pac_max_n, "Longest PAC phrase")->check(CLI::Range(1, 3));
  auto* hv = c->add_option("--hi-vectors", opts->hi_vectors, "Hindi vectors for embedding extension")
                 ->check(CLI::ExistingFile);
  auto* ev = c->add_option("--en-vectors", opts->en_vectors, "English vectors for embedding extension")
                 ->check(CLI::ExistingFile);
  hv->needs(ev);
  ev->needs(hv);
  c->add_option("--hindi-stopwords", opts->hindi_stopwords, "Hindi words never looked up")->check(CLI::ExistingFile);
  c->add_option("--embed-threshold", opts->threshold, "Cosine threshold when vectors are given")
      ->check(CLI::Range(0.0, 1.0));
  c->callback([opts, &g] {
    if (!(opts->threshold > 0.0)) throw CLI::ValidationError("--embed-threshold", "must be in (0, 1]");
    auto dict = read_dict(opts->dict);
    const auto pairs = read_pairs(opts->pairs);
    if (!opts->hi_vectors.empty()) {
      const auto hi = embed::VectorStore::load(opts->hi_vectors);
      const auto en = embed::VectorStore::load(opts->en_vectors);
      const auto mapping = embed::learn_mapping(hi, en, lexicon::mapping_seed(dict));
      std::unordered_set<std::string> stop;
      if (!opts->hindi_stopwords.empty()) stop = lexicon::load_word_list(opts->hindi_stopwords);
      dict = lexicon::extend_with_embeddings(dict, pairs, hi, en, mapping, opts->threshold, stop);
    }
    generate::GenerationConfig config;
    if (!opts->pos_lexicon.empty()) config.pos_lexicon = generate::load_pos_lexicon(opts->pos_lexicon);
    config.pac_max_n = opts->pac_max_n;
    keyphrase::Stopwords stop;
    if (!opts->stopwords.empty()) {
      stop = lexicon::load_word_list(opts->stopwords);
      config.stopwords = &stop;
    }
    const auto table =
        opts->table.empty() ? translit::TranslitTable::builtin() : translit::TranslitTable::load(opts->table);
    const auto result = generate::generate_corpus(pairs, kMethods.at(opts->method), dict, config, table, g.threads);
    save_generated(opts->out, result.sentences);
    const auto& s = result.summary;
    std::cerr << "outputs: " << s.outputs << ", without replacement: " << s.zero_replacement
              << ", replacement rate: " << format_double(s.replacement_rate(), "%.4f")
              << ", unmapped characters: " << s.unmapped << '\n';
  });
}

void setup_score(CLI::App& app, const Globals& g) {
  struct Opts {
    std::string hyp, refs, vectors, out;
    std::size_t bleu_max_n = 4, nist_max_n = 5;
    bool no_smoothing = false;
    bool lowercase = false;
  };
  auto opts = std::make_shared<Opts>();
  auto* s = app.add_subcommand("score", "Score generated sentences against references");
  s->add_option("--hyp", opts->hyp, "Generated JSONL")->required()->check(CLI::ExistingFile);
  s->add_option("--refs", opts->refs, "pair_id<TAB>reference TSV")->required()->check(CLI::ExistingFile);
  s->add_option("--vectors", opts->vectors, "Word vectors for the embedding score")->check(CLI::ExistingFile);
  s->add_option("--out", opts->out, "Report TSV")->required();
  s->add_option("--bleu-max-n", opts->bleu_max_n, "BLEU n-gram order")->check(CLI::Range(1, 9));
  s->add_option("--nist-max-n", opts->nist_max_n, "NIST n-gram order")->check(CLI::Range(1, 9));
  s->add_flag("--no-smoothing", opts->no_smoothing, "Zero BLEU when any precision is zero");
  s->add_flag("--lowercase", opts->lowercase, "ASCII-lowercase both sides before scoring");
  s->callback([opts, &g] {
    auto hyps = load_generated(opts->hyp);
    warn_problems(opts->hyp, hyps.problems);
    const auto refs = load_references(opts->refs);
    std::optional<embed::VectorStore> vectors;
    if (!opts->vectors.empty()) vectors = embed::VectorStore::load(opts->vectors);
    metrics::MetricConfig config;
    config.bleu_max_n = opts->bleu_max_n;
    config.nist_max_n = opts->nist_max_n;
    if (opts->no_smoothing) config.smoothing = metrics::BleuSmoothing::None;
    const auto scored = pipeline::score_generated(hyps.items, refs, vectors ? &*vectors : nullptr, config, g.threads, opts->lowercase);
    if (scored.unreferenced) std::cerr << "no reference for " << scored.unreferenced << " sentence(s)\n";
    metrics::save_report(opts->out, scored.ids, scored.report);
  });
}

void setup_evaluate(CLI::App& app) {
  struct Opts {
    std::string scores, ratings, out_dir;
    std::string dedup = "per-rating";
    bool per_observation = false;
  };
  auto opts = std::make_shared<Opts>();
  auto* e = app.add_subcommand("evaluate", "Human-rating analytics");
  e->add_option("--scores", opts->scores, "Report TSV from `score`")->required()->check(CLI::ExistingFile);
  e->add_option("--ratings", opts->ratings, "Ratings JSONL")->required()->check(CLI::ExistingFile);
  e->add_option("--out-dir", opts->out_dir, "Directory for the tables")->required();
  e->add_option("--dedup-mode", opts->dedup, "per-rating or mean-rounded")
      ->check(CLI::IsMember({"per-rating", "mean-rounded"}));
  e->add_flag("--per-observation", opts->per_observation, "Correlate individual observations, not rating means");
  e->callback([opts] {
    const auto scores = metrics::load_report(opts->scores);
    auto ratings = load_ratings(opts->ratings);
    for (const auto& p : ratings.problems) throw ParseError(opts->ratings, p.line, p.message);
    const auto report =
        eval::evaluate(scores.sentences, ratings.items, {kDedupModes.at(opts->dedup), opts->per_observation});
    std::filesystem::create_directories(opts->out_dir);
    eval::write_reports(opts->out_dir, report);
    if (report.unscored_ratings) std::cerr << "ratings without scores: " << report.unscored_ratings << '\n';
    if (report.agreement.excluded || report.histogram.excluded) {
      std::cerr << "sentences without exactly two ratings: labels " << report.agreement.excluded << ", quality "
                << report.histogram.excluded << '\n';
    }
  });
}

void setup_pipeline(CLI::App& app, Globals& g) {
  auto* p = app.add_subcommand("pipeline", "End-to-end run");
  p->require_subcommand(1);
  auto config = std::make_shared<pipeline::PipelineConfig>();
  auto method = std::make_shared<std::string>("both");
  auto dedup = std::make_shared<std::string>("per-rating");
  auto* r = p->add_subcommand("run", "dict, align, extend, generate, score, evaluate");
  r->add_option("--seed-dict", config->seed_dict, "Seed dictionary")->required();
  r->add_option("--pairs", config->pairs, "Parallel corpus (TSV or JSONL)")->required();
  r->add_option("--refs", config->refs, "pair_id<TAB>reference TSV")->required();
  r->add_option("--out-dir", config->out_dir, "Output directory")->required();
  r->add_option("--ratings", config->ratings, "Ratings JSONL");
  r->add_option("--hi-vectors", config->hi_vectors, "Hindi word vectors");
  r->add_option("--en-vectors", config->en_vectors, "English word vectors");
  r->add_option("--score-vectors", config->score_vectors, "Vectors for the embedding score");
  r->add_option("--pos-lexicon", config->pos_lexicon, "word<TAB>TAG lexicon");
  r->add_option("--stopwords", config->stopwords, "English keyphrase stopwords");
  r->add_option("--hindi-stopwords", config->hindi_stopwords, "Hindi words never looked up");
  r->add_option("--translit-table", config->translit_table, "Transliteration table TSV");
  r->add_option("--iterations", config->ibm1_iterations, "IBM Model 1 iterations");
  r->add_option("--embed-threshold", config->embed_threshold, "Cosine threshold for embedding pairs");
  r->add_option("--min-count", config->align_min_count, "Minimum link count for aligned pairs");
  r->add_option("--min-prob", config->align_min_prob, "Minimum translation probability for aligned pairs");
  r->add_option("--bleu-max-n", config->bleu_max_n, "BLEU n-gram order");
  r->add_option("--nist-max-n", config->nist_max_n, "NIST n-gram order");
  r->add_option("--pac-max-n", config->pac_max_n, "Longest PAC phrase");
  r->add_option("--method", *method, "wac, pac or both")->check(CLI::IsMember({"wac", "pac", "both"}));
  r->add_option("--dedup-mode", *dedup, "per-rating or mean-rounded")
      ->check(CLI::IsMember({"per-rating", "mean-rounded"}));
  r->add_flag("--per-observation", config->per_observation, "Correlate individual observations");
  r->add_flag("--lowercase", config->lowercase, "ASCII-lowercase hypotheses and references before scoring");
  r->callback([config, method, dedup, &g] {
    config->method = kMethods.at(*method);
    config->dedup = kDedupModes.at(*dedup);
    config->threads = g.threads;
    config->seed = g.seed;
    const auto summary = pipeline::run(*config);
    std::cerr << "pairs: " << summary.pairs << ", outputs: " << summary.generation.outputs
              << ", scored: " << summary.scored << '\n';
    if (summary.corpus) {
      std::cerr << "corpus bleu " << format_double(summary.corpus->bleu, "%.4f") << " wer "
                << format_double(summary.corpus->wer, "%.4f") << " ter " << format_double(summary.corpus->ter, "%.4f")
                << " nist " << format_double(summary.corpus->nist, "%.4f") << '\n';
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hindi-English code-mixed text generation and evaluation"};
  app.set_version_flag("--version", std::string(pipeline::kVersion));
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (default: hardware concurrency)")
      ->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "Seed for randomized utilities");

  setup_dict(app);
  setup_align(app, g);
  setup_embed(app);
  setup_translit(app);
  setup_keyphrase(app);
  setup_generate(app, g);
  setup_score(app, g);
  setup_evaluate(app);
  setup_pipeline(app, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const hinge::pipeline::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
