#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hinge/corpus.hpp"
#include "hinge/embed.hpp"

namespace hinge::metrics {

using Tokens = std::vector<std::string>;

inline constexpr double kBleuEpsilon = 1e-9;

enum class BleuSmoothing { None, AddEpsilon };

struct MetricConfig {
  std::size_t bleu_max_n = 4;
  std::size_t nist_max_n = 5;
  std::size_t ter_max_block = 10;
  BleuSmoothing smoothing = BleuSmoothing::AddEpsilon;
};

// Clipped n-gram matches and hypothesis n-gram totals per order, plus the
// hypothesis length and closest reference length. Sums across sentences
// give corpus-level BLEU.
struct BleuStats {
  std::vector<double> matches;
  std::vector<double> totals;
  double hyp_length = 0.0;
  double ref_length = 0.0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats bleu_stats(const Tokens& hyp, const std::vector<Tokens>& refs, std::size_t max_n = 4);
double bleu_from_stats(const BleuStats& stats, BleuSmoothing smoothing = BleuSmoothing::AddEpsilon);
double bleu(const Tokens& hyp, const std::vector<Tokens>& refs, std::size_t max_n = 4,
            BleuSmoothing smoothing = BleuSmoothing::AddEpsilon);

// Information weights info(w1..wn) = log2(count(w1..wn-1) / count(w1..wn))
// over a reference corpus; the empty prefix counts every word.
class NistInfo {
 public:
  NistInfo() = default;
  NistInfo(const std::vector<std::vector<Tokens>>& reference_sets, std::size_t max_n = 5);

  double info(const Tokens& ngram) const;
  std::size_t max_n() const { return max_n_; }

 private:
  std::size_t max_n_ = 5;
  double total_words_ = 0.0;
  std::map<Tokens, double> counts_;
};

struct NistStats {
  std::vector<double> info;    // matched information per order
  std::vector<double> totals;  // hypothesis n-grams per order
  double hyp_length = 0.0;
  double ref_length = 0.0;     // average reference length

  NistStats& operator+=(const NistStats& other);
};

NistStats nist_stats(const Tokens& hyp, const std::vector<Tokens>& refs, const NistInfo& info);
double nist_from_stats(const NistStats& stats);
double nist(const Tokens& hyp, const std::vector<Tokens>& refs, const NistInfo& info);
// exp(-beta * ln^2(min(ratio, 1))) with beta chosen so that ratio 2/3 gives 0.5.
double nist_brevity(double hyp_length, double ref_length);

// Word-level Levenshtein distance (unit costs).
std::size_t edit_distance(const Tokens& a, const Tokens& b);
double wer(const Tokens& hyp, const Tokens& ref);
double wer(const Tokens& hyp, const std::vector<Tokens>& refs);

struct TerEdits {
  std::size_t edits = 0;   // remaining edit distance after shifting
  std::size_t shifts = 0;
  std::size_t total() const { return edits + shifts; }
};

// Greedy block shifts: repeatedly apply the shift of a hypothesis block that
// occurs verbatim in the reference which lowers edit distance by the most,
// as long as it lowers it by more than the shift's own cost.
TerEdits ter_edits(const Tokens& hyp, const Tokens& ref, std::size_t max_block = 10);
// Fewest (edits + shifts) over refs, divided by the average reference length.
double ter(const Tokens& hyp, const std::vector<Tokens>& refs, std::size_t max_block = 10);

// Greedy-matching F1 over static token vectors. Identical strings match with
// cosine 1; out-of-vocabulary tokens match nothing else. nullopt when a side
// has neither an in-vocabulary token nor an exact match on the other side.
std::optional<double> embed_score(const Tokens& hyp, const Tokens& ref, const embed::VectorStore& vectors);
std::optional<double> embed_score(const Tokens& hyp, const std::vector<Tokens>& refs,
                                  const embed::VectorStore& vectors);

struct SentenceScore {
  double bleu = 0.0;
  double nist = 0.0;
  double wer = 0.0;
  double ter = 0.0;
  std::optional<double> embed;
};

using CorpusScore = SentenceScore;

struct ScoreReport {
  CorpusScore corpus;
  std::vector<SentenceScore> sentences;
};

// BLEU and NIST are pooled over the corpus, WER and TER are summed edits over
// summed reference lengths, embed is the mean of the defined sentence values.
ScoreReport score_corpus(const std::vector<Tokens>& hyps, const std::vector<std::vector<Tokens>>& reference_sets,
                         const embed::VectorStore* vectors = nullptr, const MetricConfig& config = {},
                         std::size_t threads = 1);

// Surface forms of a tokenized sentence, ASCII-lowercased when asked. Neutral
// punctuation is kept; it takes part in n-gram matching like any token.
Tokens surfaces(const std::vector<Token>& tokens, bool lowercase = false);

// Report TSV: header, one row per sentence id, final #CORPUS row. Values are
// printed with six decimals, an undefined embed score as NA.
void save_report(const std::string& path, const std::vector<std::string>& sentence_ids, const ScoreReport& report);

struct LoadedReport {
  std::vector<std::string> ids;
  std::map<std::string, SentenceScore> sentences;
  std::optional<CorpusScore> corpus;
};

LoadedReport load_report(const std::string& path);

}  // namespace hinge::metrics
