#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hinge/corpus.hpp"

namespace hinge::align {

inline constexpr std::string_view kNullWord = "NULL";

// Lexical translation probabilities t(hindi | english), IBM Model 1.
// English words are stored lowercased; row 0 is the NULL word.
class TranslationTable {
 public:
  using WordId = std::uint32_t;
  static constexpr WordId kNull = 0;

  TranslationTable();

  // 0 when either word is unknown or the pair never co-occurred.
  double prob(std::string_view hindi, std::string_view english) const;
  double null_prob(std::string_view hindi) const;

  std::optional<WordId> english_id(std::string_view english) const;
  std::optional<WordId> hindi_id(std::string_view hindi) const;
  const std::string& english_word(WordId id) const { return en_words_[id]; }
  const std::string& hindi_word(WordId id) const { return hi_words_[id]; }
  std::size_t english_vocab_size() const { return en_words_.size(); }
  std::size_t hindi_vocab_size() const { return hindi_vocab_size_; }

  // Sparse distribution of an English word (or NULL) sorted by Hindi id.
  const std::vector<std::pair<WordId, double>>& distribution(WordId english) const { return dist_[english]; }
  double prob(WordId hindi, WordId english) const;

  std::size_t iterations() const { return iterations_; }
  // Corpus log-likelihood before each iteration and after the last one.
  const std::vector<double>& log_likelihoods() const { return log_likelihoods_; }
  double final_log_likelihood() const { return log_likelihoods_.empty() ? 0.0 : log_likelihoods_.back(); }

  // TSV english<TAB>hindi<TAB>prob with prob >= min_prob, preceded by
  // "# key value" metadata lines.
  void save(const std::string& path, double min_prob = 1e-6) const;
  static TranslationTable load(const std::string& path);

  bool operator==(const TranslationTable&) const = default;

 private:
  friend TranslationTable train_ibm1(const std::vector<ParallelPair>&, std::size_t, std::size_t);

  WordId intern_english(const std::string& word);
  WordId intern_hindi(const std::string& word);

  std::unordered_map<std::string, WordId> en_ids_;
  std::unordered_map<std::string, WordId> hi_ids_;
  std::vector<std::string> en_words_;
  std::vector<std::string> hi_words_;
  std::vector<std::vector<std::pair<WordId, double>>> dist_;
  std::size_t hindi_vocab_size_ = 0;
  std::size_t iterations_ = 0;
  std::vector<double> log_likelihoods_;
};

// EM training with uniform 1/|V_hi| initialization and a NULL word prepended
// to every English sentence. The E-step runs over fixed-size chunks merged
// in chunk order, so results do not depend on the thread count.
TranslationTable train_ibm1(const std::vector<ParallelPair>& corpus, std::size_t iterations,
                            std::size_t threads = 1);

struct Link {
  std::size_t hindi_index = 0;
  std::optional<std::size_t> english_index;  // nullopt = NULL
  double posterior = 0.0;

  bool operator==(const Link&) const = default;
};

struct AlignmentLinks {
  std::string pair_id;
  std::vector<Link> links;
};

// One link per Hindi token: argmax over the pair's English tokens, smallest
// index on ties; NULL only when strictly more probable than every English
// token, or when the Hindi word was never seen in training.
AlignmentLinks align_pair(const ParallelPair& pair, const TranslationTable& table);

// "pair_id<TAB>h-e h-e ..." with NULL for unaligned English side.
std::string format_links(const AlignmentLinks& links);

struct ExtractedPair {
  std::string english;
  std::string hindi;
  std::size_t count = 0;
  double prob = 0.0;

  bool operator==(const ExtractedPair&) const = default;
};

// Aggregates non-NULL links; keeps pairs with count >= min_count and
// t(hindi|english) >= min_prob, sorted by (english, hindi).
std::vector<ExtractedPair> extract_pairs(const std::vector<ParallelPair>& corpus,
                                         const std::vector<AlignmentLinks>& links, const TranslationTable& table,
                                         std::size_t min_count, double min_prob);

}  // namespace hinge::align
