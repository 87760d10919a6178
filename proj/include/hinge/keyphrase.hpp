#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "hinge/corpus.hpp"

namespace hinge::keyphrase {

using Stopwords = std::unordered_set<std::string>;

// Bundled English and romanized-Hindi stopwords, lowercase.
const Stopwords& default_stopwords();

struct TermStats {
  std::size_t tf = 0;
  double tf_norm = 0.0;      // tf / (mean + stddev) over non-stopword terms
  double position = 0.0;     // median token index of the occurrences
  double casing = 0.0;       // max(acronym count, capitalized count) / tf
  double relatedness = 0.0;  // 1 + (DL + DR) * tf / max_tf
  double dispersion = 0.0;   // fraction of sentences containing the term
  double score = 0.0;        // lower is more important
};

inline constexpr std::size_t kWindow = 2;

// Per-term statistics keyed by lowercased surface. Only non-stopword terms
// of letter tokens are returned.
std::map<std::string, TermStats> score_terms(const std::vector<Token>& document, const Stopwords& stopwords);

struct Keyphrase {
  std::vector<std::string> tokens;  // surfaces at the first occurrence
  double score = 0.0;
  std::size_t start = 0;  // [start, end) token range of the first occurrence
  std::size_t end = 0;

  std::string text() const;
};

// Contiguous 1..max_n grams that stay inside a punctuation-free chunk and
// do not start or end with a stopword, scored
//   S(kw) = prod S(w) / (TF(kw) * (1 + sum S(w)))
// over the non-stopword words of the candidate. Ascending by score, then by
// first position, then by length.
std::vector<Keyphrase> extract(const std::vector<Token>& document, std::size_t max_n = 3,
                               std::size_t top_k = std::numeric_limits<std::size_t>::max(),
                               const Stopwords& stopwords = default_stopwords());

}  // namespace hinge::keyphrase
