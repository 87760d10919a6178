#include "hinge/keyphrase.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hinge/utf8.hpp"

namespace hinge::keyphrase {

namespace {

const char* const kStopwords[] = {
    // English
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are", "as", "at", "be",
    "because", "been", "before", "being", "below", "between", "both", "but", "by", "can", "could", "did", "do",
    "does", "doing", "down", "during", "each", "few", "for", "from", "further", "had", "has", "have", "having", "he",
    "her", "here", "hers", "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its",
    "itself", "just", "me", "might", "more", "most", "must", "my", "myself", "no", "nor", "not", "now", "of", "off",
    "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same", "shall", "she",
    "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there",
    "these", "they", "this", "those", "through", "to", "too", "under", "until", "up", "very", "was", "we", "were",
    "what", "when", "where", "which", "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours",
    "yourself", "yourselves",
    // romanized Hindi
    "aur", "bhi", "ek", "ho", "hai", "hain", "ham", "hum", "ka", "kar", "ke", "ki", "kya", "ko", "main", "mein", "na",
    "nahi", "nahin", "par", "se", "tha", "thi", "the", "to", "unka", "uska", "vah", "ve", "vo", "woh", "ya", "yah",
    "ye", "yeh",
};

bool is_sentence_end(const std::string& surface) {
  return surface == "." || surface == "!" || surface == "?" || surface == "।" || surface == "॥";
}

bool is_word(const Token& t) { return t.script != Script::Neutral; }

bool is_acronym(const std::string& surface) {
  std::size_t letters = 0;
  for (char c : surface) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') ++letters;
  }
  return letters >= 2;
}

bool is_capitalized(const std::string& surface) { return !surface.empty() && surface[0] >= 'A' && surface[0] <= 'Z'; }

double median(std::vector<std::size_t> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return static_cast<double>(xs[n / 2]);
  return (static_cast<double>(xs[n / 2 - 1]) + static_cast<double>(xs[n / 2])) / 2.0;
}

struct RawTerm {
  std::size_t tf = 0;
  std::size_t acronyms = 0;
  std::size_t capitalized = 0;
  std::vector<std::size_t> positions;
  std::set<std::size_t> sentences;
  std::size_t left_total = 0;
  std::size_t right_total = 0;
  std::set<std::string> left;
  std::set<std::string> right;
};

// Sentence index of every token, and the chunk index of word tokens
// (chunks are maximal runs of word tokens within a sentence).
struct Layout {
  std::vector<std::size_t> sentence;
  std::vector<std::ptrdiff_t> chunk;  // -1 for non-word tokens
  std::size_t sentence_count = 0;
};

Layout layout_of(const std::vector<Token>& doc) {
  Layout l;
  l.sentence.resize(doc.size());
  l.chunk.assign(doc.size(), -1);
  std::size_t sentence = 0;
  std::ptrdiff_t chunk = -1;
  bool in_chunk = false;
  bool sentence_has_tokens = false;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    l.sentence[i] = sentence;
    sentence_has_tokens = true;
    if (is_word(doc[i])) {
      if (!in_chunk) ++chunk;
      in_chunk = true;
      l.chunk[i] = chunk;
    } else {
      in_chunk = false;
    }
    if (is_sentence_end(doc[i].surface)) {
      ++sentence;
      sentence_has_tokens = false;
    }
  }
  l.sentence_count = sentence + (sentence_has_tokens ? 1 : 0);
  return l;
}

}  // namespace

const Stopwords& default_stopwords() {
  static const Stopwords words(std::begin(kStopwords), std::end(kStopwords));
  return words;
}

std::map<std::string, TermStats> score_terms(const std::vector<Token>& document, const Stopwords& stopwords) {
  std::map<std::string, TermStats> out;
  if (document.empty()) return out;
  const Layout layout = layout_of(document);

  std::map<std::string, RawTerm> raw;
  std::vector<std::string> keys(document.size());
  for (std::size_t i = 0; i < document.size(); ++i) {
    const auto& t = document[i];
    if (!is_word(t)) continue;
    keys[i] = utf8::ascii_lower(t.surface);
    auto& r = raw[keys[i]];
    ++r.tf;
    r.positions.push_back(i);
    r.sentences.insert(layout.sentence[i]);
    const bool sentence_start = i == 0 || layout.sentence[i - 1] != layout.sentence[i];
    if (is_acronym(t.surface)) {
      ++r.acronyms;
    } else if (is_capitalized(t.surface) && !sentence_start) {
      ++r.capitalized;
    }
    // left neighbours inside the window and the same chunk
    for (std::size_t back = 1; back <= kWindow && back <= i; ++back) {
      const std::size_t q = i - back;
      if (layout.chunk[q] != layout.chunk[i]) break;
      auto& left = raw[keys[q]];
      r.left.insert(keys[q]);
      ++r.left_total;
      left.right.insert(keys[i]);
      ++left.right_total;
    }
  }
  if (raw.empty()) return out;

  std::size_t max_tf = 0;
  std::vector<double> valid_tfs;
  for (const auto& [key, r] : raw) {
    max_tf = std::max(max_tf, r.tf);
    if (!stopwords.count(key)) valid_tfs.push_back(static_cast<double>(r.tf));
  }
  if (valid_tfs.empty()) return out;
  double mean = 0.0;
  for (double v : valid_tfs) mean += v;
  mean /= static_cast<double>(valid_tfs.size());
  double var = 0.0;
  for (double v : valid_tfs) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / static_cast<double>(valid_tfs.size()));

  for (const auto& [key, r] : raw) {
    if (stopwords.count(key)) continue;
    TermStats s;
    const double tf = static_cast<double>(r.tf);
    s.tf = r.tf;
    s.tf_norm = tf / (mean + stddev);
    s.position = median(r.positions);
    s.casing = static_cast<double>(std::max(r.acronyms, r.capitalized)) / tf;
    const double dl = r.left_total ? static_cast<double>(r.left.size()) / static_cast<double>(r.left_total) : 0.0;
    const double dr = r.right_total ? static_cast<double>(r.right.size()) / static_cast<double>(r.right_total) : 0.0;
    s.relatedness = 1.0 + (dl + dr) * tf / static_cast<double>(max_tf);
    s.dispersion = static_cast<double>(r.sentences.size()) / static_cast<double>(layout.sentence_count);
    const double pos = std::log(std::log(3.0 + s.position));
    s.score = s.relatedness * pos / (s.casing + s.tf_norm / s.relatedness + s.dispersion / s.relatedness);
    out.emplace(key, s);
  }
  return out;
}

std::string Keyphrase::text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<Keyphrase> extract(const std::vector<Token>& document, std::size_t max_n, std::size_t top_k,
                               const Stopwords& stopwords) {
  if (max_n < 1 || max_n > 3) throw std::invalid_argument("max_n must be 1, 2 or 3");
  std::vector<Keyphrase> out;
  const auto terms = score_terms(document, stopwords);
  if (terms.empty()) return out;
  const Layout layout = layout_of(document);

  std::vector<std::string> keys(document.size());
  for (std::size_t i = 0; i < document.size(); ++i) keys[i] = utf8::ascii_lower(document[i].surface);

  struct Candidate {
    std::size_t start;
    std::size_t length;
    std::size_t tf;
  };
  std::map<std::string, Candidate> candidates;
  for (std::size_t s = 0; s < document.size(); ++s) {
    if (layout.chunk[s] < 0 || stopwords.count(keys[s])) continue;
    for (std::size_t n = 1; n <= max_n && s + n <= document.size(); ++n) {
      const std::size_t last = s + n - 1;
      if (layout.chunk[last] != layout.chunk[s]) break;
      if (stopwords.count(keys[last])) continue;
      std::string key = keys[s];
      for (std::size_t k = s + 1; k <= last; ++k) key += " " + keys[k];
      auto [it, inserted] = candidates.try_emplace(key, Candidate{s, n, 0});
      ++it->second.tf;
    }
  }

  for (const auto& [key, c] : candidates) {
    double product = 1.0;
    double sum = 0.0;
    for (std::size_t k = c.start; k < c.start + c.length; ++k) {
      const auto it = terms.find(keys[k]);
      if (it == terms.end()) continue;  // interior stopword
      product *= it->second.score;
      sum += it->second.score;
    }
    Keyphrase kp;
    for (std::size_t k = c.start; k < c.start + c.length; ++k) kp.tokens.push_back(document[k].surface);
    kp.score = product / (static_cast<double>(c.tf) * (1.0 + sum));
    kp.start = c.start;
    kp.end = c.start + c.length;
    out.push_back(std::move(kp));
  }
  std::sort(out.begin(), out.end(), [](const Keyphrase& a, const Keyphrase& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

}  // namespace hinge::keyphrase
