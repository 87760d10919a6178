#pragma once

// Deliberately naive reimplementations used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hinge/corpus.hpp"
#include "hinge/keyphrase.hpp"

namespace hinge::oracle {

using Tokens = std::vector<std::string>;

// Levenshtein by memoized recursion over suffixes.
inline std::size_t edit_distance(const Tokens& a, const Tokens& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    const auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    best = std::min(best, go(i + 1, j) + 1);
    best = std::min(best, go(i, j + 1) + 1);
    return memo[key] = best;
  };
  return go(0, 0);
}

inline double wer(const Tokens& hyp, const Tokens& ref) {
  if (ref.empty()) return hyp.empty() ? 0.0 : 1.0;
  return static_cast<double>(edit_distance(hyp, ref)) / static_cast<double>(ref.size());
}

// Sentence BLEU written straight from the definition, one reference set.
inline double bleu(const Tokens& hyp, const std::vector<Tokens>& refs, std::size_t max_n, double eps) {
  if (hyp.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    double matched = 0.0, total = 0.0;
    std::vector<Tokens> seen;
    for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
      const Tokens g(hyp.begin() + i, hyp.begin() + i + n);
      total += 1.0;
      if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
      seen.push_back(g);
      std::size_t in_hyp = 0;
      for (std::size_t k = 0; k + n <= hyp.size(); ++k) in_hyp += Tokens(hyp.begin() + k, hyp.begin() + k + n) == g;
      std::size_t best_ref = 0;
      for (const auto& r : refs) {
        std::size_t c = 0;
        for (std::size_t k = 0; k + n <= r.size(); ++k) c += Tokens(r.begin() + k, r.begin() + k + n) == g;
        best_ref = std::max(best_ref, c);
      }
      matched += static_cast<double>(std::min(in_hyp, best_ref));
    }
    const double p = total > 0.0 ? matched / total : 0.0;
    log_sum += std::log(p > 0.0 ? p : eps);
  }
  const double c = static_cast<double>(hyp.size());
  double r = static_cast<double>(refs.front().size());
  for (const auto& ref : refs) {
    const double len = static_cast<double>(ref.size());
    if (std::abs(len - c) < std::abs(r - c) || (std::abs(len - c) == std::abs(r - c) && len < r)) r = len;
  }
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / static_cast<double>(max_n));
}

// Textbook single-pass Pearson formula.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

// Keyphrase extraction by exhaustive enumeration, every statistic recomputed
// per term by scanning the whole document.
struct Phrase {
  std::string text;
  double score;
  std::size_t start, end;
};

inline std::vector<Phrase> keyphrases(const std::vector<Token>& doc, std::size_t max_n,
                                      const keyphrase::Stopwords& stop) {
  const std::size_t n = doc.size();
  auto lower = [](std::string s) {
    for (auto& c : s) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
  };
  auto is_end = [](const std::string& s) { return s == "." || s == "!" || s == "?" || s == "।" || s == "॥"; };
  auto word = [&](std::size_t i) { return doc[i].script != Script::Neutral; };
  // sentence id: number of terminators strictly before i
  auto sentence_of = [&](std::size_t i) {
    std::size_t s = 0;
    for (std::size_t k = 0; k < i; ++k) s += is_end(doc[k].surface);
    return s;
  };
  // same chunk: every token in [a, b] is a word and no terminator sits in between
  auto same_chunk = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = a; k <= b; ++k) {
      if (!word(k)) return false;
    }
    return sentence_of(a) == sentence_of(b);
  };
  std::size_t sentences = 0;
  for (std::size_t i = 0; i < n; ++i) sentences = std::max(sentences, sentence_of(i) + 1);

  std::set<std::string> vocab;
  for (std::size_t i = 0; i < n; ++i) {
    if (word(i)) vocab.insert(lower(doc[i].surface));
  }
  if (vocab.empty()) return {};
  auto tf_of = [&](const std::string& w) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += word(i) && lower(doc[i].surface) == w;
    return c;
  };
  double max_tf = 0;
  std::vector<double> content_tfs;
  for (const auto& w : vocab) {
    max_tf = std::max(max_tf, static_cast<double>(tf_of(w)));
    if (!stop.count(w)) content_tfs.push_back(static_cast<double>(tf_of(w)));
  }
  if (content_tfs.empty()) return {};
  double mean = 0;
  for (double v : content_tfs) mean += v / static_cast<double>(content_tfs.size());
  double var = 0;
  for (double v : content_tfs) var += (v - mean) * (v - mean) / static_cast<double>(content_tfs.size());
  const double sd = std::sqrt(var);

  std::map<std::string, double> term_score;
  for (const auto& w : vocab) {
    if (stop.count(w)) continue;
    std::vector<double> pos;
    std::size_t acr = 0, cap = 0;
    std::set<std::size_t> sents;
    std::set<std::string> left, right;
    double left_n = 0, right_n = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!word(i) || lower(doc[i].surface) != w) continue;
      pos.push_back(static_cast<double>(i));
      sents.insert(sentence_of(i));
      const auto& s = doc[i].surface;
      std::size_t upper = 0;
      bool has_lower = false;
      for (char c : s) {
        upper += c >= 'A' && c <= 'Z';
        has_lower = has_lower || (c >= 'a' && c <= 'z');
      }
      const bool starts = i == 0 || sentence_of(i - 1) != sentence_of(i);
      if (upper >= 2 && !has_lower) {
        ++acr;
      } else if (s[0] >= 'A' && s[0] <= 'Z' && !starts) {
        ++cap;
      }
      for (std::size_t d = 1; d <= 2; ++d) {
        if (i >= d && same_chunk(i - d, i)) {
          left.insert(lower(doc[i - d].surface));
          left_n += 1;
        }
        if (i + d < n && same_chunk(i, i + d)) {
          right.insert(lower(doc[i + d].surface));
          right_n += 1;
        }
      }
    }
    const double tf = static_cast<double>(pos.size());
    std::sort(pos.begin(), pos.end());
    const std::size_t m = pos.size();
    const double median = m % 2 ? pos[m / 2] : (pos[m / 2 - 1] + pos[m / 2]) / 2;
    const double dl = left_n > 0 ? static_cast<double>(left.size()) / left_n : 0;
    const double dr = right_n > 0 ? static_cast<double>(right.size()) / right_n : 0;
    const double rel = 1 + (dl + dr) * tf / max_tf;
    const double casing = static_cast<double>(std::max(acr, cap)) / tf;
    const double disp = static_cast<double>(sents.size()) / static_cast<double>(sentences);
    term_score[w] = rel * std::log(std::log(3 + median)) / (casing + tf / (mean + sd) / rel + disp / rel);
  }

  std::vector<Phrase> out;
  std::set<std::string> done;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t len = 1; len <= max_n && s + len <= n; ++len) {
      const std::size_t e = s + len - 1;
      if (!same_chunk(s, e)) continue;
      if (stop.count(lower(doc[s].surface)) || stop.count(lower(doc[e].surface))) continue;
      std::string key, text;
      for (std::size_t k = s; k <= e; ++k) {
        key += (k > s ? " " : "") + lower(doc[k].surface);
        text += (k > s ? " " : "") + doc[k].surface;
      }
      if (!done.insert(key).second) continue;
      double occurrences = 0;
      for (std::size_t t = 0; t + len <= n; ++t) {
        if (!same_chunk(t, t + len - 1)) continue;
        std::string other;
        for (std::size_t k = t; k < t + len; ++k) other += (k > t ? " " : "") + lower(doc[k].surface);
        occurrences += other == key;
      }
      double prod = 1, sum = 0;
      for (std::size_t k = s; k <= e; ++k) {
        const auto it = term_score.find(lower(doc[k].surface));
        if (it == term_score.end()) continue;
        prod *= it->second;
        sum += it->second;
      }
      out.push_back({text, prod / (occurrences * (1 + sum)), s, e + 1});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Phrase& a, const Phrase& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });
  return out;
}

// Short English-ish documents with stopwords, capitals, acronyms and
// sentence punctuation.
inline std::vector<Token> random_document(std::mt19937& rng) {
  static const std::vector<std::string> pool{"food",  "Food", "river", "city", "NASA", "the",  "of",   "and", "green",
                                             "water", "big",  "Delhi", "is",   "a",    "clean", ",",   ".",   "!",
                                             "house", "UN",   "train", "fast", "to",   "market", "?",  "in"};
  std::vector<Token> doc;
  const std::size_t len = 1 + rng() % 30;
  for (std::size_t i = 0; i < len; ++i) doc.push_back(make_token(pool[rng() % pool.size()]));
  return doc;
}

}  // namespace hinge::oracle
