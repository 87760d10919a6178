#include "hinge/align.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <tuple>
#include <sstream>
#include <thread>

#include "hinge/error.hpp"
#include "hinge/utf8.hpp"

namespace hinge::align {

namespace {

constexpr std::size_t kChunkSize = 512;

struct IdPair {
  std::vector<TranslationTable::WordId> en;  // NULL at position 0
  std::vector<TranslationTable::WordId> hi;
};

// Expected-count contributions of one chunk: (english id, support slot, value).
struct ChunkCounts {
  std::vector<std::tuple<TranslationTable::WordId, std::uint32_t, double>> entries;
  double log_likelihood = 0.0;
};

std::string format_prob(double p) {
  std::ostringstream os;
  os << std::setprecision(17) << p;
  return os.str();
}

}  // namespace

TranslationTable::TranslationTable() {
  en_words_.emplace_back(kNullWord);
  dist_.emplace_back();
}

TranslationTable::WordId TranslationTable::intern_english(const std::string& word) {
  auto [it, inserted] = en_ids_.try_emplace(word, static_cast<WordId>(en_words_.size()));
  if (inserted) {
    en_words_.push_back(word);
    dist_.emplace_back();
  }
  return it->second;
}

TranslationTable::WordId TranslationTable::intern_hindi(const std::string& word) {
  auto [it, inserted] = hi_ids_.try_emplace(word, static_cast<WordId>(hi_words_.size()));
  if (inserted) hi_words_.push_back(word);
  return it->second;
}

std::optional<TranslationTable::WordId> TranslationTable::english_id(std::string_view english) const {
  const auto it = en_ids_.find(utf8::ascii_lower(english));
  if (it == en_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<TranslationTable::WordId> TranslationTable::hindi_id(std::string_view hindi) const {
  const auto it = hi_ids_.find(std::string(hindi));
  if (it == hi_ids_.end()) return std::nullopt;
  return it->second;
}

double TranslationTable::prob(WordId hindi, WordId english) const {
  const auto& d = dist_[english];
  const auto it = std::lower_bound(d.begin(), d.end(), hindi,
                                   [](const std::pair<WordId, double>& a, WordId h) { return a.first < h; });
  return (it != d.end() && it->first == hindi) ? it->second : 0.0;
}

double TranslationTable::prob(std::string_view hindi, std::string_view english) const {
  const auto h = hindi_id(hindi);
  const auto e = english_id(english);
  if (!h || !e) return 0.0;
  return prob(*h, *e);
}

double TranslationTable::null_prob(std::string_view hindi) const {
  const auto h = hindi_id(hindi);
  return h ? prob(*h, kNull) : 0.0;
}

void TranslationTable::save(const std::string& path, double min_prob) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << "# iterations " << iterations_ << '\n';
  out << "# hindi_vocab " << hindi_vocab_size_ << '\n';
  out << "# log_likelihood " << format_prob(final_log_likelihood()) << '\n';
  for (WordId e = 0; e < dist_.size(); ++e) {
    for (const auto& [h, p] : dist_[e]) {
      if (p >= min_prob) out << en_words_[e] << '\t' << hi_words_[h] << '\t' << format_prob(p) << '\n';
    }
  }
}

TranslationTable TranslationTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  TranslationTable table;
  std::string line;
  std::size_t line_no = 0;
  std::map<WordId, std::map<WordId, double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      std::istringstream meta(line.substr(2));
      std::string key;
      meta >> key;
      if (key == "iterations") {
        meta >> table.iterations_;
      } else if (key == "hindi_vocab") {
        meta >> table.hindi_vocab_size_;
      } else if (key == "log_likelihood") {
        double ll = 0;
        meta >> ll;
        table.log_likelihoods_ = {ll};
      }
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 3) throw ParseError(path, line_no, "expected english<TAB>hindi<TAB>prob");
    double p = 0;
    try {
      p = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "bad probability '" + fields[2] + "'");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw ParseError(path, line_no, "probability outside [0,1]");
    const WordId e = fields[0] == kNullWord ? kNull : table.intern_english(utf8::ascii_lower(fields[0]));
    const WordId h = table.intern_hindi(fields[1]);
    rows[e][h] = p;
  }
  for (auto& [e, row] : rows) {
    table.dist_[e].assign(row.begin(), row.end());
  }
  table.hindi_vocab_size_ = std::max(table.hindi_vocab_size_, table.hi_words_.size());
  return table;
}

TranslationTable train_ibm1(const std::vector<ParallelPair>& corpus, std::size_t iterations, std::size_t threads) {
  if (corpus.empty()) throw std::invalid_argument("cannot train alignment on an empty corpus");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  threads = std::max<std::size_t>(threads, 1);

  using WordId = TranslationTable::WordId;
  TranslationTable table;
  std::vector<IdPair> pairs;
  pairs.reserve(corpus.size());
  for (const auto& p : corpus) {
    IdPair ids;
    ids.en.push_back(TranslationTable::kNull);
    for (const auto& t : p.en.tokens) ids.en.push_back(table.intern_english(utf8::ascii_lower(t.surface)));
    for (const auto& t : p.hi.tokens) ids.hi.push_back(table.intern_hindi(t.surface));
    pairs.push_back(std::move(ids));
  }
  table.hindi_vocab_size_ = table.hi_words_.size();
  const double uniform = 1.0 / static_cast<double>(table.hindi_vocab_size_);

  // support of each English word: the Hindi words it co-occurs with
  std::vector<std::vector<WordId>> support(table.en_words_.size());
  for (const auto& p : pairs) {
    for (WordId e : p.en) support[e].insert(support[e].end(), p.hi.begin(), p.hi.end());
  }
  for (auto& s : support) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::vector<std::vector<double>> probs(support.size());
  for (std::size_t e = 0; e < support.size(); ++e) probs[e].assign(support[e].size(), uniform);

  auto slot_of = [&](WordId e, WordId h) {
    const auto& s = support[e];
    return static_cast<std::uint32_t>(std::lower_bound(s.begin(), s.end(), h) - s.begin());
  };

  auto e_step_chunk = [&](std::size_t chunk, ChunkCounts& out) {
    out.entries.clear();
    out.log_likelihood = 0.0;
    const std::size_t begin = chunk * kChunkSize;
    const std::size_t end = std::min(pairs.size(), begin + kChunkSize);
    std::vector<std::uint32_t> slots;
    std::vector<double> scores;
    for (std::size_t n = begin; n < end; ++n) {
      const auto& p = pairs[n];
      slots.resize(p.en.size());
      scores.resize(p.en.size());
      for (WordId h : p.hi) {
        double z = 0.0;
        for (std::size_t i = 0; i < p.en.size(); ++i) {
          slots[i] = slot_of(p.en[i], h);
          scores[i] = probs[p.en[i]][slots[i]];
          z += scores[i];
        }
        out.log_likelihood += std::log(z);
        for (std::size_t i = 0; i < p.en.size(); ++i) {
          out.entries.emplace_back(p.en[i], slots[i], scores[i] / z);
        }
      }
      out.log_likelihood -= static_cast<double>(p.hi.size()) * std::log(static_cast<double>(p.en.size()));
    }
  };

  const std::size_t chunk_count = (pairs.size() + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkCounts> wave(std::min(threads, chunk_count));

  // One pass over the corpus; accumulates counts when counts != nullptr.
  auto run_pass = [&](std::vector<std::vector<double>>* counts) {
    double ll = 0.0;
    for (std::size_t first = 0; first < chunk_count; first += wave.size()) {
      const std::size_t in_wave = std::min(wave.size(), chunk_count - first);
      if (in_wave == 1) {
        e_step_chunk(first, wave[0]);
      } else {
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < in_wave; ++w) {
          workers.emplace_back([&, w] { e_step_chunk(first + w, wave[w]); });
        }
        for (auto& t : workers) t.join();
      }
      for (std::size_t w = 0; w < in_wave; ++w) {
        ll += wave[w].log_likelihood;
        if (counts) {
          for (const auto& [e, slot, v] : wave[w].entries) (*counts)[e][slot] += v;
        }
      }
    }
    return ll;
  };

  std::vector<std::vector<double>> counts(support.size());
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t e = 0; e < support.size(); ++e) counts[e].assign(support[e].size(), 0.0);
    table.log_likelihoods_.push_back(run_pass(&counts));
    for (std::size_t e = 0; e < support.size(); ++e) {
      double total = 0.0;
      for (double c : counts[e]) total += c;
      if (total <= 0.0) continue;
      for (std::size_t k = 0; k < counts[e].size(); ++k) probs[e][k] = counts[e][k] / total;
    }
  }
  table.log_likelihoods_.push_back(run_pass(nullptr));
  table.iterations_ = iterations;

  for (std::size_t e = 0; e < support.size(); ++e) {
    auto& d = table.dist_[e];
    d.reserve(support[e].size());
    for (std::size_t k = 0; k < support[e].size(); ++k) d.emplace_back(support[e][k], probs[e][k]);
  }
  return table;
}

AlignmentLinks align_pair(const ParallelPair& pair, const TranslationTable& table) {
  AlignmentLinks result;
  result.pair_id = pair.id;
  std::vector<std::optional<TranslationTable::WordId>> en_ids;
  en_ids.reserve(pair.en.tokens.size());
  for (const auto& t : pair.en.tokens) en_ids.push_back(table.english_id(t.surface));

  for (std::size_t j = 0; j < pair.hi.tokens.size(); ++j) {
    Link link;
    link.hindi_index = j;
    const auto h = table.hindi_id(pair.hi.tokens[j].surface);
    if (!h) {
      link.posterior = 1.0;
      result.links.push_back(link);
      continue;
    }
    const double null_p = table.prob(*h, TranslationTable::kNull);
    double total = null_p;
    double best = 0.0;
    std::optional<std::size_t> best_index;
    for (std::size_t i = 0; i < en_ids.size(); ++i) {
      const double p = en_ids[i] ? table.prob(*h, *en_ids[i]) : 0.0;
      total += p;
      if (p > 0.0 && (!best_index || p > best)) {
        best = p;
        best_index = i;
      }
    }
    if (best_index && best >= null_p) {
      link.english_index = best_index;
      link.posterior = best / total;
    } else {
      link.posterior = total > 0.0 ? null_p / total : 1.0;
    }
    result.links.push_back(link);
  }
  return result;
}

std::string format_links(const AlignmentLinks& links) {
  std::string out = links.pair_id;
  out.push_back('\t');
  for (std::size_t k = 0; k < links.links.size(); ++k) {
    if (k) out.push_back(' ');
    const auto& l = links.links[k];
    out += std::to_string(l.hindi_index);
    out.push_back('-');
    out += l.english_index ? std::to_string(*l.english_index) : std::string(kNullWord);
  }
  return out;
}

std::vector<ExtractedPair> extract_pairs(const std::vector<ParallelPair>& corpus,
                                         const std::vector<AlignmentLinks>& links, const TranslationTable& table,
                                         std::size_t min_count, double min_prob) {
  std::unordered_map<std::string, const ParallelPair*> by_id;
  for (const auto& p : corpus) by_id.emplace(p.id, &p);

  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (const auto& al : links) {
    const auto it = by_id.find(al.pair_id);
    if (it == by_id.end()) continue;
    const auto& pair = *it->second;
    for (const auto& l : al.links) {
      if (!l.english_index) continue;
      if (l.hindi_index >= pair.hi.size() || *l.english_index >= pair.en.size()) continue;
      ++counts[{utf8::ascii_lower(pair.en.tokens[*l.english_index].surface), pair.hi.tokens[l.hindi_index].surface}];
    }
  }

  std::vector<ExtractedPair> out;
  for (const auto& [key, count] : counts) {
    if (count < min_count) continue;
    const double p = table.prob(key.second, key.first);
    if (p < min_prob) continue;
    out.push_back({key.first, key.second, count, p});
  }
  return out;
}

}  // namespace hinge::align
