#include "hinge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "hinge/error.hpp"
#include "hinge/utf8.hpp"

namespace hinge::metrics {

namespace {

using NgramCounts = std::map<Tokens, double>;

NgramCounts ngram_counts(const Tokens& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin() + static_cast<std::ptrdiff_t>(i + n))] += 1.0;
  }
  return counts;
}

// max count of each n-gram over the references
NgramCounts max_ref_counts(const std::vector<Tokens>& refs, std::size_t n) {
  NgramCounts best;
  for (const auto& r : refs) {
    for (const auto& [g, c] : ngram_counts(r, n)) {
      auto& slot = best[g];
      slot = std::max(slot, c);
    }
  }
  return best;
}

double closest_ref_length(double hyp_length, const std::vector<Tokens>& refs) {
  double best = std::numeric_limits<double>::infinity();
  double best_diff = std::numeric_limits<double>::infinity();
  for (const auto& r : refs) {
    const double len = static_cast<double>(r.size());
    const double diff = std::abs(len - hyp_length);
    if (diff < best_diff || (diff == best_diff && len < best)) {
      best = len;
      best_diff = diff;
    }
  }
  return refs.empty() ? 0.0 : best;
}

double average_ref_length(const std::vector<Tokens>& refs) {
  if (refs.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : refs) total += static_cast<double>(r.size());
  return total / static_cast<double>(refs.size());
}

std::vector<int> to_ids(const Tokens& tokens, std::unordered_map<std::string, int>& vocab) {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    ids.push_back(vocab.try_emplace(t, static_cast<int>(vocab.size())).first->second);
  }
  return ids;
}

std::size_t levenshtein(const std::vector<int>& a, const std::vector<int>& b, std::vector<std::size_t>& row) {
  row.resize(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

bool occurs_in(const std::vector<int>& ref, const int* block, std::size_t len) {
  if (len > ref.size()) return false;
  for (std::size_t j = 0; j + len <= ref.size(); ++j) {
    if (std::equal(block, block + len, ref.begin() + static_cast<std::ptrdiff_t>(j))) return true;
  }
  return false;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

// ---------------------------------------------------------------------------
// BLEU

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  if (matches.size() < other.matches.size()) {
    matches.resize(other.matches.size(), 0.0);
    totals.resize(other.totals.size(), 0.0);
  }
  for (std::size_t n = 0; n < other.matches.size(); ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

BleuStats bleu_stats(const Tokens& hyp, const std::vector<Tokens>& refs, std::size_t max_n) {
  if (refs.empty()) throw std::invalid_argument("BLEU needs at least one reference");
  BleuStats s;
  s.matches.assign(max_n, 0.0);
  s.totals.assign(max_n, 0.0);
  s.hyp_length = static_cast<double>(hyp.size());
  s.ref_length = closest_ref_length(s.hyp_length, refs);
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto ref_max = max_ref_counts(refs, n);
    for (const auto& [g, c] : ngram_counts(hyp, n)) {
      const auto it = ref_max.find(g);
      if (it != ref_max.end()) s.matches[n - 1] += std::min(c, it->second);
      s.totals[n - 1] += c;
    }
  }
  return s;
}

double bleu_from_stats(const BleuStats& stats, BleuSmoothing smoothing) {
  if (stats.hyp_length == 0.0 || stats.matches.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < stats.matches.size(); ++n) {
    double p = stats.totals[n] > 0.0 ? stats.matches[n] / stats.totals[n] : 0.0;
    if (p == 0.0) {
      if (smoothing == BleuSmoothing::None) return 0.0;
      p = kBleuEpsilon;
    }
    log_sum += std::log(p);
  }
  const double bp = stats.hyp_length < stats.ref_length ? std::exp(1.0 - stats.ref_length / stats.hyp_length) : 1.0;
  return bp * std::exp(log_sum / static_cast<double>(stats.matches.size()));
}

double bleu(const Tokens& hyp, const std::vector<Tokens>& refs, std::size_t max_n, BleuSmoothing smoothing) {
  if (hyp.empty()) return 0.0;
  return bleu_from_stats(bleu_stats(hyp, refs, max_n), smoothing);
}

// ---------------------------------------------------------------------------
// NIST

NistInfo::NistInfo(const std::vector<std::vector<Tokens>>& reference_sets, std::size_t max_n) : max_n_(max_n) {
  for (const auto& refs : reference_sets) {
    for (const auto& r : refs) {
      total_words_ += static_cast<double>(r.size());
      for (std::size_t n = 1; n <= max_n; ++n) {
        for (const auto& [g, c] : ngram_counts(r, n)) counts_[g] += c;
      }
    }
  }
}

double NistInfo::info(const Tokens& ngram) const {
  if (ngram.empty()) return 0.0;
  const auto it = counts_.find(ngram);
  if (it == counts_.end()) return 0.0;
  double prefix = total_words_;
  if (ngram.size() > 1) {
    const auto pit = counts_.find(Tokens(ngram.begin(), ngram.end() - 1));
    prefix = pit == counts_.end() ? 0.0 : pit->second;
  }
  return std::log2(prefix / it->second);
}

NistStats& NistStats::operator+=(const NistStats& other) {
  if (info.size() < other.info.size()) {
    info.resize(other.info.size(), 0.0);
    totals.resize(other.totals.size(), 0.0);
  }
  for (std::size_t n = 0; n < other.info.size(); ++n) {
    info[n] += other.info[n];
    totals[n] += other.totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

NistStats nist_stats(const Tokens& hyp, const std::vector<Tokens>& refs, const NistInfo& info) {
  if (refs.empty()) throw std::invalid_argument("NIST needs at least one reference");
  const std::size_t max_n = info.max_n();
  NistStats s;
  s.info.assign(max_n, 0.0);
  s.totals.assign(max_n, 0.0);
  s.hyp_length = static_cast<double>(hyp.size());
  s.ref_length = average_ref_length(refs);
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto ref_max = max_ref_counts(refs, n);
    for (const auto& [g, c] : ngram_counts(hyp, n)) {
      s.totals[n - 1] += c;
      const auto it = ref_max.find(g);
      if (it != ref_max.end()) s.info[n - 1] += std::min(c, it->second) * info.info(g);
    }
  }
  return s;
}

double nist_brevity(double hyp_length, double ref_length) {
  if (ref_length <= 0.0) return 1.0;
  const double ratio = hyp_length / ref_length;
  if (ratio >= 1.0) return 1.0;
  if (ratio <= 0.0) return 0.0;
  const double beta = -std::log(0.5) / (std::log(1.5) * std::log(1.5));
  return std::exp(-beta * std::log(ratio) * std::log(ratio));
}

double nist_from_stats(const NistStats& stats) {
  if (stats.hyp_length == 0.0) return 0.0;
  double score = 0.0;
  for (std::size_t n = 0; n < stats.info.size(); ++n) {
    if (stats.totals[n] > 0.0) score += stats.info[n] / stats.totals[n];
  }
  return score * nist_brevity(stats.hyp_length, stats.ref_length);
}

double nist(const Tokens& hyp, const std::vector<Tokens>& refs, const NistInfo& info) {
  if (hyp.empty()) return 0.0;
  return nist_from_stats(nist_stats(hyp, refs, info));
}

// ---------------------------------------------------------------------------
// WER / TER

std::size_t edit_distance(const Tokens& a, const Tokens& b) {
  std::unordered_map<std::string, int> vocab;
  const auto ia = to_ids(a, vocab);
  const auto ib = to_ids(b, vocab);
  std::vector<std::size_t> row;
  return levenshtein(ia, ib, row);
}

double wer(const Tokens& hyp, const Tokens& ref) {
  if (ref.empty()) throw std::invalid_argument("WER needs a non-empty reference");
  return static_cast<double>(edit_distance(hyp, ref)) / static_cast<double>(ref.size());
}

double wer(const Tokens& hyp, const std::vector<Tokens>& refs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : refs) {
    if (!r.empty()) best = std::min(best, wer(hyp, r));
  }
  if (!std::isfinite(best)) throw std::invalid_argument("WER needs a non-empty reference");
  return best;
}

TerEdits ter_edits(const Tokens& hyp, const Tokens& ref, std::size_t max_block) {
  std::unordered_map<std::string, int> vocab;
  std::vector<int> cur = to_ids(hyp, vocab);
  const std::vector<int> target = to_ids(ref, vocab);
  std::vector<std::size_t> row;
  TerEdits result;
  std::size_t distance = levenshtein(cur, target, row);

  std::vector<int> rest;
  std::vector<int> candidate;
  while (distance > 1) {
    std::size_t best_distance = distance;
    std::vector<int> best;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t len = 1; len <= max_block && i + len <= cur.size(); ++len) {
        // longer blocks starting at i cannot occur if this one does not
        if (!occurs_in(target, cur.data() + i, len)) break;
        rest.assign(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(i));
        rest.insert(rest.end(), cur.begin() + static_cast<std::ptrdiff_t>(i + len), cur.end());
        for (std::size_t k = 0; k <= rest.size(); ++k) {
          if (k == i) continue;  // block back where it was
          candidate.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(k));
          candidate.insert(candidate.end(), cur.begin() + static_cast<std::ptrdiff_t>(i),
                           cur.begin() + static_cast<std::ptrdiff_t>(i + len));
          candidate.insert(candidate.end(), rest.begin() + static_cast<std::ptrdiff_t>(k), rest.end());
          const std::size_t d = levenshtein(candidate, target, row);
          if (d + 1 < best_distance) {
            best_distance = d + 1;
            best = candidate;
          }
        }
      }
    }
    if (best.empty()) break;
    cur = std::move(best);
    distance = best_distance - 1;
    ++result.shifts;
  }
  result.edits = distance;
  return result;
}

double ter(const Tokens& hyp, const std::vector<Tokens>& refs, std::size_t max_block) {
  if (refs.empty()) throw std::invalid_argument("TER needs at least one reference");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& r : refs) best = std::min(best, ter_edits(hyp, r, max_block).total());
  const double avg = average_ref_length(refs);
  if (avg == 0.0) return best == 0 ? 0.0 : static_cast<double>(best);
  return static_cast<double>(best) / avg;
}

// ---------------------------------------------------------------------------
// Embedding greedy match

std::optional<double> embed_score(const Tokens& hyp, const Tokens& ref, const embed::VectorStore& vectors) {
  if (hyp.empty() || ref.empty()) return std::nullopt;
  auto rows_of = [&](const Tokens& side) {
    std::vector<std::optional<std::size_t>> rows;
    rows.reserve(side.size());
    for (const auto& t : side) {
      auto r = vectors.index(t);
      if (r && !vectors.usable(*r)) r.reset();
      rows.push_back(r);
    }
    return rows;
  };
  const auto hyp_rows = rows_of(hyp);
  const auto ref_rows = rows_of(ref);

  std::vector<std::vector<double>> sim(hyp.size(), std::vector<double>(ref.size(), 0.0));
  bool hyp_grounded = false;
  bool ref_grounded = false;
  std::vector<bool> ref_matched(ref.size(), false);
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (hyp_rows[i]) hyp_grounded = true;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      double s = 0.0;
      if (hyp[i] == ref[j]) {
        s = 1.0;
        hyp_grounded = true;
        ref_matched[j] = true;
      } else if (hyp_rows[i] && ref_rows[j]) {
        s = vectors.row(*hyp_rows[i]).dot(vectors.row(*ref_rows[j]));
      }
      sim[i][j] = std::clamp(s, 0.0, 1.0);
    }
  }
  for (std::size_t j = 0; j < ref.size(); ++j) {
    if (ref_rows[j] || ref_matched[j]) ref_grounded = true;
  }
  if (!hyp_grounded || !ref_grounded) return std::nullopt;

  double precision = 0.0;
  for (std::size_t i = 0; i < hyp.size(); ++i) precision += *std::max_element(sim[i].begin(), sim[i].end());
  precision /= static_cast<double>(hyp.size());
  double recall = 0.0;
  for (std::size_t j = 0; j < ref.size(); ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < hyp.size(); ++i) best = std::max(best, sim[i][j]);
    recall += best;
  }
  recall /= static_cast<double>(ref.size());
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

std::optional<double> embed_score(const Tokens& hyp, const std::vector<Tokens>& refs,
                                  const embed::VectorStore& vectors) {
  std::optional<double> best;
  for (const auto& r : refs) {
    const auto s = embed_score(hyp, r, vectors);
    if (s && (!best || *s > *best)) best = s;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Corpus

ScoreReport score_corpus(const std::vector<Tokens>& hyps, const std::vector<std::vector<Tokens>>& reference_sets,
                         const embed::VectorStore* vectors, const MetricConfig& config, std::size_t threads) {
  if (hyps.size() != reference_sets.size()) {
    throw std::invalid_argument("hypothesis count " + std::to_string(hyps.size()) +
                                " does not match reference set count " + std::to_string(reference_sets.size()));
  }
  for (const auto& refs : reference_sets) {
    if (refs.empty()) throw std::invalid_argument("every hypothesis needs at least one reference");
  }
  const NistInfo info(reference_sets, config.nist_max_n);

  struct Partial {
    SentenceScore score;
    BleuStats bleu;
    NistStats nist;
    double wer_edits = 0.0;
    double wer_length = 0.0;
    double ter_edits = 0.0;
    double ter_length = 0.0;
  };
  std::vector<Partial> parts(hyps.size());
  parallel_for(hyps.size(), threads, [&](std::size_t k) {
    const auto& hyp = hyps[k];
    const auto& refs = reference_sets[k];
    auto& p = parts[k];
    p.bleu = bleu_stats(hyp, refs, config.bleu_max_n);
    p.score.bleu = hyp.empty() ? 0.0 : bleu_from_stats(p.bleu, config.smoothing);
    p.nist = nist_stats(hyp, refs, info);
    p.score.nist = nist_from_stats(p.nist);

    double best_wer = std::numeric_limits<double>::infinity();
    for (const auto& r : refs) {
      if (r.empty()) continue;
      const double d = static_cast<double>(edit_distance(hyp, r));
      const double w = d / static_cast<double>(r.size());
      if (w < best_wer) {
        best_wer = w;
        p.wer_edits = d;
        p.wer_length = static_cast<double>(r.size());
      }
    }
    if (!std::isfinite(best_wer)) throw std::invalid_argument("WER needs a non-empty reference");
    p.score.wer = best_wer;

    std::size_t best_ter = std::numeric_limits<std::size_t>::max();
    for (const auto& r : refs) best_ter = std::min(best_ter, ter_edits(hyp, r, config.ter_max_block).total());
    p.ter_edits = static_cast<double>(best_ter);
    p.ter_length = average_ref_length(refs);
    p.score.ter = p.ter_length > 0.0 ? p.ter_edits / p.ter_length : p.ter_edits;

    if (vectors) p.score.embed = embed_score(hyp, refs, *vectors);
  });

  ScoreReport report;
  BleuStats bleu_total;
  NistStats nist_total;
  double wer_edits = 0.0, wer_length = 0.0, ter_edits_sum = 0.0, ter_length = 0.0;
  double embed_sum = 0.0;
  std::size_t embed_count = 0;
  for (auto& p : parts) {
    bleu_total += p.bleu;
    nist_total += p.nist;
    wer_edits += p.wer_edits;
    wer_length += p.wer_length;
    ter_edits_sum += p.ter_edits;
    ter_length += p.ter_length;
    if (p.score.embed) {
      embed_sum += *p.score.embed;
      ++embed_count;
    }
    report.sentences.push_back(p.score);
  }
  report.corpus.bleu = bleu_from_stats(bleu_total, config.smoothing);
  report.corpus.nist = nist_from_stats(nist_total);
  report.corpus.wer = wer_length > 0.0 ? wer_edits / wer_length : 0.0;
  report.corpus.ter = ter_length > 0.0 ? ter_edits_sum / ter_length : 0.0;
  if (embed_count) report.corpus.embed = embed_sum / static_cast<double>(embed_count);
  return report;
}

}  // namespace hinge::metrics

namespace hinge::metrics {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double parse_number(const std::string& field, const std::string& path, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used == field.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(path, line_no, "bad number '" + field + "'");
}

}  // namespace

Tokens surfaces(const std::vector<Token>& tokens, bool lowercase) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(lowercase ? utf8::ascii_lower(t.surface) : t.surface);
  return out;
}

void save_report(const std::string& path, const std::vector<std::string>& sentence_ids, const ScoreReport& report) {
  if (sentence_ids.size() != report.sentences.size()) throw std::invalid_argument("sentence id count mismatch");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  auto row = [&](const std::string& id, const SentenceScore& s) {
    out << id << '\t' << fixed6(s.bleu) << '\t' << fixed6(s.nist) << '\t' << fixed6(s.wer) << '\t' << fixed6(s.ter)
        << '\t' << (s.embed ? fixed6(*s.embed) : "NA") << '\n';
  };
  out << "sentence_id\tbleu\tnist\twer\tter\tembed\n";
  for (std::size_t k = 0; k < sentence_ids.size(); ++k) row(sentence_ids[k], report.sentences[k]);
  row("#CORPUS", report.corpus);
}

LoadedReport load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  LoadedReport loaded;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (line_no == 1 && !f.empty() && f[0] == "sentence_id") continue;
    if (f.size() != 6) throw ParseError(path, line_no, "expected 6 columns");
    SentenceScore s;
    s.bleu = parse_number(f[1], path, line_no);
    s.nist = parse_number(f[2], path, line_no);
    s.wer = parse_number(f[3], path, line_no);
    s.ter = parse_number(f[4], path, line_no);
    if (f[5] != "NA") s.embed = parse_number(f[5], path, line_no);
    if (f[0] == "#CORPUS") {
      loaded.corpus = s;
      continue;
    }
    if (!loaded.sentences.emplace(f[0], s).second) throw ParseError(path, line_no, "duplicate sentence id " + f[0]);
    loaded.ids.push_back(f[0]);
  }
  return loaded;
}

}  // namespace hinge::metrics
