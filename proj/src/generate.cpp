#include "hinge/generate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "hinge/error.hpp"
#include "hinge/utf8.hpp"

namespace hinge::generate {

namespace {

bool ends_with(std::string_view word, std::string_view suffix) {
  // the stem must keep at least two characters
  return word.size() >= suffix.size() + 2 && word.substr(word.size() - suffix.size()) == suffix;
}

// Assembles the output from the Hindi sentence: replaced ranges take the
// English tokens, everything else is transliterated or copied.
Outcome assemble(const ParallelPair& pair, Method method, std::vector<Replacement> replacements,
                 const translit::TranslitTable& table) {
  Outcome out;
  out.sentence.pair_id = pair.id;
  out.sentence.method = method;

  std::vector<const Replacement*> starting_at(pair.hi.size(), nullptr);
  for (const auto& r : replacements) starting_at[r.hi_start] = &r;

  std::size_t i = 0;
  while (i < pair.hi.size()) {
    const std::size_t first = out.sentence.tokens.size();
    if (const Replacement* r = starting_at[i]) {
      for (std::size_t k = r->en_start; k < r->en_end; ++k) out.sentence.tokens.push_back(pair.en.tokens[k]);
      out.sentence.spans.push_back({first, out.sentence.tokens.size(), Origin::EmbeddedEnglish});
      i = r->hi_end;
      continue;
    }
    const Token& h = pair.hi.tokens[i];
    if (utf8::contains_devanagari(h.surface)) {
      auto r = translit::transliterate_token(h.surface, table);
      out.unmapped += r.unmapped;
      out.sentence.tokens.push_back(make_token(std::move(r.roman)));
      out.sentence.spans.push_back({first, first + 1, Origin::TransliteratedHindi});
    } else {
      out.sentence.tokens.push_back(h);
      out.sentence.spans.push_back({first, first + 1, Origin::Verbatim});
    }
    ++i;
  }
  for (auto& t : out.sentence.tokens) t.pos.reset();
  out.replacements = std::move(replacements);
  return out;
}

}  // namespace

PosLexicon load_pos_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  PosLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path, line_no, "expected word<TAB>TAG");
    }
    lexicon.emplace(utf8::ascii_lower(fields[0]), fields[1]);
  }
  return lexicon;
}

std::string tag_word(const Token& token, const PosLexicon& lexicon) {
  if (token.script != Script::Latin) return std::string(pos::kOther);
  const auto word = utf8::ascii_lower(token.surface);
  if (const auto it = lexicon.find(word); it != lexicon.end()) return it->second;
  for (std::string_view s : {"tion", "ness", "ment", "ity"}) {
    if (ends_with(word, s)) return std::string(pos::kNoun);
  }
  for (std::string_view s : {"ous", "ful", "ive", "al"}) {
    if (ends_with(word, s)) return std::string(pos::kAdj);
  }
  return std::string(pos::kOther);
}

Sentence tag_pos_en(const Sentence& sentence, const PosLexicon& lexicon) {
  Sentence out = sentence;
  for (auto& t : out.tokens) t.pos = tag_word(t, lexicon);
  return out;
}

Outcome generate_wac(const ParallelPair& pair, const lexicon::BilingualDictionary& dict,
                     const GenerationConfig& config, const translit::TranslitTable& table) {
  const std::size_t len_hi = pair.hi.size();
  const std::size_t len_en = pair.en.size();

  std::vector<std::set<std::string>> translations(len_en);
  std::vector<bool> eligible(len_en, false);
  for (std::size_t j = 0; j < len_en; ++j) {
    const auto& e = pair.en.tokens[j];
    if (e.script != Script::Latin) continue;
    const std::string tag = e.pos ? *e.pos : std::string(pos::kOther);
    if (!config.wac_pos_set.count(tag)) continue;
    translations[j] = dict.lookup(e.surface);
    eligible[j] = !translations[j].empty();
  }

  std::vector<bool> consumed(len_en, false);
  std::vector<Replacement> replacements;
  for (std::size_t i = 0; i < len_hi; ++i) {
    const auto& h = pair.hi.tokens[i];
    if (h.script != Script::Devanagari) continue;
    const double rel_i = static_cast<double>(i) / static_cast<double>(len_hi);
    std::optional<std::size_t> best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < len_en; ++j) {
      if (!eligible[j] || consumed[j] || !translations[j].count(h.surface)) continue;
      const double distance = std::abs(rel_i - static_cast<double>(j) / static_cast<double>(len_en));
      if (distance < best_distance) {
        best_distance = distance;
        best = j;
      }
    }
    if (!best) continue;
    consumed[*best] = true;
    replacements.push_back({i, i + 1, *best, *best + 1});
  }
  return assemble(pair, Method::WAC, std::move(replacements), table);
}

Outcome generate_pac(const ParallelPair& pair, const lexicon::BilingualDictionary& dict,
                     const GenerationConfig& config, const translit::TranslitTable& table) {
  if (config.pac_max_n < 1 || config.pac_max_n > 3) throw std::invalid_argument("pac_max_n must be 1, 2 or 3");
  const auto& stopwords = config.stopwords ? *config.stopwords : keyphrase::default_stopwords();
  auto phrases = keyphrase::extract(pair.en.tokens, config.pac_max_n, std::numeric_limits<std::size_t>::max(),
                                    stopwords);
  // longest first, then most important; extract() already orders by score
  std::stable_sort(phrases.begin(), phrases.end(),
                   [](const keyphrase::Keyphrase& a, const keyphrase::Keyphrase& b) {
                     return a.tokens.size() > b.tokens.size();
                   });

  const std::size_t len_hi = pair.hi.size();
  std::vector<bool> taken(len_hi, false);
  std::vector<Replacement> replacements;
  for (const auto& kp : phrases) {
    const std::size_t n = kp.tokens.size();
    if (n > len_hi) continue;
    std::vector<std::set<std::string>> translations;
    translations.reserve(n);
    bool translatable = true;
    for (const auto& w : kp.tokens) {
      translations.push_back(dict.lookup(w));
      if (translations.back().empty()) translatable = false;
    }
    if (!translatable) continue;
    for (std::size_t s = 0; s + n <= len_hi; ++s) {
      bool match = true;
      for (std::size_t k = 0; k < n && match; ++k) {
        match = !taken[s + k] && translations[k].count(pair.hi.tokens[s + k].surface) > 0;
      }
      if (!match) continue;
      for (std::size_t k = 0; k < n; ++k) taken[s + k] = true;
      replacements.push_back({s, s + n, kp.start, kp.end});
      break;
    }
  }
  return assemble(pair, Method::PAC, std::move(replacements), table);
}

CorpusOutcome generate_corpus(const std::vector<ParallelPair>& pairs, MethodSelection method,
                              const lexicon::BilingualDictionary& dict, const GenerationConfig& config,
                              const translit::TranslitTable& table, std::size_t threads) {
  const bool wac = method != MethodSelection::PAC;
  const bool pac = method != MethodSelection::WAC;
  const std::size_t per_pair = (wac ? 1 : 0) + (pac ? 1 : 0);

  std::vector<Outcome> outcomes(pairs.size() * per_pair);
  auto work = [&](std::size_t n) {
    ParallelPair pair = pairs[n];
    for (auto& t : pair.en.tokens) {
      if (config.pos_source == PosSource::LexiconHeuristic || !t.pos) t.pos = tag_word(t, config.pos_lexicon);
    }
    std::size_t slot = n * per_pair;
    if (wac) outcomes[slot++] = generate_wac(pair, dict, config, table);
    if (pac) outcomes[slot] = generate_pac(pair, dict, config, table);
  };

  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(pairs.size(), 1));
  if (threads == 1) {
    for (std::size_t n = 0; n < pairs.size(); ++n) work(n);
  } else {
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t n = w; n < pairs.size(); n += threads) work(n);
      });
    }
    for (auto& t : workers) t.join();
  }

  CorpusOutcome result;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    auto& o = outcomes[k];
    const auto& pair = pairs[k / per_pair];
    auto& s = result.summary;
    ++s.outputs;
    s.unmapped += o.unmapped;
    s.hindi_tokens += pair.hi.size();
    std::size_t replaced = 0;
    for (const auto& r : o.replacements) replaced += r.hi_end - r.hi_start;
    s.replaced_hindi_tokens += replaced;
    if (replaced == 0) ++s.zero_replacement;
    result.sentences.push_back(std::move(o.sentence));
    result.replacements.push_back(std::move(o.replacements));
  }
  return result;
}

}  // namespace hinge::generate
