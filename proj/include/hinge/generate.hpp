#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hinge/corpus.hpp"
#include "hinge/keyphrase.hpp"
#include "hinge/lexicon.hpp"
#include "hinge/translit.hpp"

namespace hinge::generate {

using PosLexicon = std::unordered_map<std::string, std::string>;

// TSV word<TAB>TAG; words are lowercased.
PosLexicon load_pos_lexicon(const std::string& path);

// Lexicon hit, else suffix rules (-tion/-ness/-ment/-ity -> NOUN,
// -ous/-ful/-ive/-al -> ADJ), else OTHER. Only letter tokens are tagged
// by rule; punctuation is OTHER.
std::string tag_word(const Token& token, const PosLexicon& lexicon);
Sentence tag_pos_en(const Sentence& sentence, const PosLexicon& lexicon);

enum class PosSource { Provided, LexiconHeuristic };

struct GenerationConfig {
  // Provided: keep tags already on the tokens, tag only the untagged ones.
  PosSource pos_source = PosSource::LexiconHeuristic;
  PosLexicon pos_lexicon;
  std::set<std::string> wac_pos_set{"NOUN", "ADJ"};
  std::size_t pac_max_n = 3;
  const keyphrase::Stopwords* stopwords = nullptr;  // default list when null
};

// One replaced Hindi range and the English range that replaced it.
struct Replacement {
  std::size_t hi_start = 0;
  std::size_t hi_end = 0;
  std::size_t en_start = 0;
  std::size_t en_end = 0;

  bool operator==(const Replacement&) const = default;
};

struct Outcome {
  GeneratedSentence sentence;
  std::vector<Replacement> replacements;  // in the order they were applied
  std::size_t unmapped = 0;               // transliteration fallbacks
};

// Word-aligned code-mixing. English tokens must carry POS tags; untagged
// tokens count as OTHER.
Outcome generate_wac(const ParallelPair& pair, const lexicon::BilingualDictionary& dict,
                     const GenerationConfig& config, const translit::TranslitTable& table);

// Phrase-aligned code-mixing over English keyphrases of up to pac_max_n tokens.
Outcome generate_pac(const ParallelPair& pair, const lexicon::BilingualDictionary& dict,
                     const GenerationConfig& config, const translit::TranslitTable& table);

enum class MethodSelection { WAC, PAC, Both };

struct CorpusSummary {
  std::size_t outputs = 0;
  std::size_t zero_replacement = 0;
  std::size_t hindi_tokens = 0;
  std::size_t replaced_hindi_tokens = 0;
  std::size_t unmapped = 0;

  double replacement_rate() const {
    return hindi_tokens ? static_cast<double>(replaced_hindi_tokens) / static_cast<double>(hindi_tokens) : 0.0;
  }
};

struct CorpusOutcome {
  std::vector<GeneratedSentence> sentences;  // pair-major: WAC before PAC
  std::vector<std::vector<Replacement>> replacements;
  CorpusSummary summary;
};

// Tags the English side per config.pos_source, then generates. Output order
// does not depend on the thread count.
CorpusOutcome generate_corpus(const std::vector<ParallelPair>& pairs, MethodSelection method,
                              const lexicon::BilingualDictionary& dict, const GenerationConfig& config,
                              const translit::TranslitTable& table, std::size_t threads = 1);

}  // namespace hinge::generate
