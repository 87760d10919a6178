#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "hinge/corpus.hpp"

namespace hinge::translit {

// Orthographic role of a Devanagari code point, fixed by Unicode.
enum class SignClass {
  Consonant,
  IndependentVowel,
  VowelSign,
  Virama,
  Nukta,
  Anusvara,
  Candrabindu,
  Visarga,
  Other,
};

SignClass classify(char32_t cp);

// Devanagari code point -> lowercase ASCII romanization. Vowel signs carry
// the vowel that replaces a consonant's inherent schwa.
class TranslitTable {
 public:
  // Hunterian-style informal romanization ("ghar", "hai", "bada").
  static TranslitTable builtin();

  // TSV `devanagari_codepoint<TAB>roman`; the code point is written either
  // literally or as U+XXXX. '#' starts a comment line. Every Devanagari
  // letter must be mapped.
  static TranslitTable load(const std::string& path);
  void save(const std::string& path) const;

  const std::string* find(char32_t cp) const;
  void set(char32_t cp, std::string roman);
  std::size_t size() const { return roman_.size(); }

  bool operator==(const TranslitTable&) const = default;

 private:
  std::map<char32_t, std::string> roman_;
};

struct TokenResult {
  std::string roman;
  std::size_t unmapped = 0;
};

TokenResult transliterate_token(std::string_view surface, const TranslitTable& table);

// Tokens containing Devanagari code points are romanized; all other tokens
// are copied byte-for-byte. Adds the number of unmapped code points to
// *unmapped when given.
Sentence transliterate_sentence(const Sentence& sentence, const TranslitTable& table,
                                std::size_t* unmapped = nullptr);

}  // namespace hinge::translit
