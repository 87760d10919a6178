#include "hinge/translit.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <utility>

#include "hinge/error.hpp"
#include "hinge/utf8.hpp"

namespace hinge::translit {

namespace {

struct Entry {
  char32_t cp;
  const char* roman;
};

// clang-format off
constexpr std::array<Entry, 128> kBuiltin = {{
  {0x0900, "n"},  {0x0901, "n"},   {0x0902, "n"},  {0x0903, "h"},
  {0x0904, "a"},  {0x0905, "a"},   {0x0906, "aa"}, {0x0907, "i"},
  {0x0908, "ee"}, {0x0909, "u"},   {0x090A, "oo"}, {0x090B, "ri"},
  {0x090C, "lri"},{0x090D, "e"},   {0x090E, "e"},  {0x090F, "e"},
  {0x0910, "ai"}, {0x0911, "o"},   {0x0912, "o"},  {0x0913, "o"},
  {0x0914, "au"}, {0x0915, "k"},   {0x0916, "kh"}, {0x0917, "g"},
  {0x0918, "gh"}, {0x0919, "n"},   {0x091A, "ch"}, {0x091B, "chh"},
  {0x091C, "j"},  {0x091D, "jh"},  {0x091E, "n"},  {0x091F, "t"},
  {0x0920, "th"}, {0x0921, "d"},   {0x0922, "dh"}, {0x0923, "n"},
  {0x0924, "t"},  {0x0925, "th"},  {0x0926, "d"},  {0x0927, "dh"},
  {0x0928, "n"},  {0x0929, "n"},   {0x092A, "p"},  {0x092B, "ph"},
  {0x092C, "b"},  {0x092D, "bh"},  {0x092E, "m"},  {0x092F, "y"},
  {0x0930, "r"},  {0x0931, "r"},   {0x0932, "l"},  {0x0933, "l"},
  {0x0934, "l"},  {0x0935, "v"},   {0x0936, "sh"}, {0x0937, "sh"},
  {0x0938, "s"},  {0x0939, "h"},   {0x093A, "o"},  {0x093B, "oo"},
  {0x093C, ""},   {0x093D, ""},    {0x093E, "a"},  {0x093F, "i"},
  {0x0940, "i"},  {0x0941, "u"},   {0x0942, "u"},  {0x0943, "ri"},
  {0x0944, "ri"}, {0x0945, "e"},   {0x0946, "e"},  {0x0947, "e"},
  {0x0948, "ai"}, {0x0949, "o"},   {0x094A, "o"},  {0x094B, "o"},
  {0x094C, "au"}, {0x094D, ""},    {0x094E, "e"},  {0x094F, "aw"},
  {0x0950, "om"}, {0x0951, ""},    {0x0952, ""},   {0x0953, ""},
  {0x0954, ""},   {0x0955, "e"},   {0x0956, "ue"}, {0x0957, "uue"},
  {0x0958, "q"},  {0x0959, "kh"},  {0x095A, "g"},  {0x095B, "z"},
  {0x095C, "d"},  {0x095D, "dh"},  {0x095E, "f"},  {0x095F, "y"},
  {0x0960, "ri"}, {0x0961, "lri"}, {0x0962, "lri"},{0x0963, "lri"},
  {0x0964, "."},  {0x0965, "."},   {0x0966, "0"},  {0x0967, "1"},
  {0x0968, "2"},  {0x0969, "3"},   {0x096A, "4"},  {0x096B, "5"},
  {0x096C, "6"},  {0x096D, "7"},   {0x096E, "8"},  {0x096F, "9"},
  {0x0970, "."},  {0x0971, ""},    {0x0972, "a"},  {0x0973, "oe"},
  {0x0974, "oo"}, {0x0975, "aw"},  {0x0976, "ue"}, {0x0977, "uue"},
  {0x0978, "d"},  {0x0979, "zh"},  {0x097A, "y"},  {0x097B, "g"},
  {0x097C, "j"},  {0x097D, ""},    {0x097E, "d"},  {0x097F, "b"},
}};
// clang-format on

// Base consonant + nukta -> precomposed nukta consonant.
char32_t precomposed_nukta(char32_t base) {
  switch (base) {
    case 0x0915: return 0x0958;
    case 0x0916: return 0x0959;
    case 0x0917: return 0x095A;
    case 0x091C: return 0x095B;
    case 0x0921: return 0x095C;
    case 0x0922: return 0x095D;
    case 0x092B: return 0x095E;
    case 0x092F: return 0x095F;
    default: return 0;
  }
}

bool is_labial(char32_t cp) { return cp >= 0x092A && cp <= 0x092E; }

bool is_joiner(char32_t cp) { return cp == 0x200C || cp == 0x200D; }

bool valid_roman(const std::string& roman) {
  for (char c : roman) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || (c >= 'A' && c <= 'Z') || u < 0x21) return false;
  }
  return true;
}

char32_t parse_codepoint(const std::string& field) {
  if (field.size() > 2 && (field[0] == 'U' || field[0] == 'u') && field[1] == '+') {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(field.substr(2), &used, 16);
      if (used == field.size() - 2) return static_cast<char32_t>(v);
    } catch (const std::exception&) {
    }
    return 0;
  }
  const auto cps = utf8::decode(field);
  return cps.size() == 1 ? cps[0] : 0;
}

}  // namespace

SignClass classify(char32_t cp) {
  if ((cp >= 0x0915 && cp <= 0x0939) || (cp >= 0x0958 && cp <= 0x095F) || (cp >= 0x0978 && cp <= 0x097F)) {
    return SignClass::Consonant;
  }
  if ((cp >= 0x0904 && cp <= 0x0914) || cp == 0x0960 || cp == 0x0961 || (cp >= 0x0972 && cp <= 0x0977)) {
    return SignClass::IndependentVowel;
  }
  if (cp == 0x093A || cp == 0x093B || (cp >= 0x093E && cp <= 0x094C) || cp == 0x094E || cp == 0x094F ||
      (cp >= 0x0955 && cp <= 0x0957) || cp == 0x0962 || cp == 0x0963) {
    return SignClass::VowelSign;
  }
  switch (cp) {
    case 0x094D: return SignClass::Virama;
    case 0x093C: return SignClass::Nukta;
    case 0x0902: return SignClass::Anusvara;
    case 0x0900:
    case 0x0901: return SignClass::Candrabindu;
    case 0x0903: return SignClass::Visarga;
    default: return SignClass::Other;
  }
}

TranslitTable TranslitTable::builtin() {
  TranslitTable t;
  for (const auto& e : kBuiltin) t.roman_.emplace(e.cp, e.roman);
  return t;
}

TranslitTable TranslitTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  TranslitTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2) throw ParseError(path, line_no, "expected codepoint<TAB>roman");
    const char32_t cp = parse_codepoint(fields[0]);
    if (!utf8::is_devanagari_block(cp)) throw ParseError(path, line_no, "not a Devanagari code point: " + fields[0]);
    if (!valid_roman(fields[1])) throw ParseError(path, line_no, "romanization must be lowercase ASCII");
    t.roman_[cp] = fields[1];
  }
  for (char32_t cp = 0x0900; cp <= 0x097F; ++cp) {
    if (utf8::is_devanagari_letter(cp) && !t.roman_.count(cp)) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
      throw ParseError(path, 0, std::string("table has no entry for ") + buf);
    }
  }
  return t;
}

void TranslitTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << "# devanagari_codepoint\troman\n";
  for (const auto& [cp, roman] : roman_) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
    std::string glyph;
    utf8::append(glyph, cp);
    out << "# " << glyph << '\n' << buf << '\t' << roman << '\n';
  }
}

const std::string* TranslitTable::find(char32_t cp) const {
  const auto it = roman_.find(cp);
  return it == roman_.end() ? nullptr : &it->second;
}

void TranslitTable::set(char32_t cp, std::string roman) { roman_[cp] = std::move(roman); }

TokenResult transliterate_token(std::string_view surface, const TranslitTable& table) {
  TokenResult result;
  const auto cps = utf8::decode(surface);
  // A consonant was emitted and its inherent vowel is still undecided.
  bool pending_schwa = false;
  auto flush_schwa = [&] {
    if (pending_schwa) result.roman.push_back('a');
    pending_schwa = false;
  };
  auto emit = [&](char32_t cp) {
    if (const auto* r = table.find(cp)) {
      result.roman += *r;
    } else {
      result.roman.push_back('?');
      ++result.unmapped;
    }
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (!utf8::is_devanagari_block(cp)) {
      if (is_joiner(cp)) continue;
      pending_schwa = false;
      if (cp < 0x80) {
        result.roman.push_back(static_cast<char>(cp));
      } else {
        result.roman.push_back('?');
        ++result.unmapped;
      }
      continue;
    }
    switch (classify(cp)) {
      case SignClass::Consonant: {
        flush_schwa();
        char32_t effective = cp;
        if (i + 1 < cps.size() && cps[i + 1] == 0x093C) {
          if (const char32_t pre = precomposed_nukta(cp); pre && table.find(pre)) {
            effective = pre;
            ++i;
          }
        }
        emit(effective);
        pending_schwa = true;
        break;
      }
      case SignClass::VowelSign:
        pending_schwa = false;
        emit(cp);
        break;
      case SignClass::Virama:
        pending_schwa = false;
        break;
      case SignClass::Nukta:
        emit(cp);
        break;
      case SignClass::Anusvara:
        flush_schwa();
        if (i + 1 < cps.size() && is_labial(cps[i + 1])) {
          result.roman.push_back('m');
        } else {
          emit(cp);
        }
        break;
      case SignClass::Candrabindu:
      case SignClass::Visarga:
      case SignClass::IndependentVowel:
        flush_schwa();
        emit(cp);
        break;
      case SignClass::Other:
        pending_schwa = false;
        emit(cp);
        break;
    }
  }
  // word-final schwa is dropped: pending_schwa is simply discarded
  if (result.roman.empty()) {
    result.roman = "?";
    ++result.unmapped;
  }
  return result;
}

Sentence transliterate_sentence(const Sentence& sentence, const TranslitTable& table, std::size_t* unmapped) {
  Sentence out;
  out.tokens.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) {
    if (!utf8::contains_devanagari(token.surface)) {
      out.tokens.push_back(token);
      continue;
    }
    auto r = transliterate_token(token.surface, table);
    if (unmapped) *unmapped += r.unmapped;
    Token t = make_token(std::move(r.roman));
    t.pos = token.pos;
    out.tokens.push_back(std::move(t));
  }
  out.raw = out.text();
  return out;
}

}  // namespace hinge::translit
