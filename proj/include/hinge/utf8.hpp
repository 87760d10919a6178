#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hinge::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Invalid sequences decode to U+FFFD, one per offending byte.
std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

inline bool is_devanagari_block(char32_t cp) { return cp >= 0x0900 && cp <= 0x097F; }

bool is_space(char32_t cp);
bool is_punct(char32_t cp);
bool is_latin_letter(char32_t cp);
// Letters of the Devanagari block; dandas, digits and the abbreviation sign are excluded.
bool is_devanagari_letter(char32_t cp);

bool contains_devanagari(std::string_view text);

// ASCII-only case folding; other bytes are copied unchanged.
std::string ascii_lower(std::string_view text);

}  // namespace hinge::utf8
