#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hinge {

enum class Script { Latin, Devanagari, Neutral };

std::string_view to_string(Script script);

namespace pos {
inline constexpr std::string_view kNoun = "NOUN";
inline constexpr std::string_view kAdj = "ADJ";
inline constexpr std::string_view kOther = "OTHER";
}  // namespace pos

struct Token {
  std::string surface;
  Script script = Script::Neutral;
  std::optional<std::string> pos;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string raw;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  std::vector<std::string> surfaces() const;
  // Space-joined surfaces.
  std::string text() const;
};

struct ParallelPair {
  std::string id;
  Sentence en;
  Sentence hi;
};

enum class Method { WAC, PAC, HUMAN };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

enum class Origin { EmbeddedEnglish, TransliteratedHindi, Verbatim };

std::string_view to_string(Origin origin);
std::optional<Origin> parse_origin(std::string_view name);

// Half-open token range [start, end) in a generated sentence.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  Origin origin = Origin::Verbatim;

  bool operator==(const Span&) const = default;
};

struct GeneratedSentence {
  std::string pair_id;
  Method method = Method::WAC;
  std::vector<Token> tokens;
  std::vector<Span> spans;

  std::string text() const;
  // Key shared by score reports and rating files: "<pair_id>#<METHOD>".
  std::string sentence_id() const;
};

// Method encoded in a sentence id suffix, if any.
std::optional<Method> method_of_sentence_id(std::string_view sentence_id);

enum class Scale { Quality, DCM, RA, Label };

std::string_view to_string(Scale scale);
std::optional<Scale> parse_scale(std::string_view name);

// LABEL values are stored as 1 (Correct) and 0 (Incorrect).
struct RatingRecord {
  std::string sentence_id;
  std::string rater_id;
  Scale scale = Scale::Quality;
  int value = 0;

  bool operator==(const RatingRecord&) const = default;
};

inline constexpr int kLabelCorrect = 1;
inline constexpr int kLabelIncorrect = 0;

bool value_in_range(Scale scale, int value);

// ---------------------------------------------------------------------------
// Tokenization and script detection

Script detect_script(std::string_view surface);

// Whitespace split, then leading and trailing punctuation code points are
// detached one per token.
Sentence tokenize(std::string_view text);

Token make_token(std::string surface);

// Why a pair violates the ParallelPair invariants, or nullopt if it is valid.
std::optional<std::string> pair_violation(const ParallelPair& pair);

bool spans_partition(const std::vector<Span>& spans, std::size_t token_count);

// ---------------------------------------------------------------------------
// File I/O

struct Problem {
  std::size_t line = 0;
  std::string message;
};

template <typename T>
struct LoadResult {
  std::vector<T> items;
  std::vector<Problem> problems;

  std::size_t skipped() const { return problems.size(); }
};

enum class CorpusFormat { Tsv, Jsonl };

// Chooses by extension: ".jsonl"/".json" is JSONL, everything else TSV.
CorpusFormat guess_format(std::string_view path);

// TSV: id<TAB>english<TAB>hindi. JSONL: {"id","en","hi"} with an optional
// "en_pos" array of tags aligned with the tokenized English side.
LoadResult<ParallelPair> load_parallel(const std::string& path, CorpusFormat format);
LoadResult<ParallelPair> parse_parallel_line(std::string_view line, CorpusFormat format, std::size_t line_no);

LoadResult<RatingRecord> load_ratings(const std::string& path);
void save_ratings(const std::string& path, const std::vector<RatingRecord>& records);
std::string rating_to_json(const RatingRecord& record);
RatingRecord rating_from_json(std::string_view line);

void save_generated(const std::string& path, const std::vector<GeneratedSentence>& sentences);
LoadResult<GeneratedSentence> load_generated(const std::string& path);
std::string generated_to_json(const GeneratedSentence& sentence);
GeneratedSentence generated_from_json(std::string_view line);

// Reference TSV: pair_id<TAB>reference, one line per reference. Ids keep
// their first-seen order.
struct ReferenceSet {
  std::vector<std::string> ids;
  std::map<std::string, std::vector<Sentence>> refs;
};

ReferenceSet load_references(const std::string& path);

std::vector<std::string> split_tabs(std::string_view line);

}  // namespace hinge
