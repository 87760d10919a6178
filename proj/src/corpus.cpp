#include "hinge/corpus.hpp"

#include <fstream>
#include <sstream>

#include "hinge/error.hpp"
#include "hinge/utf8.hpp"
#include "json.hpp"

namespace hinge {

using json = nlohmann::ordered_json;

std::string_view to_string(Script script) {
  switch (script) {
    case Script::Latin: return "Latin";
    case Script::Devanagari: return "Devanagari";
    case Script::Neutral: return "Neutral";
  }
  return "Neutral";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::WAC: return "WAC";
    case Method::PAC: return "PAC";
    case Method::HUMAN: return "HUMAN";
  }
  return "HUMAN";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "WAC") return Method::WAC;
  if (name == "PAC") return Method::PAC;
  if (name == "HUMAN") return Method::HUMAN;
  return std::nullopt;
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::EmbeddedEnglish: return "embedded-english";
    case Origin::TransliteratedHindi: return "transliterated-hindi";
    case Origin::Verbatim: return "verbatim";
  }
  return "verbatim";
}

std::optional<Origin> parse_origin(std::string_view name) {
  if (name == "embedded-english") return Origin::EmbeddedEnglish;
  if (name == "transliterated-hindi") return Origin::TransliteratedHindi;
  if (name == "verbatim") return Origin::Verbatim;
  return std::nullopt;
}

std::string_view to_string(Scale scale) {
  switch (scale) {
    case Scale::Quality: return "QUALITY";
    case Scale::DCM: return "DCM";
    case Scale::RA: return "RA";
    case Scale::Label: return "LABEL";
  }
  return "QUALITY";
}

std::optional<Scale> parse_scale(std::string_view name) {
  if (name == "QUALITY") return Scale::Quality;
  if (name == "DCM") return Scale::DCM;
  if (name == "RA") return Scale::RA;
  if (name == "LABEL") return Scale::Label;
  return std::nullopt;
}

bool value_in_range(Scale scale, int value) {
  switch (scale) {
    case Scale::Quality: return value >= 1 && value <= 10;
    case Scale::DCM:
    case Scale::RA: return value >= 0 && value <= 10;
    case Scale::Label: return value == kLabelCorrect || value == kLabelIncorrect;
  }
  return false;
}

std::vector<std::string> Sentence::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

static std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

std::string Sentence::text() const { return join_tokens(tokens); }

std::string GeneratedSentence::text() const { return join_tokens(tokens); }

std::string GeneratedSentence::sentence_id() const {
  return pair_id + "#" + std::string(to_string(method));
}

std::optional<Method> method_of_sentence_id(std::string_view sentence_id) {
  const auto hash = sentence_id.rfind('#');
  if (hash == std::string_view::npos) return std::nullopt;
  return parse_method(sentence_id.substr(hash + 1));
}

Script detect_script(std::string_view surface) {
  std::size_t latin = 0;
  std::size_t deva = 0;
  for (char32_t cp : utf8::decode(surface)) {
    if (utf8::is_devanagari_letter(cp)) {
      ++deva;
    } else if (utf8::is_latin_letter(cp)) {
      ++latin;
    }
  }
  if (latin == 0 && deva == 0) return Script::Neutral;
  // ties go to Devanagari so the token is transliterated downstream
  return deva >= latin ? Script::Devanagari : Script::Latin;
}

Token make_token(std::string surface) {
  Token t;
  t.script = detect_script(surface);
  t.surface = std::move(surface);
  return t;
}

Sentence tokenize(std::string_view text) {
  Sentence sentence;
  sentence.raw = std::string(text);
  const auto cps = utf8::decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && utf8::is_space(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !utf8::is_space(cps[j])) ++j;
    if (j == i) break;

    std::size_t lo = i;
    std::size_t hi = j;
    while (lo < hi && utf8::is_punct(cps[lo])) {
      sentence.tokens.push_back(make_token(utf8::encode({cps[lo]})));
      ++lo;
    }
    std::size_t tail = hi;
    while (tail > lo && utf8::is_punct(cps[tail - 1])) --tail;
    if (tail > lo) {
      sentence.tokens.push_back(
          make_token(utf8::encode(std::vector<char32_t>(cps.begin() + lo, cps.begin() + tail))));
    }
    for (std::size_t k = tail; k < hi; ++k) {
      sentence.tokens.push_back(make_token(utf8::encode({cps[k]})));
    }
    i = j;
  }
  return sentence;
}

std::optional<std::string> pair_violation(const ParallelPair& pair) {
  if (pair.en.empty()) return "empty English sentence";
  if (pair.hi.empty()) return "empty Hindi sentence";
  for (const auto& t : pair.en.tokens) {
    if (t.script == Script::Devanagari) return "Devanagari token '" + t.surface + "' on English side";
  }
  for (const auto& t : pair.hi.tokens) {
    if (t.script == Script::Devanagari) return std::nullopt;
  }
  return "Hindi sentence has no Devanagari token";
}

bool spans_partition(const std::vector<Span>& spans, std::size_t token_count) {
  std::size_t next = 0;
  for (const auto& s : spans) {
    if (s.start != next || s.end <= s.start) return false;
    next = s.end;
  }
  return next == token_count;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

static std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

static std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

static std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

CorpusFormat guess_format(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  return (ends_with(".jsonl") || ends_with(".json")) ? CorpusFormat::Jsonl : CorpusFormat::Tsv;
}

LoadResult<ParallelPair> parse_parallel_line(std::string_view line, CorpusFormat format, std::size_t line_no) {
  LoadResult<ParallelPair> result;
  ParallelPair pair;
  std::vector<std::string> en_pos;
  if (format == CorpusFormat::Tsv) {
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      result.problems.push_back({line_no, "expected 3 tab-separated fields, got " + std::to_string(fields.size())});
      return result;
    }
    pair.id = fields[0];
    pair.en = tokenize(fields[1]);
    pair.hi = tokenize(fields[2]);
  } else {
    try {
      const auto obj = json::parse(line);
      pair.id = obj.at("id").get<std::string>();
      pair.en = tokenize(obj.at("en").get<std::string>());
      pair.hi = tokenize(obj.at("hi").get<std::string>());
      if (obj.contains("en_pos")) en_pos = obj.at("en_pos").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      result.problems.push_back({line_no, std::string("malformed record: ") + e.what()});
      return result;
    }
  }
  if (!en_pos.empty()) {
    if (en_pos.size() != pair.en.size()) {
      result.problems.push_back({line_no, "en_pos length does not match English token count"});
      return result;
    }
    for (std::size_t i = 0; i < en_pos.size(); ++i) pair.en.tokens[i].pos = en_pos[i];
  }
  if (auto why = pair_violation(pair)) {
    result.problems.push_back({line_no, *why});
    return result;
  }
  result.items.push_back(std::move(pair));
  return result;
}

LoadResult<ParallelPair> load_parallel(const std::string& path, CorpusFormat format) {
  auto in = open_input(path);
  LoadResult<ParallelPair> result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    auto one = parse_parallel_line(view, format, line_no);
    for (auto& p : one.items) result.items.push_back(std::move(p));
    for (auto& p : one.problems) result.problems.push_back(std::move(p));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Ratings

std::string rating_to_json(const RatingRecord& record) {
  json obj;
  obj["sentence_id"] = record.sentence_id;
  obj["rater_id"] = record.rater_id;
  obj["scale"] = std::string(to_string(record.scale));
  if (record.scale == Scale::Label) {
    obj["value"] = record.value == kLabelCorrect ? "Correct" : "Incorrect";
  } else {
    obj["value"] = record.value;
  }
  return obj.dump();
}

RatingRecord rating_from_json(std::string_view line) {
  const auto obj = json::parse(line);
  RatingRecord r;
  r.sentence_id = obj.at("sentence_id").get<std::string>();
  r.rater_id = obj.at("rater_id").get<std::string>();
  const auto scale_name = obj.at("scale").get<std::string>();
  const auto scale = parse_scale(scale_name);
  if (!scale) throw std::invalid_argument("unknown scale '" + scale_name + "'");
  r.scale = *scale;
  const auto& value = obj.at("value");
  if (r.scale == Scale::Label) {
    if (!value.is_string()) throw std::invalid_argument("LABEL value must be a string");
    const auto label = value.get<std::string>();
    if (label == "Correct") {
      r.value = kLabelCorrect;
    } else if (label == "Incorrect") {
      r.value = kLabelIncorrect;
    } else {
      throw std::invalid_argument("unknown label '" + label + "'");
    }
  } else {
    if (!value.is_number_integer()) throw std::invalid_argument("value must be an integer");
    const auto v = value.get<long long>();
    if (v < -1000000 || v > 1000000) throw std::invalid_argument("value out of range");
    r.value = static_cast<int>(v);
    if (!value_in_range(r.scale, r.value)) {
      throw std::invalid_argument("value " + std::to_string(v) + " outside " + std::string(to_string(r.scale)) +
                                  " bounds");
    }
  }
  return r;
}

LoadResult<RatingRecord> load_ratings(const std::string& path) {
  auto in = open_input(path);
  LoadResult<RatingRecord> result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    try {
      result.items.push_back(rating_from_json(view));
    } catch (const std::exception& e) {
      result.problems.push_back({line_no, e.what()});
    }
  }
  return result;
}

void save_ratings(const std::string& path, const std::vector<RatingRecord>& records) {
  auto out = open_output(path);
  for (const auto& r : records) out << rating_to_json(r) << '\n';
}

// ---------------------------------------------------------------------------
// Generated sentences

std::string generated_to_json(const GeneratedSentence& sentence) {
  json obj;
  obj["pair_id"] = sentence.pair_id;
  obj["method"] = std::string(to_string(sentence.method));
  obj["text"] = sentence.text();
  json spans = json::array();
  for (const auto& s : sentence.spans) {
    spans.push_back(json::array({s.start, s.end, std::string(to_string(s.origin))}));
  }
  obj["spans"] = std::move(spans);
  return obj.dump();
}

GeneratedSentence generated_from_json(std::string_view line) {
  const auto obj = json::parse(line);
  GeneratedSentence g;
  g.pair_id = obj.at("pair_id").get<std::string>();
  const auto method_name = obj.at("method").get<std::string>();
  const auto method = parse_method(method_name);
  if (!method) throw std::invalid_argument("unknown method '" + method_name + "'");
  g.method = *method;
  g.tokens = tokenize(obj.at("text").get<std::string>()).tokens;
  for (const auto& t : g.tokens) {
    if (t.script == Script::Devanagari) throw std::invalid_argument("generated text must be Roman: '" + t.surface + "'");
  }
  if (obj.contains("spans")) {
    for (const auto& s : obj.at("spans")) {
      if (!s.is_array() || s.size() != 3) throw std::invalid_argument("span must be [start,end,origin]");
      const auto origin_name = s.at(2).get<std::string>();
      const auto origin = parse_origin(origin_name);
      if (!origin) throw std::invalid_argument("unknown origin '" + origin_name + "'");
      g.spans.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>(), *origin});
    }
  } else {
    for (std::size_t i = 0; i < g.tokens.size(); ++i) g.spans.push_back({i, i + 1, Origin::Verbatim});
  }
  if (!spans_partition(g.spans, g.tokens.size())) {
    throw std::invalid_argument("spans do not partition the token range");
  }
  return g;
}

void save_generated(const std::string& path, const std::vector<GeneratedSentence>& sentences) {
  auto out = open_output(path);
  for (const auto& g : sentences) out << generated_to_json(g) << '\n';
}

LoadResult<GeneratedSentence> load_generated(const std::string& path) {
  auto in = open_input(path);
  LoadResult<GeneratedSentence> result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    try {
      result.items.push_back(generated_from_json(view));
    } catch (const std::exception& e) {
      result.problems.push_back({line_no, e.what()});
    }
  }
  return result;
}

ReferenceSet load_references(const std::string& path) {
  auto in = open_input(path);
  ReferenceSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    const auto fields = split_tabs(view);
    if (fields.size() != 2) throw ParseError(path, line_no, "expected pair_id<TAB>reference");
    auto [it, inserted] = set.refs.try_emplace(fields[0]);
    if (inserted) set.ids.push_back(fields[0]);
    it->second.push_back(tokenize(fields[1]));
  }
  return set;
}

}  // namespace hinge
