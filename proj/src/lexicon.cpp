#include "hinge/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hinge/error.hpp"
#include "hinge/utf8.hpp"

namespace hinge::lexicon {

namespace {

// cosine comparisons tolerate this much rounding so that identical vectors
// still pass a threshold of 1.0
constexpr double kCosineSlack = 1e-12;

bool single_word(std::string_view s) {
  if (s.empty()) return false;
  for (char32_t cp : utf8::decode(s)) {
    if (utf8::is_space(cp)) return false;
  }
  return true;
}

bool valid_pair(std::string_view english, std::string_view hindi) {
  return single_word(english) && single_word(hindi) && detect_script(english) == Script::Latin &&
         detect_script(hindi) == Script::Devanagari;
}

}  // namespace

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Seed: return "SEED";
    case Provenance::Embed: return "EMBED";
    case Provenance::Align: return "ALIGN";
  }
  return "SEED";
}

std::optional<Provenance> parse_provenance(std::string_view name) {
  if (name == "SEED") return Provenance::Seed;
  if (name == "EMBED") return Provenance::Embed;
  if (name == "ALIGN") return Provenance::Align;
  return std::nullopt;
}

bool BilingualDictionary::add(DictEntry entry) {
  entry.english = utf8::ascii_lower(entry.english);
  if (!valid_pair(entry.english, entry.hindi)) return false;
  if (contains(entry.english, entry.hindi)) return false;
  const std::size_t idx = entries_.size();
  forward_[entry.english].push_back(idx);
  reverse_[entry.hindi].push_back(idx);
  ++counts_[static_cast<std::size_t>(entry.provenance)];
  entries_.push_back(std::move(entry));
  return true;
}

const DictEntry* BilingualDictionary::find(std::string_view english, std::string_view hindi) const {
  const auto it = forward_.find(utf8::ascii_lower(english));
  if (it == forward_.end()) return nullptr;
  for (std::size_t idx : it->second) {
    if (entries_[idx].hindi == hindi) return &entries_[idx];
  }
  return nullptr;
}

bool BilingualDictionary::contains(std::string_view english, std::string_view hindi) const {
  return find(english, hindi) != nullptr;
}

std::set<std::string> BilingualDictionary::lookup(std::string_view english) const {
  std::set<std::string> out;
  const auto it = forward_.find(utf8::ascii_lower(english));
  if (it == forward_.end()) return out;
  for (std::size_t idx : it->second) out.insert(entries_[idx].hindi);
  return out;
}

std::set<std::string> BilingualDictionary::reverse_lookup(std::string_view hindi) const {
  std::set<std::string> out;
  const auto it = reverse_.find(hindi);
  if (it == reverse_.end()) return out;
  for (std::size_t idx : it->second) out.insert(entries_[idx].english);
  return out;
}

bool BilingualDictionary::mirrors_consistent() const {
  std::size_t forward_total = 0;
  for (const auto& [english, idxs] : forward_) {
    for (std::size_t idx : idxs) {
      if (idx >= entries_.size() || entries_[idx].english != english) return false;
      const auto rit = reverse_.find(entries_[idx].hindi);
      if (rit == reverse_.end() || std::find(rit->second.begin(), rit->second.end(), idx) == rit->second.end()) {
        return false;
      }
    }
    forward_total += idxs.size();
  }
  std::size_t reverse_total = 0;
  for (const auto& [hindi, idxs] : reverse_) {
    for (std::size_t idx : idxs) {
      if (idx >= entries_.size() || entries_[idx].hindi != hindi) return false;
    }
    reverse_total += idxs.size();
  }
  const std::size_t by_provenance = counts_[0] + counts_[1] + counts_[2];
  return forward_total == entries_.size() && reverse_total == entries_.size() && by_provenance == entries_.size();
}

void BilingualDictionary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& e : entries_) {
    out << e.english << '\t' << e.hindi << '\t' << to_string(e.provenance) << '\t';
    if (e.weight) {
      std::ostringstream w;
      w << std::setprecision(17) << *e.weight;
      out << w.str();
    }
    out << '\n';
  }
}

LoadReport load_seed(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  LoadReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 && fields.size() != 4) {
      report.problems.push_back({line_no, "expected english<TAB>hindi"});
      continue;
    }
    DictEntry entry{fields[0], fields[1], Provenance::Seed, std::nullopt};
    if (fields.size() == 4) {
      const auto prov = parse_provenance(fields[2]);
      if (!prov) {
        report.problems.push_back({line_no, "unknown provenance '" + fields[2] + "'"});
        continue;
      }
      entry.provenance = *prov;
      if (!fields[3].empty()) {
        try {
          entry.weight = std::stod(fields[3]);
        } catch (const std::exception&) {
          report.problems.push_back({line_no, "bad weight '" + fields[3] + "'"});
          continue;
        }
      }
    }
    if (!valid_pair(utf8::ascii_lower(entry.english), entry.hindi)) {
      report.problems.push_back({line_no, "expected a Latin-script word and a Devanagari word"});
      continue;
    }
    // duplicates collapse silently
    report.dictionary.add(std::move(entry));
  }
  return report;
}

BilingualDictionary extend_with_embeddings(const BilingualDictionary& dict, const std::vector<ParallelPair>& corpus,
                                           const embed::VectorStore& hindi_vectors,
                                           const embed::VectorStore& english_vectors,
                                           const embed::MappingMatrix& mapping, double threshold,
                                           const std::unordered_set<std::string>& hindi_stopwords) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("embedding threshold must be in (0, 1]");
  BilingualDictionary out = dict;
  for (const auto& pair : corpus) {
    for (const auto& h : pair.hi.tokens) {
      if (h.script != Script::Devanagari || hindi_stopwords.count(h.surface)) continue;
      bool covered = false;
      for (const auto& e : pair.en.tokens) {
        if (e.script == Script::Latin && out.contains(e.surface, h.surface)) {
          covered = true;
          break;
        }
      }
      if (covered) continue;
      const auto nn = embed::closest_in_sentence(h.surface, pair.en, hindi_vectors, english_vectors, mapping);
      if (!nn || nn->cosine < threshold - kCosineSlack) continue;
      out.add({nn->token, h.surface, Provenance::Embed, nn->cosine});
    }
  }
  return out;
}

BilingualDictionary extend_with_alignments(const BilingualDictionary& dict,
                                           const std::vector<align::ExtractedPair>& pairs) {
  BilingualDictionary out = dict;
  for (const auto& p : pairs) out.add({p.english, p.hindi, Provenance::Align, p.prob});
  return out;
}

std::vector<std::pair<std::string, std::string>> mapping_seed(const BilingualDictionary& dict) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : dict.entries()) {
    if (e.provenance == Provenance::Seed) out.emplace_back(e.hindi, e.english);
  }
  return out;
}

std::unordered_set<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(line);
  }
  return words;
}

}  // namespace hinge::lexicon
