#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hinge/align.hpp"
#include "hinge/corpus.hpp"
#include "hinge/embed.hpp"

namespace hinge::lexicon {

enum class Provenance { Seed, Embed, Align };

std::string_view to_string(Provenance provenance);
std::optional<Provenance> parse_provenance(std::string_view name);

struct DictEntry {
  std::string english;  // lowercased
  std::string hindi;
  Provenance provenance = Provenance::Seed;
  std::optional<double> weight;

  bool operator==(const DictEntry&) const = default;
};

// English -> Hindi translation pairs with provenance. Entries are unique per
// (english, hindi); the first arrival wins.
class BilingualDictionary {
 public:
  // Lowercases the English side. Returns false (and changes nothing) when
  // the pair exists already or the scripts are wrong.
  bool add(DictEntry entry);

  std::set<std::string> lookup(std::string_view english) const;
  std::set<std::string> reverse_lookup(std::string_view hindi) const;
  bool contains(std::string_view english, std::string_view hindi) const;
  const DictEntry* find(std::string_view english, std::string_view hindi) const;

  const std::vector<DictEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t count(Provenance provenance) const { return counts_[static_cast<std::size_t>(provenance)]; }

  // Forward and reverse indexes reference exactly the same entries.
  bool mirrors_consistent() const;

  // TSV english<TAB>hindi<TAB>provenance<TAB>weight (empty weight if absent).
  void save(const std::string& path) const;

 private:
  std::vector<DictEntry> entries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> forward_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> reverse_;
  std::array<std::size_t, 3> counts_{};
};

struct LoadReport {
  BilingualDictionary dictionary;
  std::vector<Problem> problems;
};

// Seed TSV english<TAB>hindi; all entries SEED. Four-column files written by
// save() are accepted too. Wrong-script or multi-word fields are skipped.
LoadReport load_seed(const std::string& path);

// For every Devanagari content token of each pair that no English token of
// the pair already translates to, asks the mapped embeddings for the closest
// English token and adds it as EMBED when cosine >= threshold.
BilingualDictionary extend_with_embeddings(const BilingualDictionary& dict, const std::vector<ParallelPair>& corpus,
                                           const embed::VectorStore& hindi_vectors,
                                           const embed::VectorStore& english_vectors,
                                           const embed::MappingMatrix& mapping, double threshold,
                                           const std::unordered_set<std::string>& hindi_stopwords = {});

// Adds extracted pairs as ALIGN entries weighted by t(hindi|english).
BilingualDictionary extend_with_alignments(const BilingualDictionary& dict,
                                           const std::vector<align::ExtractedPair>& pairs);

// (hindi, english) seed pairs for learning the Hindi -> English mapping.
std::vector<std::pair<std::string, std::string>> mapping_seed(const BilingualDictionary& dict);

std::unordered_set<std::string> load_word_list(const std::string& path);

}  // namespace hinge::lexicon
