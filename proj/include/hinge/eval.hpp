#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hinge/corpus.hpp"
#include "hinge/error.hpp"
#include "hinge/metrics.hpp"

namespace hinge::eval {

class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

// Product-moment correlation. Throws UndefinedCorrelation on mismatched or
// short input and on zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct Bucket {
  std::string_view name;
  int low;
  int high;

  bool contains(int rating) const { return rating >= low && rating <= high; }
};

inline constexpr std::array<Bucket, 3> kBuckets{{{"Bucket1", 2, 10}, {"Bucket2", 2, 5}, {"Bucket3", 6, 10}}};

// Column order of every metric table.
enum class Metric { Bleu, Wer, Ter, Nist, Embed };
inline constexpr std::array<Metric, 5> kMetrics{Metric::Bleu, Metric::Wer, Metric::Ter, Metric::Nist, Metric::Embed};
inline constexpr std::size_t kMetricCount = kMetrics.size();

std::string_view to_string(Metric metric);
std::optional<double> metric_value(const metrics::SentenceScore& score, Metric metric);

enum class DedupMode {
  PerRating,    // every (sentence, rating) pair is one observation
  MeanRounded,  // a sentence's ratings are averaged and rounded half up first
};

std::optional<DedupMode> parse_dedup_mode(std::string_view name);
std::string_view to_string(DedupMode mode);

struct Observation {
  std::string sentence_id;
  int rating = 0;
  metrics::SentenceScore score;
};

// QUALITY ratings joined with sentence scores. Ratings for unscored sentences
// are dropped and counted in *unscored. Output is sorted by (sentence id,
// rating) so that input order never matters.
std::vector<Observation> observations(const std::map<std::string, metrics::SentenceScore>& scores,
                                      const std::vector<RatingRecord>& ratings, DedupMode mode,
                                      std::size_t* unscored = nullptr);

struct MeanRow {
  int rating = 0;
  std::size_t count = 0;
  std::array<std::optional<double>, kMetricCount> means{};
};

// Rows for ratings 1..10; a row with count 0 has no means.
struct MeanTable {
  std::array<MeanRow, 10> rows{};

  const MeanRow& row(int rating) const { return rows.at(static_cast<std::size_t>(rating - 1)); }
};

MeanTable mean_by_rating(const std::vector<Observation>& obs);

struct CorrelationEntry {
  std::optional<double> r;  // absent for degenerate buckets
  std::size_t samples = 0;
};

// [bucket][metric]
using CorrelationReport = std::array<std::array<CorrelationEntry, kMetricCount>, kBuckets.size()>;

// Pearson over (rating level, mean) points inside each bucket.
CorrelationReport bucket_correlations(const MeanTable& table);
// Sensitivity variant: one point per observation.
CorrelationReport observation_correlations(const std::vector<Observation>& obs);

struct Agreement {
  std::size_t correct_agree = 0;
  std::size_t incorrect_agree = 0;
  std::size_t disagree = 0;

  std::size_t total() const { return correct_agree + incorrect_agree + disagree; }
  bool operator==(const Agreement&) const = default;
};

// Pairs of LABEL values (1 = Correct, 0 = Incorrect).
Agreement agreement_of(const std::vector<std::pair<int, int>>& label_pairs);

struct Histogram {
  std::array<std::size_t, 10> counts{};
  std::size_t total = 0;

  // fraction of pairs whose ratings differ by 5 or more; 0 when empty
  double high_disagreement() const;
};

inline constexpr int kHighDisagreement = 5;

Histogram histogram_of(const std::vector<std::pair<int, int>>& quality_pairs);

// Rating pairs of one scale grouped by method (from the sentence id). Sentences
// without exactly two ratings, or without a method suffix, are left out and
// counted.
struct PairedRatings {
  std::map<Method, std::vector<std::pair<int, int>>> per_method;
  std::size_t excluded = 0;
};

PairedRatings paired_ratings(const std::vector<RatingRecord>& ratings, Scale scale);

struct AgreementReport {
  std::map<Method, Agreement> per_method;
  std::size_t excluded = 0;
};

AgreementReport agreement_table(const std::vector<RatingRecord>& ratings);

struct HistogramReport {
  std::map<Method, Histogram> per_method;
  std::size_t excluded = 0;
};

HistogramReport disagreement_histogram(const std::vector<RatingRecord>& ratings);

struct RaterMean {
  Scale scale = Scale::DCM;
  std::string rater;
  double mean = 0.0;
  std::size_t count = 0;
};

// DCM rows then RA rows, raters sorted by id. A scale without records has no rows.
std::vector<RaterMean> dcm_ra_summary(const std::vector<RatingRecord>& ratings);

struct MethodAnalysis {
  std::size_t observations = 0;
  MeanTable means;
  CorrelationReport correlations;
};

struct EvalOptions {
  DedupMode dedup = DedupMode::PerRating;
  bool per_observation = false;
};

struct EvalReport {
  EvalOptions options;
  std::map<Method, MethodAnalysis> methods;
  std::size_t unscored_ratings = 0;
  std::size_t unknown_method = 0;
  AgreementReport agreement;
  HistogramReport histogram;
  std::vector<RaterMean> dcm_ra;
};

EvalReport evaluate(const std::map<std::string, metrics::SentenceScore>& scores,
                    const std::vector<RatingRecord>& ratings, const EvalOptions& options = {});

// table2.tsv, table4.tsv, table5.tsv, disagreement_hist.tsv, dcm_ra.tsv and
// report.json inside dir, which must exist.
void write_reports(const std::string& dir, const EvalReport& report);

}  // namespace hinge::eval
