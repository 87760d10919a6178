#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hinge/eval.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hinge;
using eval::Metric;

namespace {

RatingRecord rating(std::string id, std::string rater, Scale scale, int value) {
  return RatingRecord{std::move(id), std::move(rater), scale, value};
}

metrics::SentenceScore score(double bleu, double wer, double ter, double nist, std::optional<double> embed) {
  metrics::SentenceScore s;
  s.bleu = bleu;
  s.wer = wer;
  s.ter = ter;
  s.nist = nist;
  s.embed = embed;
  return s;
}

// Mean rows for ratings 2..10, columns BLEU, WER, TER, NIST, embed.
using Rows = std::array<std::array<double, 5>, 9>;

eval::MeanTable table_of(const Rows& rows) {
  eval::MeanTable t;
  for (int r = 1; r <= 10; ++r) t.rows[static_cast<std::size_t>(r - 1)].rating = r;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto& row = t.rows[k + 1];
    row.count = 1;
    for (std::size_t m = 0; m < 5; ++m) row.means[m] = rows[k][m];
  }
  return t;
}

// Per-rating metric means for the two methods ...
const Rows kWordAlignedMeans{{{.144, .741, .667, .092, .851},
                              {.138, .735, .708, .070, .852},
                              {.133, .695, .666, .103, .849},
                              {.135, .711, .681, .110, .853},
                              {.141, .697, .670, .102, .852},
                              {.161, .663, .630, .111, .856},
                              {.177, .621, .589, .127, .859},
                              {.212, .571, .538, .150, .865},
                              {.291, .509, .493, .157, .878}}};
const Rows kPhraseAlignedMeans{{{.126, .672, .698, .176, .8603},
                                {.146, .765, .696, .086, .851},
                                {.143, .744, .703, .100, .8464},
                                {.153, .726, .680, .114, .8515},
                                {.164, .689, .646, .124, .8558},
                                {.176, .661, .618, .121, .8581},
                                {.177, .639, .605, .128, .8598},
                                {.184, .614, .590, .129, .8638},
                                {.242, .551, .543, .146, .8731}}};

// ... and the bucket correlations they yield to three decimals, [bucket][metric].
using Grid = std::array<std::array<double, 5>, 3>;
const Grid kWordAlignedR{{{.810, -.936, -.891, .913, .844},
                          {-.861, -.785, .000, .642, .227},
                          {.941, -.993, -.998, .986, .953}}};
const Grid kPhraseAlignedR{{{.910, -.822, -.963, .127, .710},
                            {.878, .457, -.610, -.559, -.689},
                            {.844, -.973, -.970, .846, .937}}};

}  // namespace

TEST(Pearson, Examples) {
  EXPECT_NEAR(eval::pearson({1, 2, 3}, {2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(eval::pearson({1, 2, 3}, {3, 2, 1}), -1.0, 1e-15);
  EXPECT_NEAR(eval::pearson({1, 2, 3, 4, 5}, {2, 4, 5, 4, 5}), 6.0 / std::sqrt(60.0), 1e-15);
  EXPECT_THROW(eval::pearson({1, 2, 3}, {5, 5, 5}), eval::UndefinedCorrelation);
  EXPECT_THROW(eval::pearson({1}, {1}), eval::UndefinedCorrelation);
  EXPECT_THROW(eval::pearson({1, 2}, {1, 2, 3}), eval::UndefinedCorrelation);
}

TEST(PearsonProperty, MatchesTextbookFormulaAndAffineInvariant) {
  std::mt19937 rng(7);
  std::normal_distribution<double> n(0, 1);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x(3 + rng() % 20), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = n(rng);
      y[i] = 0.5 * x[i] + n(rng);
    }
    const double r = eval::pearson(x, y);
    EXPECT_NEAR(r, oracle::pearson(x, y), 1e-12);
    EXPECT_LE(std::abs(r), 1.0);
    auto scaled = x;
    for (auto& v : scaled) v = 3.5 * v - 2.0;
    EXPECT_NEAR(eval::pearson(scaled, y), r, 1e-12);
    for (auto& v : scaled) v = -v;
    EXPECT_NEAR(eval::pearson(scaled, y), -r, 1e-12);
  }
}

TEST(MeanByRating, GroupsObservations) {
  const std::map<std::string, metrics::SentenceScore> scores{{"a#WAC", score(0.2, 0.5, 0.4, 1.0, 0.8)},
                                                             {"b#WAC", score(0.4, 0.3, 0.2, 2.0, std::nullopt)}};
  const std::vector<RatingRecord> ratings{rating("a#WAC", "r1", Scale::Quality, 7),
                                          rating("b#WAC", "r1", Scale::Quality, 7),
                                          rating("b#WAC", "r2", Scale::Quality, 3),
                                          rating("c#WAC", "r1", Scale::Quality, 3),
                                          rating("a#WAC", "r1", Scale::DCM, 9)};
  std::size_t unscored = 0;
  const auto obs = eval::observations(scores, ratings, eval::DedupMode::PerRating, &unscored);
  EXPECT_EQ(obs.size(), 3u);
  EXPECT_EQ(unscored, 1u);
  const auto table = eval::mean_by_rating(obs);
  EXPECT_EQ(table.row(7).count, 2u);
  EXPECT_NEAR(*table.row(7).means[0], 0.3, 1e-15);
  EXPECT_NEAR(*table.row(7).means[4], 0.8, 1e-15);  // undefined embed values are skipped
  EXPECT_EQ(table.row(3).count, 1u);
  EXPECT_FALSE(table.row(3).means[4]);
  EXPECT_EQ(table.row(5).count, 0u);
  EXPECT_FALSE(table.row(5).means[0]);
}

TEST(Observations, DedupModes) {
  const std::map<std::string, metrics::SentenceScore> scores{{"a#WAC", score(0.2, 0.5, 0.4, 1.0, 0.8)}};
  const std::vector<RatingRecord> ratings{rating("a#WAC", "r1", Scale::Quality, 3),
                                          rating("a#WAC", "r2", Scale::Quality, 8)};
  const auto per = eval::observations(scores, ratings, eval::DedupMode::PerRating);
  ASSERT_EQ(per.size(), 2u);
  EXPECT_EQ(per[0].rating, 3);
  const auto mean = eval::observations(scores, ratings, eval::DedupMode::MeanRounded);
  ASSERT_EQ(mean.size(), 1u);
  EXPECT_EQ(mean[0].rating, 6);  // 5.5 rounds half up
  EXPECT_EQ(eval::parse_dedup_mode("mean-rounded"), eval::DedupMode::MeanRounded);
  EXPECT_FALSE(eval::parse_dedup_mode("mean"));
}

TEST(BucketCorrelations, KnownMeansGiveKnownCorrelations) {
  const std::pair<const Rows*, const Grid*> methods[] = {{&kWordAlignedMeans, &kWordAlignedR},
                                                         {&kPhraseAlignedMeans, &kPhraseAlignedR}};
  for (const auto& [rows, grid] : methods) {
    const auto report = eval::bucket_correlations(table_of(*rows));
    for (std::size_t b = 0; b < 3; ++b) {
      for (std::size_t m = 0; m < 5; ++m) {
        ASSERT_TRUE(report[b][m].r) << b << " " << m;
        EXPECT_NEAR(*report[b][m].r, (*grid)[b][m], 0.003) << b << " " << m;
      }
    }
    EXPECT_EQ(report[0][0].samples, 9u);
    EXPECT_EQ(report[1][0].samples, 4u);
    EXPECT_EQ(report[2][0].samples, 5u);
  }
}

TEST(BucketCorrelations, ConstantMetricHasNoValue) {
  Rows rows{};
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = {0.1 * static_cast<double>(k), 0.5, 0.5, 1.0, 0.9};
  const auto report = eval::bucket_correlations(table_of(rows));
  EXPECT_NEAR(*report[0][0].r, 1.0, 1e-12);
  EXPECT_FALSE(report[0][1].r);
  EXPECT_FALSE(report[2][4].r);
}

TEST(BucketCorrelationsProperty, MonotoneMetricsGiveUnitCorrelation) {
  Rows rows{};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double r = static_cast<double>(k + 2);
    rows[k] = {0.05 * r, 1.0 - 0.07 * r, 2.0 - 0.1 * r, 0.3 * r + 1.0, 0.8 + 0.01 * r};
  }
  const auto report = eval::bucket_correlations(table_of(rows));
  for (std::size_t b = 0; b < 3; ++b) {
    for (Metric m : eval::kMetrics) {
      const auto idx = static_cast<std::size_t>(m);
      const double sign = (m == Metric::Wer || m == Metric::Ter) ? -1.0 : 1.0;
      EXPECT_NEAR(*report[b][idx].r, sign, 1e-12);
    }
  }
}

TEST(EvaluateProperty, PermutationInvariantAndCountsConsistent) {
  std::mt19937 rng(8);
  std::map<std::string, metrics::SentenceScore> scores;
  std::vector<RatingRecord> ratings;
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 60; ++k) {
    const std::string id = "s" + std::to_string(k) + (k % 2 ? "#WAC" : "#PAC");
    scores[id] = score(u(rng), u(rng), u(rng), 5 * u(rng), u(rng));
    for (const char* r : {"r1", "r2"}) ratings.push_back(rating(id, r, Scale::Quality, 1 + static_cast<int>(rng() % 10)));
  }
  const auto a = eval::evaluate(scores, ratings);
  auto shuffled = ratings;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto b = eval::evaluate(scores, shuffled);
  for (const auto& [method, analysis] : a.methods) {
    const auto& other = b.methods.at(method);
    EXPECT_EQ(analysis.observations, 60u);
    std::size_t total = 0;
    for (const auto& row : analysis.means.rows) total += row.count;
    EXPECT_EQ(total, analysis.observations);
    for (std::size_t bk = 0; bk < 3; ++bk) {
      for (std::size_t m = 0; m < 5; ++m) {
        EXPECT_EQ(analysis.correlations[bk][m].r, other.correlations[bk][m].r);
        std::size_t levels = 0;
        for (int r = eval::kBuckets[bk].low; r <= eval::kBuckets[bk].high; ++r) levels += analysis.means.row(r).count > 0;
        EXPECT_EQ(analysis.correlations[bk][m].samples, levels);
      }
    }
  }
}

TEST(Agreement, Examples) {
  EXPECT_EQ(eval::agreement_of({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}), (eval::Agreement{5, 0, 0}));
  EXPECT_EQ(eval::agreement_of({{1, 0}, {0, 1}, {1, 0}, {0, 1}}), (eval::Agreement{0, 0, 4}));
  EXPECT_EQ(eval::agreement_of({{1, 1}, {0, 0}, {1, 0}}), (eval::Agreement{1, 1, 1}));
}

TEST(AgreementTable, GroupsByMethodAndExcludesUnpaired) {
  const std::vector<RatingRecord> ratings{
      rating("a#WAC", "r1", Scale::Label, 1), rating("a#WAC", "r2", Scale::Label, 1),
      rating("b#PAC", "r1", Scale::Label, 0), rating("b#PAC", "r2", Scale::Label, 1),
      rating("c#PAC", "r1", Scale::Label, 0),  // only one rater
      rating("d", "r1", Scale::Label, 0),     rating("d", "r2", Scale::Label, 0)};
  const auto t = eval::agreement_table(ratings);
  EXPECT_EQ(t.per_method.at(Method::WAC), (eval::Agreement{1, 0, 0}));
  EXPECT_EQ(t.per_method.at(Method::PAC), (eval::Agreement{0, 0, 1}));
  EXPECT_EQ(t.excluded, 2u);
}

TEST(Histogram, Differences) {
  const auto h = eval::histogram_of({{2, 9}, {3, 8}});
  EXPECT_EQ(h.counts[7], 1u);
  EXPECT_EQ(h.counts[5], 1u);
  EXPECT_EQ(h.total, 2u);
  EXPECT_DOUBLE_EQ(h.high_disagreement(), 1.0);
  const auto low = eval::histogram_of({{4, 4}, {4, 8}});
  EXPECT_DOUBLE_EQ(low.high_disagreement(), 0.0);
  EXPECT_EQ(eval::histogram_of({}).high_disagreement(), 0.0);
}

TEST(DcmRa, PerRaterMeans) {
  const std::vector<RatingRecord> ratings{rating("a#WAC", "r1", Scale::DCM, 8), rating("b#WAC", "r1", Scale::DCM, 9),
                                          rating("a#WAC", "r2", Scale::DCM, 10)};
  const auto rows = eval::dcm_ra_summary(ratings);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].rater, "r1");
  EXPECT_DOUBLE_EQ(rows[0].mean, 8.5);
  EXPECT_EQ(rows[0].count, 2u);
  for (const auto& r : rows) EXPECT_EQ(r.scale, Scale::DCM);
}

TEST(WriteReports, AllTablesPresent) {
  const std::map<std::string, metrics::SentenceScore> scores{{"a#WAC", score(0.2, 0.5, 0.4, 1.0, 0.8)},
                                                             {"b#WAC", score(0.4, 0.3, 0.2, 2.0, 0.9)},
                                                             {"c#WAC", score(0.5, 0.2, 0.1, 2.5, 0.95)}};
  std::vector<RatingRecord> ratings;
  int q = 3;
  for (const char* id : {"a#WAC", "b#WAC", "c#WAC"}) {
    ratings.push_back(rating(id, "r1", Scale::Quality, q));
    ratings.push_back(rating(id, "r2", Scale::Quality, q + 1));
    ratings.push_back(rating(id, "r1", Scale::Label, 1));
    ratings.push_back(rating(id, "r2", Scale::Label, 1));
    q += 2;
  }
  hinge::testing::TempDir dir;
  eval::write_reports(dir.file(""), eval::evaluate(scores, ratings));
  for (const char* f : {"table2.tsv", "table4.tsv", "table5.tsv", "disagreement_hist.tsv", "dcm_ra.tsv", "report.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.file(f))) << f;
  }
  EXPECT_NE(hinge::testing::read_file(dir.file("table2.tsv")).find("WAC"), std::string::npos);
}
