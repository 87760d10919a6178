#include <gtest/gtest.h>

#include <cmath>

#include "hinge/keyphrase.hpp"
#include "oracles.hpp"

using namespace hinge;

namespace {

std::vector<Token> doc(std::string_view text) { return tokenize(text).tokens; }

}  // namespace

TEST(ScoreTerms, RepeatedWordIsOneTerm) {
  const auto terms = keyphrase::score_terms(doc("river river river"), keyphrase::default_stopwords());
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms.at("river").tf, 3u);
  EXPECT_DOUBLE_EQ(terms.at("river").position, 1.0);
}

TEST(ScoreTerms, WordInEverySentenceHasFullDispersion) {
  const auto terms = keyphrase::score_terms(doc("river city . river town . big river"), keyphrase::default_stopwords());
  EXPECT_DOUBLE_EQ(terms.at("river").dispersion, 1.0);
  EXPECT_NEAR(terms.at("city").dispersion, 1.0 / 3.0, 1e-15);
}

TEST(ScoreTerms, HandComputedFeatures) {
  const auto terms = keyphrase::score_terms(doc("Green river . river city ."), keyphrase::default_stopwords());
  ASSERT_EQ(terms.size(), 3u);
  const double norm = 4.0 / 3.0 + std::sqrt(2.0 / 9.0);

  const auto& green = terms.at("green");
  EXPECT_EQ(green.tf, 1u);
  EXPECT_DOUBLE_EQ(green.casing, 0.0);  // capital at a sentence start does not count
  EXPECT_DOUBLE_EQ(green.relatedness, 1.5);
  EXPECT_DOUBLE_EQ(green.dispersion, 0.5);
  EXPECT_NEAR(green.tf_norm, 1.0 / norm, 1e-12);

  const auto& river = terms.at("river");
  EXPECT_EQ(river.tf, 2u);
  EXPECT_DOUBLE_EQ(river.position, 2.0);
  EXPECT_DOUBLE_EQ(river.relatedness, 3.0);
  EXPECT_DOUBLE_EQ(river.dispersion, 1.0);
  const double pos = std::log(std::log(5.0));
  EXPECT_NEAR(river.score, 3.0 * pos / (2.0 / norm / 3.0 + 1.0 / 3.0), 1e-12);

  const auto& city = terms.at("city");
  EXPECT_DOUBLE_EQ(city.position, 4.0);
  EXPECT_DOUBLE_EQ(city.relatedness, 1.5);
}

TEST(ScoreTerms, CasingCountsAcronymsAndInnerCapitals) {
  const auto terms = keyphrase::score_terms(doc("the NASA river . a big Delhi NASA"), keyphrase::default_stopwords());
  EXPECT_DOUBLE_EQ(terms.at("nasa").casing, 1.0);
  EXPECT_DOUBLE_EQ(terms.at("delhi").casing, 1.0);
  EXPECT_DOUBLE_EQ(terms.at("river").casing, 0.0);
  EXPECT_FALSE(terms.count("the"));
}

TEST(Extract, SingleWordDocument) {
  const auto kps = keyphrase::extract(doc("river"));
  ASSERT_EQ(kps.size(), 1u);
  EXPECT_EQ(kps[0].text(), "river");
  EXPECT_EQ(kps[0].start, 0u);
  EXPECT_EQ(kps[0].end, 1u);
}

TEST(Extract, EmptyAndStopwordOnly) {
  EXPECT_TRUE(keyphrase::extract(doc("")).empty());
  EXPECT_TRUE(keyphrase::extract(doc("the of and")).empty());
  EXPECT_THROW(keyphrase::extract(doc("river"), 4), std::invalid_argument);
}

TEST(Extract, CandidatesRespectBoundaries) {
  const auto kps = keyphrase::extract(doc("the clean river of Delhi , green city . fast train"), 3);
  for (const auto& kp : kps) {
    EXPECT_LE(kp.tokens.size(), 3u);
    EXPECT_EQ(kp.tokens.size(), kp.end - kp.start);
    const auto& stop = keyphrase::default_stopwords();
    EXPECT_FALSE(stop.count(kp.tokens.front())) << kp.text();
    EXPECT_FALSE(stop.count(kp.tokens.back())) << kp.text();
    for (const auto& t : kp.tokens) EXPECT_NE(t, ",") << kp.text();
  }
  bool inner_stopword = false;
  for (const auto& kp : kps) inner_stopword = inner_stopword || kp.text() == "river of Delhi";
  EXPECT_TRUE(inner_stopword);

  for (const auto& kp : keyphrase::extract(doc("clean river water flows fast"), 2)) EXPECT_LE(kp.tokens.size(), 2u);
}

TEST(Extract, TopKTruncates) {
  const auto all = keyphrase::extract(doc("clean river water . green city"));
  const auto two = keyphrase::extract(doc("clean river water . green city"), 3, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].text(), all[0].text());
  EXPECT_EQ(two[1].text(), all[1].text());
}

TEST(ExtractProperty, MatchesExhaustiveOracle) {
  std::mt19937 rng(42);
  for (int d = 0; d < 25; ++d) {
    const auto document = oracle::random_document(rng);
    for (std::size_t max_n = 1; max_n <= 3; ++max_n) {
      const auto got = keyphrase::extract(document, max_n);
      const auto want = oracle::keyphrases(document, max_n, keyphrase::default_stopwords());
      ASSERT_EQ(got.size(), want.size()) << d;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].text(), want[i].text) << d << " " << i;
        EXPECT_EQ(got[i].start, want[i].start);
        EXPECT_EQ(got[i].end, want[i].end);
        EXPECT_NEAR(got[i].score, want[i].score, 1e-12 * std::max(1.0, std::abs(want[i].score)));
      }
    }
  }
}
