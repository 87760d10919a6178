#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hinge/error.hpp"
#include "hinge/embed.hpp"
#include "support.hpp"

using namespace hinge;
using hinge::testing::TempDir;

TEST(VectorStore, LoadNormalizesRows) {
  TempDir dir;
  const auto path = dir.write("v.txt", "2 3\nhouse 3 0 4\nghar 0 2 0\n");
  const auto store = embed::VectorStore::load(path);
  ASSERT_EQ(store.size(), 2u);
  EXPECT_EQ(store.dim(), 3u);
  EXPECT_NEAR(store.row(0).norm(), 1.0, 1e-12);
  EXPECT_NEAR(store.row(0)(2), 0.8, 1e-12);
  EXPECT_NEAR(store.row(1).norm(), 1.0, 1e-12);
}

TEST(VectorStore, WrongArityReportsLine) {
  TempDir dir;
  const auto path = dir.write("v.txt", "3 3\na 1 0 0\nb 1 0\nc 0 0 1\n");
  try {
    embed::VectorStore::load(path);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(VectorStore, ZeroRowIsUnusable) {
  TempDir dir;
  const auto store = embed::VectorStore::load(dir.write("v.txt", "2 2\nz 0 0\nx 1 1\n"));
  EXPECT_FALSE(store.usable(*store.index("z")));
  EXPECT_EQ(store.row(*store.index("z")).norm(), 0.0);
  EXPECT_TRUE(store.usable(*store.index("x")));
}

TEST(VectorStore, DuplicateKeepsFirst) {
  TempDir dir;
  const auto store = embed::VectorStore::load(dir.write("v.txt", "2 2\nx 1 0\nx 0 1\n"));
  EXPECT_EQ(store.size(), 1u);
  EXPECT_NEAR(store.row(0)(0), 1.0, 1e-12);
}

TEST(Mapping, IdentityWhenStoresMatch) {
  std::mt19937_64 rng(1);
  const auto s = hinge::testing::rotated_stores(20, Eigen::MatrixXd::Identity(6, 6), rng);
  const auto w = embed::learn_mapping(s.source, s.target, s.seed);
  EXPECT_LT((w.matrix() - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-9);
}

TEST(Mapping, RecoversKnownRotation) {
  std::mt19937_64 rng(2);
  const auto r = hinge::testing::random_orthogonal(12, rng);
  const auto s = hinge::testing::rotated_stores(40, r, rng);
  const auto w = embed::learn_mapping(s.source, s.target, s.seed);
  EXPECT_LT((w.matrix() - r).norm(), 1e-6);
  EXPECT_LT(w.orthogonality_error(), 1e-6);
}

TEST(Mapping, ExactlyDimPairsStaysOrthogonal) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = hinge::testing::random_orthogonal(8, rng);
    auto s = hinge::testing::rotated_stores(8, r, rng);
    const auto w = embed::learn_mapping(s.source, s.target, s.seed);
    EXPECT_LT(w.orthogonality_error(), 1e-6);
  }
}

TEST(Mapping, TooFewPairsIsDegenerate) {
  std::mt19937_64 rng(4);
  auto s = hinge::testing::rotated_stores(10, Eigen::MatrixXd::Identity(5, 5), rng);
  s.seed.resize(4);
  EXPECT_THROW(embed::learn_mapping(s.source, s.target, s.seed), embed::DegenerateSeedError);
  s.seed.emplace_back("h4", "missing");
  EXPECT_THROW(embed::learn_mapping(s.source, s.target, s.seed), embed::DegenerateSeedError);
}

TEST(Mapping, Deterministic) {
  std::mt19937_64 rng(5);
  const auto s = hinge::testing::rotated_stores(30, hinge::testing::random_orthogonal(10, rng), rng);
  const auto a = embed::learn_mapping(s.source, s.target, s.seed);
  const auto b = embed::learn_mapping(s.source, s.target, s.seed);
  EXPECT_TRUE(a.matrix() == b.matrix());
}

TEST(Mapping, SaveLoadRoundTrip) {
  std::mt19937_64 rng(6);
  const embed::MappingMatrix w(hinge::testing::random_orthogonal(7, rng));
  TempDir dir;
  const auto path = dir.file("w.bin");
  w.save(path);
  EXPECT_TRUE(embed::MappingMatrix::load(path).matrix() == w.matrix());
  EXPECT_EQ(std::filesystem::file_size(path), 16u + 7u * 7u * 8u);
  EXPECT_THROW(embed::MappingMatrix::load(dir.write("bad.bin", "nonsense")), Error);
}

TEST(MappingProperty, PreservesCosine) {
  std::mt19937_64 rng(7);
  const auto s = hinge::testing::rotated_stores(60, hinge::testing::random_orthogonal(16, rng), rng);
  // noisy target so the learned W is not just R
  Eigen::MatrixXd noisy = s.target.matrix() + 0.3 * hinge::testing::gaussian(60, 16, rng);
  const auto target = embed::VectorStore::from_rows(hinge::testing::numbered("e", 60), noisy);
  const auto w = embed::learn_mapping(s.source, target, s.seed);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::RowVectorXd a = hinge::testing::gaussian(1, 16, rng);
    const Eigen::RowVectorXd b = hinge::testing::gaussian(1, 16, rng);
    const auto wa = w.apply(a);
    const auto wb = w.apply(b);
    const double before = a.dot(b) / (a.norm() * b.norm());
    const double after = wa.dot(wb) / (wa.norm() * wb.norm());
    EXPECT_NEAR(before, after, 1e-9);
  }
}

TEST(MappingProperty, ProcrustesDominatesRandomOrthogonal) {
  std::mt19937_64 rng(8);
  const Eigen::Index dim = 5;
  for (int problem = 0; problem < 3; ++problem) {
    Eigen::MatrixXd x = hinge::testing::gaussian(10, dim, rng);
    Eigen::MatrixXd z = hinge::testing::gaussian(10, dim, rng);
    x.rowwise().normalize();
    z.rowwise().normalize();
    const auto src_words = hinge::testing::numbered("h", 10);
    const auto tgt_words = hinge::testing::numbered("e", 10);
    const auto src = embed::VectorStore::from_rows(src_words, x);
    const auto tgt = embed::VectorStore::from_rows(tgt_words, z);
    std::vector<std::pair<std::string, std::string>> seed;
    for (std::size_t i = 0; i < 10; ++i) seed.emplace_back(src_words[i], tgt_words[i]);
    const auto w = embed::learn_mapping(src, tgt, seed);
    const double best = (x * w.matrix() - z).norm();
    for (int k = 0; k < 1000; ++k) {
      const auto q = hinge::testing::random_orthogonal(dim, rng);
      EXPECT_LE(best, (x * q - z).norm() + 1e-12);
    }
  }
}

TEST(ClosestInSentence, Examples) {
  const std::vector<std::string> hi_words{"घर", "वह"};
  embed::RowMatrix hi(2, 3);
  hi << 1, 0, 0, 0, 1, 0;
  const std::vector<std::string> en_words{"house", "home", "the"};
  embed::RowMatrix en(3, 3);
  en << 0.999, 0.04, 0, 0.6, 0.8, 0, 0, 0, 1;
  const auto hs = embed::VectorStore::from_rows(hi_words, hi);
  const auto es = embed::VectorStore::from_rows(en_words, en);
  const auto id = embed::MappingMatrix::identity(3);

  const auto single = embed::closest_in_sentence("घर", tokenize("zzz the qqq"), hs, es, id);
  ASSERT_TRUE(single);
  EXPECT_EQ(single->token, "the");
  EXPECT_EQ(single->index, 1u);

  const auto planted = embed::closest_in_sentence("घर", tokenize("The home House ."), hs, es, id);
  ASSERT_TRUE(planted);
  EXPECT_EQ(planted->token, "House");
  EXPECT_GT(planted->cosine, 0.99);

  EXPECT_FALSE(embed::closest_in_sentence("घर", tokenize("zzz qqq ."), hs, es, id));
  EXPECT_FALSE(embed::closest_in_sentence("अज्ञात", tokenize("house"), hs, es, id));
}
