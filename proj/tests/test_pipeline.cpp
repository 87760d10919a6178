#include <gtest/gtest.h>

#include <filesystem>

#include "hinge/pipeline.hpp"
#include "support.hpp"

using namespace hinge;
using hinge::testing::data_path;
using hinge::testing::read_file;
using hinge::testing::TempDir;

namespace {

pipeline::PipelineConfig mini_config(const std::string& out_dir) {
  pipeline::PipelineConfig c;
  c.seed_dict = data_path("mini/seed_dict.tsv");
  c.pairs = data_path("mini/pairs.jsonl");
  c.refs = data_path("mini/refs.tsv");
  c.ratings = data_path("mini/ratings.jsonl");
  c.hi_vectors = data_path("mini/hi.vec");
  c.en_vectors = data_path("mini/en.vec");
  c.pos_lexicon = data_path("mini/pos_lexicon.tsv");
  c.hindi_stopwords = data_path("mini/stopwords_hi.txt");
  c.out_dir = out_dir;
  return c;
}

std::vector<std::string> listing(const std::string& dir) {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

TEST(Pipeline, MiniCorpusRunIsReproducible) {
  TempDir dir;
  auto a = mini_config(dir.file("a"));
  auto b = mini_config(dir.file("b"));
  b.threads = 3;
  const auto sa = pipeline::run(a);
  const auto sb = pipeline::run(b);

  EXPECT_EQ(sa.pairs, 20u);
  EXPECT_EQ(sa.generation.outputs, 40u);
  EXPECT_EQ(sa.scored, 40u);
  EXPECT_GT(sa.embed_entries, 0u);
  ASSERT_TRUE(sa.corpus);
  EXPECT_GT(sa.corpus->bleu, 0.0);
  EXPECT_LE(sa.corpus->bleu, 1.0);

  const auto files = listing(a.out_dir);
  EXPECT_EQ(files, listing(b.out_dir));
  for (const char* f : {"dictionary.tsv", "translation.tsv", "links.txt", "mapping.bin", "generated.jsonl",
                        "scores.tsv", "table4.tsv", "table5.tsv", "manifest.json"}) {
    EXPECT_TRUE(std::find(files.begin(), files.end(), f) != files.end()) << f;
  }
  for (const auto& f : files) {
    EXPECT_EQ(read_file(a.out_dir + "/" + f), read_file(b.out_dir + "/" + f)) << f;
  }
}

TEST(Pipeline, RunsWithoutOptionalInputs) {
  TempDir dir;
  pipeline::PipelineConfig c;
  c.seed_dict = data_path("mini/seed_dict.tsv");
  c.pairs = data_path("mini/pairs.jsonl");
  c.refs = data_path("mini/refs.tsv");
  c.out_dir = dir.file("out");
  c.method = generate::MethodSelection::WAC;
  const auto s = pipeline::run(c);
  EXPECT_EQ(s.generation.outputs, 20u);
  EXPECT_EQ(s.embed_entries, 0u);
  EXPECT_FALSE(std::filesystem::exists(c.out_dir + "/table4.tsv"));
  EXPECT_TRUE(std::filesystem::exists(c.out_dir + "/manifest.json"));
}

TEST(Pipeline, ValidateRejectsBadConfig) {
  TempDir dir;
  auto c = mini_config(dir.file("out"));
  EXPECT_NO_THROW(pipeline::validate(c));
  auto missing = c;
  missing.seed_dict.clear();
  EXPECT_THROW(pipeline::validate(missing), pipeline::ConfigError);
  auto absent = c;
  absent.pairs = "/nonexistent/pairs.jsonl";
  EXPECT_THROW(pipeline::validate(absent), pipeline::ConfigError);
  auto threshold = c;
  threshold.embed_threshold = 0.0;
  EXPECT_THROW(pipeline::validate(threshold), pipeline::ConfigError);
  auto iterations = c;
  iterations.ibm1_iterations = 0;
  EXPECT_THROW(pipeline::validate(iterations), pipeline::ConfigError);
  auto half = c;
  half.en_vectors.clear();
  EXPECT_THROW(pipeline::validate(half), pipeline::ConfigError);
}

TEST(Fnv1a, KnownValues) {
  EXPECT_EQ(pipeline::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(pipeline::hex64(pipeline::fnv1a("a")), "af63dc4c8601ec8c");
}
