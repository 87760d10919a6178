#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hinge/corpus.hpp"
#include "hinge/error.hpp"

namespace hinge::embed {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class DegenerateSeedError : public Error {
 public:
  using Error::Error;
};

// Word vectors with unit-length rows. All-zero input rows stay zero and are
// marked unusable.
class VectorStore {
 public:
  VectorStore() = default;

  // Duplicate words keep their first row.
  static VectorStore from_rows(const std::vector<std::string>& words, const RowMatrix& rows);

  // Text format: header "count dim", then "word v1 ... v_dim" per line.
  static VectorStore load(const std::string& path);

  std::size_t size() const { return words_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.cols()); }

  std::optional<std::size_t> index(std::string_view word) const;
  const std::string& word(std::size_t row) const { return words_[row]; }
  bool usable(std::size_t row) const { return usable_[row]; }
  auto row(std::size_t r) const { return matrix_.row(static_cast<Eigen::Index>(r)); }
  const RowMatrix& matrix() const { return matrix_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> vocab_;
  std::vector<bool> usable_;
  RowMatrix matrix_;
};

// Orthogonal map applied to row vectors: mapped = x * W.
class MappingMatrix {
 public:
  MappingMatrix() = default;
  explicit MappingMatrix(Eigen::MatrixXd w) : w_(std::move(w)) {}

  static MappingMatrix identity(std::size_t dim);

  const Eigen::MatrixXd& matrix() const { return w_; }
  std::size_t dim() const { return static_cast<std::size_t>(w_.rows()); }

  // ||W^T W - I||_F
  double orthogonality_error() const;

  Eigen::RowVectorXd apply(const Eigen::RowVectorXd& x) const { return x * w_; }

  // Binary: 8-byte magic, little-endian uint64 dim, then dim*dim row-major doubles.
  void save(const std::string& path) const;
  static MappingMatrix load(const std::string& path);

 private:
  Eigen::MatrixXd w_;
};

// Orthogonal Procrustes over (source word, target word) seed pairs: with X
// and Z the stacked seed rows, W = U V^T where X^T Z = U S V^T. Needs at
// least dim pairs resolvable (and usable) in both stores.
MappingMatrix learn_mapping(const VectorStore& source, const VectorStore& target,
                            const std::vector<std::pair<std::string, std::string>>& seed_pairs);

struct Neighbor {
  std::size_t index = 0;  // token index in the English sentence
  std::string token;
  double cosine = 0.0;
};

// English vocabulary lookup: exact surface first, then ASCII-lowercased.
std::optional<std::size_t> find_english(const VectorStore& english, std::string_view surface);

// Highest-cosine Latin-script token of the English sentence for a mapped
// Hindi vector. Ties keep the earliest token.
std::optional<Neighbor> closest_in_sentence(std::string_view hindi_token, const Sentence& english,
                                            const VectorStore& hindi_store, const VectorStore& english_store,
                                            const MappingMatrix& mapping);

}  // namespace hinge::embed
