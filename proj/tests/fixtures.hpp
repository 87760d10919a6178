#pragma once

#include <Eigen/Dense>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hinge/embed.hpp"

namespace hinge::testing {

inline Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = n(rng);
  }
  return m;
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
// of R's diagonal folded into Q.
inline Eigen::MatrixXd random_orthogonal(Eigen::Index dim, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(dim, dim, rng));
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (r(k, k) < 0) q.col(k) *= -1.0;
  }
  return q;
}

inline std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Source store of random unit rows and a target store holding the same rows
// rotated by `rotation`; seed pairs link word i to word i.
struct RotatedStores {
  embed::VectorStore source;
  embed::VectorStore target;
  std::vector<std::pair<std::string, std::string>> seed;
};

inline RotatedStores rotated_stores(std::size_t vocab, const Eigen::MatrixXd& rotation, std::mt19937_64& rng) {
  const auto dim = rotation.rows();
  Eigen::MatrixXd x = gaussian(static_cast<Eigen::Index>(vocab), dim, rng);
  x.rowwise().normalize();
  const Eigen::MatrixXd z = x * rotation;
  RotatedStores s;
  const auto src_words = numbered("h", vocab);
  const auto tgt_words = numbered("e", vocab);
  s.source = embed::VectorStore::from_rows(src_words, x);
  s.target = embed::VectorStore::from_rows(tgt_words, z);
  for (std::size_t i = 0; i < vocab; ++i) s.seed.emplace_back(src_words[i], tgt_words[i]);
  return s;
}

}  // namespace hinge::testing
