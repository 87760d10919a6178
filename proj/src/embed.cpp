#include "hinge/embed.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hinge/utf8.hpp"

namespace hinge::embed {

namespace {

constexpr char kMagic[8] = {'H', 'G', 'M', 'A', 'P', 'v', '1', '\0'};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view s, double& value) {
  std::string buf(s);
  char* end = nullptr;
  value = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && std::isfinite(value);
}

}  // namespace

VectorStore VectorStore::from_rows(const std::vector<std::string>& words, const RowMatrix& rows) {
  if (static_cast<Eigen::Index>(words.size()) != rows.rows()) {
    throw std::invalid_argument("word count does not match row count");
  }
  VectorStore store;
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (store.vocab_.emplace(words[i], store.words_.size()).second) {
      store.words_.push_back(words[i]);
      keep.push_back(static_cast<Eigen::Index>(i));
    }
  }
  store.matrix_.resize(static_cast<Eigen::Index>(keep.size()), rows.cols());
  store.usable_.assign(keep.size(), true);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    store.matrix_.row(ri) = rows.row(keep[r]);
    const double norm = store.matrix_.row(ri).norm();
    if (norm > 0.0) {
      store.matrix_.row(ri) /= norm;
    } else {
      store.usable_[r] = false;
    }
  }
  return store;
}

VectorStore VectorStore::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
  const auto header = split_ws(line);
  double count_d = 0;
  double dim_d = 0;
  if (header.size() != 2 || !parse_double(header[0], count_d) || !parse_double(header[1], dim_d) || dim_d < 1) {
    throw ParseError(path, 1, "header must be 'count dim'");
  }
  const auto dim = static_cast<std::size_t>(dim_d);

  std::vector<std::string> words;
  std::vector<double> values;
  words.reserve(static_cast<std::size_t>(count_d));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw ParseError(path, line_no,
                       "expected " + std::to_string(dim) + " values, got " + std::to_string(fields.size() - 1));
    }
    words.emplace_back(fields[0]);
    for (std::size_t k = 1; k <= dim; ++k) {
      double v = 0;
      if (!parse_double(fields[k], v)) throw ParseError(path, line_no, "bad number '" + std::string(fields[k]) + "'");
      values.push_back(v);
    }
  }
  RowMatrix rows = Eigen::Map<RowMatrix>(values.data(), static_cast<Eigen::Index>(words.size()),
                                         static_cast<Eigen::Index>(dim));
  return from_rows(words, rows);
}

std::optional<std::size_t> VectorStore::index(std::string_view word) const {
  const auto it = vocab_.find(std::string(word));
  if (it == vocab_.end()) return std::nullopt;
  return it->second;
}

MappingMatrix MappingMatrix::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return MappingMatrix(Eigen::MatrixXd::Identity(d, d));
}

double MappingMatrix::orthogonality_error() const {
  return (w_.transpose() * w_ - Eigen::MatrixXd::Identity(w_.rows(), w_.cols())).norm();
}

void MappingMatrix::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(kMagic, sizeof kMagic);
  const std::uint64_t dim = this->dim();
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  for (Eigen::Index r = 0; r < w_.rows(); ++r) {
    for (Eigen::Index c = 0; c < w_.cols(); ++c) {
      const double v = w_(r, c);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  }
}

MappingMatrix MappingMatrix::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[8];
  std::uint64_t dim = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&dim), sizeof dim);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) throw ParseError(path, 0, "not a mapping matrix file");
  if (dim == 0 || dim > 100000) throw ParseError(path, 0, "implausible dimension");
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd w(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      double v = 0;
      in.read(reinterpret_cast<char*>(&v), sizeof v);
      w(r, c) = v;
    }
  }
  if (!in) throw ParseError(path, 0, "truncated matrix");
  return MappingMatrix(std::move(w));
}

MappingMatrix learn_mapping(const VectorStore& source, const VectorStore& target,
                            const std::vector<std::pair<std::string, std::string>>& seed_pairs) {
  if (source.dim() != target.dim()) throw std::invalid_argument("source and target dimensions differ");
  const auto dim = static_cast<Eigen::Index>(source.dim());

  std::vector<std::pair<std::size_t, std::size_t>> rows;
  for (const auto& [s, t] : seed_pairs) {
    const auto si = source.index(s);
    const auto ti = target.index(t);
    if (si && ti && source.usable(*si) && target.usable(*ti)) rows.emplace_back(*si, *ti);
  }
  if (static_cast<Eigen::Index>(rows.size()) < dim || dim == 0) {
    throw DegenerateSeedError("only " + std::to_string(rows.size()) + " usable seed pairs for dimension " +
                              std::to_string(dim));
  }

  // X^T Z accumulated pair by pair in seed order
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [si, ti] : rows) {
    cross.noalias() += source.row(si).transpose() * target.row(ti);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd v = svd.matrixV();
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index arg = 0;
    u.col(k).cwiseAbs().maxCoeff(&arg);
    if (u(arg, k) < 0) {
      u.col(k) *= -1.0;
      v.col(k) *= -1.0;
    }
  }
  return MappingMatrix(u * v.transpose());
}

std::optional<std::size_t> find_english(const VectorStore& english, std::string_view surface) {
  if (auto i = english.index(surface)) return i;
  const auto lower = utf8::ascii_lower(surface);
  if (lower != surface) return english.index(lower);
  return std::nullopt;
}

std::optional<Neighbor> closest_in_sentence(std::string_view hindi_token, const Sentence& english,
                                            const VectorStore& hindi_store, const VectorStore& english_store,
                                            const MappingMatrix& mapping) {
  const auto hi = hindi_store.index(hindi_token);
  if (!hi || !hindi_store.usable(*hi)) return std::nullopt;
  const Eigen::RowVectorXd mapped = mapping.apply(hindi_store.row(*hi));
  const double mapped_norm = mapped.norm();
  if (mapped_norm == 0.0) return std::nullopt;

  std::optional<Neighbor> best;
  for (std::size_t j = 0; j < english.tokens.size(); ++j) {
    const auto& token = english.tokens[j];
    if (token.script != Script::Latin) continue;
    const auto en = find_english(english_store, token.surface);
    if (!en || !english_store.usable(*en)) continue;
    const double cosine = mapped.dot(english_store.row(*en)) / mapped_norm;
    if (!best || cosine > best->cosine) best = Neighbor{j, token.surface, cosine};
  }
  return best;
}

}  // namespace hinge::embed
