#include "relind/embedding.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "relind/errors.hpp"

namespace relind {

namespace {

// Splits on runs of ASCII spaces and tabs; tolerant of trailing '\r'.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_value(std::string_view token, const std::string& path, std::size_t line_no) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(path + ", line " + std::to_string(line_no) +
                     ": cannot parse value '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(path + ", line " + std::to_string(line_no) +
                     ": non-finite value '" + std::string(token) + "'");
  }
  return value;
}

bool parse_count(std::string_view token, std::size_t& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::string fold_case_ascii(std::string_view word) {
  std::string out(word);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

EmbeddingFormat embedding_format_from_name(std::string_view name) {
  if (name == "glove-text") return EmbeddingFormat::kGloveText;
  if (name == "word2vec-text") return EmbeddingFormat::kWord2VecText;
  throw ConfigError("unknown embedding format '" + std::string(name) +
                    "' (expected glove-text or word2vec-text)");
}

std::string to_string(EmbeddingFormat format) {
  switch (format) {
    case EmbeddingFormat::kGloveText: return "glove-text";
    case EmbeddingFormat::kWord2VecText: return "word2vec-text";
  }
  return "?";
}

double BackgroundGaussian::logpdf(const Eigen::VectorXd& v) const {
  // Solve L y = (v - mean); the quadratic form is then |y|^2.
  const Eigen::VectorXd y =
      chol_lower.triangularView<Eigen::Lower>().solve(v - mean);
  return log_normalizer - 0.5 * y.squaredNorm();
}

void WordEmbedding::finalize() {
  const std::size_t n = vectors_.size();
  if (n == 0) throw DataError("embedding is empty");
  const int m = dimension_;

  if (index_.empty()) {
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index_.emplace(words_[i], i);
  }

  BackgroundGaussian bg;
  bg.mean = Eigen::VectorXd::Zero(m);
  for (const auto& v : vectors_) bg.mean += v;
  bg.mean /= static_cast<double>(n);

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
  if (n >= 2) {
    for (const auto& v : vectors_) {
      const Eigen::VectorXd d = v - bg.mean;
      cov.noalias() += d * d.transpose();
    }
    cov /= static_cast<double>(n - 1);
  }

  double ridge = 1e-6 * cov.trace() / static_cast<double>(m);
  if (!(ridge > 0.0)) ridge = 1e-12;  // degenerate vocabulary
  bg.ridge = ridge;
  bg.covariance = cov + ridge * Eigen::MatrixXd::Identity(m, m);

  Eigen::LLT<Eigen::MatrixXd> llt(bg.covariance);
  while (llt.info() != Eigen::Success) {
    // Only reachable with pathological scaling; keep the density proper.
    bg.ridge *= 10.0;
    bg.covariance.diagonal().array() += bg.ridge;
    llt.compute(bg.covariance);
  }
  bg.chol_lower = llt.matrixL();

  double log_det = 0.0;
  for (int i = 0; i < m; ++i) log_det += 2.0 * std::log(bg.chol_lower(i, i));
  bg.log_normalizer =
      -0.5 * (static_cast<double>(m) * std::log(2.0 * std::numbers::pi) + log_det);

  background_ = std::move(bg);

  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(background_.logpdf(vectors_[i]))) {
      throw DataError("background density is not finite at stored word '" + words_[i] +
                      "'");
    }
  }
}

WordEmbedding WordEmbedding::load(const std::string& path, EmbeddingFormat format,
                                  bool case_fold, std::size_t max_words) {
  std::ifstream in(path);
  if (!in.is_open()) throw DataError("cannot open embedding file: " + path);

  WordEmbedding emb;
  emb.case_fold_ = case_fold;

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  int dim = -1;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (format == EmbeddingFormat::kWord2VecText && !header_seen) {
      std::size_t count = 0, header_dim = 0;
      if (fields.size() != 2 || !parse_count(fields[0], count) ||
          !parse_count(fields[1], header_dim) || header_dim == 0) {
        throw ParseError(path + ", line " + std::to_string(line_no) +
                         ": expected 'count dim' header");
      }
      dim = static_cast<int>(header_dim);
      header_seen = true;
      continue;
    }

    if (fields.size() < 2) {
      throw ParseError(path + ", line " + std::to_string(line_no) +
                       ": expected a word followed by values");
    }
    const int row_dim = static_cast<int>(fields.size()) - 1;
    if (dim < 0) {
      dim = row_dim;  // first data row fixes the dimension
    } else if (row_dim != dim) {
      throw ParseError(path + ", line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dim) + " values, got " + std::to_string(row_dim));
    }

    if (max_words > 0 && emb.words_.size() >= max_words) break;

    std::string word(fields[0]);
    if (case_fold) word = fold_case_ascii(word);
    if (!emb.index_.emplace(word, emb.words_.size()).second) {
      continue;  // first occurrence wins
    }

    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = parse_value(fields[i + 1], path, line_no);
    emb.words_.push_back(std::move(word));
    emb.vectors_.push_back(std::move(v));
  }

  if (emb.words_.empty()) throw ParseError(path + ": empty embedding file");
  emb.dimension_ = dim;
  emb.finalize();
  return emb;
}

WordEmbedding WordEmbedding::from_vectors(std::vector<std::string> words,
                                          const Eigen::MatrixXd& vectors, bool case_fold) {
  if (static_cast<Eigen::Index>(words.size()) != vectors.rows()) {
    throw DataError("word count does not match vector row count");
  }
  if (vectors.cols() == 0 || vectors.rows() == 0) throw DataError("embedding is empty");
  if (!vectors.allFinite()) throw DataError("non-finite value in embedding vectors");

  WordEmbedding emb;
  emb.case_fold_ = case_fold;
  emb.dimension_ = static_cast<int>(vectors.cols());
  for (std::size_t r = 0; r < words.size(); ++r) {
    std::string word = case_fold ? fold_case_ascii(words[r]) : words[r];
    if (word.empty()) throw DataError("empty word at row " + std::to_string(r));
    if (!emb.index_.emplace(word, emb.words_.size()).second) {
      continue;  // first occurrence wins
    }
    emb.words_.push_back(std::move(word));
    emb.vectors_.push_back(vectors.row(static_cast<Eigen::Index>(r)).transpose());
  }
  emb.finalize();
  return emb;
}

const Eigen::VectorXd* WordEmbedding::lookup(std::string_view word) const {
  std::string key = case_fold_ ? fold_case_ascii(word) : std::string(word);
  const auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  return &vectors_[it->second];
}

void WordEmbedding::save(const std::string& path, EmbeddingFormat format) const {
  std::ofstream out(path);
  if (!out.is_open()) throw DataError("cannot open for writing: " + path);
  char buf[40];
  if (format == EmbeddingFormat::kWord2VecText) {
    out << words_.size() << ' ' << dimension_ << '\n';
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i];
    const Eigen::VectorXd& v = vectors_[i];
    for (int j = 0; j < dimension_; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", v[j]);
      out << ' ' << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace relind
