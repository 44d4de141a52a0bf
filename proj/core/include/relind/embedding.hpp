#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace relind {

enum class EmbeddingFormat {
  kGloveText,     // "word v1 v2 ... vm" per line, no header
  kWord2VecText,  // "count dim" header line, then same row format
};

EmbeddingFormat embedding_format_from_name(std::string_view name);
std::string to_string(EmbeddingFormat format);

// Gaussian fit over every stored vector; the marginal "this is a word at
// all" density that the type factors are measured against. Mean is the
// coordinate-wise average, covariance the unbiased sample covariance with
// a small ridge on the diagonal so it is always positive definite.
struct BackgroundGaussian {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;    // after regularization
  Eigen::MatrixXd chol_lower;    // Cholesky factor of covariance
  double log_normalizer = 0.0;   // -(m*log(2*pi) + log|cov|) / 2
  double ridge = 0.0;            // value added to each diagonal entry

  double logpdf(const Eigen::VectorXd& v) const;
};

// Immutable word -> vector table plus its background density.
class WordEmbedding {
 public:
  // Parses a text embedding file. Rows with a dimension mismatch, values
  // that do not parse, or non-finite values raise ParseError naming the
  // line. With case_fold, words are ASCII-lowercased and the first
  // occurrence of a folded form wins. max_words > 0 keeps only the first
  // max_words entries.
  static WordEmbedding load(const std::string& path, EmbeddingFormat format,
                            bool case_fold, std::size_t max_words = 0);

  // Builds a table directly from rows of `vectors` (one word per row).
  static WordEmbedding from_vectors(std::vector<std::string> words,
                                    const Eigen::MatrixXd& vectors, bool case_fold);

  std::size_t size() const { return words_.size(); }
  int dimension() const { return dimension_; }
  bool case_fold() const { return case_fold_; }
  const std::vector<std::string>& words() const { return words_; }

  // nullptr when absent. The query is folded first when the table was
  // built with case folding.
  const Eigen::VectorXd* lookup(std::string_view word) const;
  bool contains(std::string_view word) const { return lookup(word) != nullptr; }

  const Eigen::VectorXd& vector_at(std::size_t index) const { return vectors_[index]; }

  const BackgroundGaussian& background() const { return background_; }
  double background_logpdf(const Eigen::VectorXd& v) const { return background_.logpdf(v); }

  // Writes the table back out in the given text format, round-trip exact.
  void save(const std::string& path, EmbeddingFormat format) const;

 private:
  WordEmbedding() = default;
  void finalize();  // builds the index and fits the background density

  std::vector<std::string> words_;
  std::vector<Eigen::VectorXd> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  BackgroundGaussian background_;
  int dimension_ = 0;
  bool case_fold_ = false;
};

std::string fold_case_ascii(std::string_view word);

}  // namespace relind
