#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <string>
#include <vector>

#include "relind/dataset.hpp"
#include "relind/embedding.hpp"
#include "relind/rng.hpp"

// Shared synthetic data for the benchmarks: a vocabulary of Gaussian
// vectors and relations whose targets are source + offset + noise.

namespace benchsup {

struct BenchData {
  relind::WordEmbedding embedding;
  std::vector<relind::RelationDataset> relations;
};

inline BenchData make_bench_data(int dimension, int base_words, int relation_count,
                                 int pairs_per_relation, std::uint64_t seed) {
  auto eng = relind::rng::make_engine(seed);
  const int total = base_words + relation_count * pairs_per_relation;
  std::vector<std::string> words;
  words.reserve(total);
  Eigen::MatrixXd vectors(total, dimension);
  char buf[32];
  for (int i = 0; i < base_words; ++i) {
    std::snprintf(buf, sizeof buf, "w%05d", i);
    words.push_back(buf);
    for (int j = 0; j < dimension; ++j) vectors(i, j) = relind::rng::normal(eng);
  }
  std::vector<relind::RelationDataset> relations(relation_count);
  int row = base_words;
  for (int r = 0; r < relation_count; ++r) {
    Eigen::VectorXd offset(dimension);
    for (int j = 0; j < dimension; ++j) offset[j] = relind::rng::normal(eng);
    relations[r].name = "rel" + std::to_string(r);
    for (int p = 0; p < pairs_per_relation; ++p) {
      const std::size_t s = relind::rng::uniform_index(eng, base_words);
      std::snprintf(buf, sizeof buf, "r%02d_t%03d", r, p);
      words.push_back(buf);
      for (int j = 0; j < dimension; ++j) {
        vectors(row, j) = vectors(s, j) + offset[j] + 0.05 * relind::rng::normal(eng);
      }
      relations[r].pairs.push_back({words[s], words.back()});
      ++row;
    }
  }
  return BenchData{relind::WordEmbedding::from_vectors(std::move(words), vectors, false),
                   std::move(relations)};
}

}  // namespace benchsup
