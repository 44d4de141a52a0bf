#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "relind/dataset.hpp"
#include "relind/embedding.hpp"

// Synthetic embeddings with known relational structure, for exercising the
// models end to end at benchmark-like scale and in miniature.

namespace testsup {

struct Fixture {
  relind::WordEmbedding embedding;
  std::vector<relind::RelationDataset> relations;
};

struct FixtureConfig {
  int dimension = 10;
  int base_words = 1000;       // background vocabulary size
  int relation_count = 20;
  int pairs_per_relation = 50;
  double noise = 0.05;         // target jitter, relative to coordinate scale
  double offset_scale = 1.0;   // relation offset magnitude, relative to the same
  double scale_top = 2.0;      // coordinate scales decay geometrically
  double scale_bottom = 0.5;   //   from scale_top down to scale_bottom
  std::uint64_t seed = 1;
};

// Targets sit at source + r (one hidden offset r per relation) plus noise.
// Sources are drawn from the base vocabulary; each target is a fresh word.
Fixture translation_fixture(const FixtureConfig& config);

// Targets sit at W * source (one hidden linear map W per relation) plus
// noise. Same vocabulary layout as translation_fixture.
Fixture linear_fixture(const FixtureConfig& config);

// Sources and targets are drawn independently of each other: the pairing
// carries no signal at all.
Fixture null_fixture(const FixtureConfig& config);

// Tiny deterministic fixture for unit tests: 2 relations, handful of pairs,
// low dimension, same generative scheme as translation_fixture.
Fixture small_translation_fixture();

// Writes relations in the tab-separated format with "#relation<TAB>name"
// section headers.
void write_custom_tsv(const std::filesystem::path& path,
                      const std::vector<relind::RelationDataset>& relations);

// Self-deleting temporary directory.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testsup
