#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "relind/dataset.hpp"
#include "relind/embedding.hpp"

namespace relind {

// Two-dimensional picture of one relation: all source and target vectors
// stacked, centered, and projected onto their top two principal
// directions (via SVD of the centered stack).
struct DiagnosticsProjection {
  std::vector<std::string> words;      // sources first, then targets
  std::vector<std::string> roles;      // "source" or "target", aligned with words
  std::vector<std::size_t> pair_ids;   // 0-based pair index, aligned with words
  Eigen::MatrixXd components;          // 2n x 2 principal component scores
  std::string points_path;             // CSV written: word,role,pc1,pc2,pair_id
  std::string pairs_path;              // CSV written: pair_id,source,target,source_pc1,target_pc1
};

// Requires >= 2 usable pairs and in-vocabulary words. Writes two CSV
// files: the point cloud at out_path and per-pair first components at
// out_path with "_pairs" inserted before the extension.
DiagnosticsProjection export_diagnostics(const RelationDataset& relation,
                                         const WordEmbedding& embedding,
                                         const std::string& out_path);

}  // namespace relind
