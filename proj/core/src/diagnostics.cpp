#include "relind/diagnostics.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "relind/errors.hpp"

namespace relind {

namespace {

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / p.stem();
  out += suffix;
  out += p.extension();
  return out.string();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DiagnosticsProjection export_diagnostics(const RelationDataset& relation,
                                         const WordEmbedding& embedding,
                                         const std::string& out_path) {
  std::vector<const WordPair*> usable;
  for (const auto& p : relation.pairs) {
    if (embedding.contains(p.source) && embedding.contains(p.target)) {
      usable.push_back(&p);
    }
  }
  const std::size_t n = usable.size();
  if (n < 2) {
    throw DataError("diagnostics need at least 2 usable pairs, relation '" + relation.name +
                    "' has " + std::to_string(n));
  }

  const Eigen::Index m = embedding.dimension();
  Eigen::MatrixXd stacked(2 * static_cast<Eigen::Index>(n), m);
  for (std::size_t i = 0; i < n; ++i) {
    stacked.row(static_cast<Eigen::Index>(i)) =
        embedding.lookup(usable[i]->source)->transpose();
    stacked.row(static_cast<Eigen::Index>(n + i)) =
        embedding.lookup(usable[i]->target)->transpose();
  }
  const Eigen::RowVectorXd center = stacked.colwise().mean();
  stacked.rowwise() -= center;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int pcs = std::min<int>(2, static_cast<int>(svd.singularValues().size()));

  DiagnosticsProjection out;
  out.components = Eigen::MatrixXd::Zero(2 * static_cast<Eigen::Index>(n), 2);
  out.components.leftCols(pcs).noalias() =
      svd.matrixU().leftCols(pcs) * svd.singularValues().head(pcs).asDiagonal();

  out.words.reserve(2 * n);
  out.roles.reserve(2 * n);
  out.pair_ids.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.words.push_back(usable[i]->source);
    out.roles.push_back("source");
    out.pair_ids.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.words.push_back(usable[i]->target);
    out.roles.push_back("target");
    out.pair_ids.push_back(i);
  }

  out.points_path = out_path;
  out.pairs_path = with_suffix(out_path, "_pairs");

  std::ofstream points(out.points_path, std::ios::binary);
  if (!points.is_open()) throw DataError("cannot open for writing: " + out.points_path);
  points << "word,role,pc1,pc2,pair_id\n";
  for (std::size_t i = 0; i < 2 * n; ++i) {
    points << out.words[i] << ',' << out.roles[i] << ','
           << fmt(out.components(static_cast<Eigen::Index>(i), 0)) << ','
           << fmt(out.components(static_cast<Eigen::Index>(i), 1)) << ','
           << out.pair_ids[i] << '\n';
  }
  if (!points) throw DataError("write failed: " + out.points_path);

  std::ofstream pairs(out.pairs_path, std::ios::binary);
  if (!pairs.is_open()) throw DataError("cannot open for writing: " + out.pairs_path);
  pairs << "pair_id,source,target,source_pc1,target_pc1\n";
  for (std::size_t i = 0; i < n; ++i) {
    pairs << i << ',' << usable[i]->source << ',' << usable[i]->target << ','
          << fmt(out.components(static_cast<Eigen::Index>(i), 0)) << ','
          << fmt(out.components(static_cast<Eigen::Index>(n + i), 0)) << '\n';
  }
  if (!pairs) throw DataError("write failed: " + out.pairs_path);

  return out;
}

}  // namespace relind
