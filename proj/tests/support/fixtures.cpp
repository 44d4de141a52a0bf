#include "support/fixtures.hpp"

#include <unistd.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "relind/rng.hpp"

namespace testsup {

namespace {

using relind::rng::Engine;

std::string base_word(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "w%04d", i);
  return buf;
}

std::string target_word(int relation, int pair) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "r%02d_t%03d", relation, pair);
  return buf;
}

std::string relation_name(int relation) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "rel%02d", relation);
  return buf;
}

// Geometrically decaying per-coordinate scales, like the singular value
// spectrum of a real embedding matrix.
Eigen::VectorXd make_scales(const FixtureConfig& config) {
  const int m = config.dimension;
  Eigen::VectorXd s(m);
  const double ratio = config.scale_bottom / config.scale_top;
  for (int i = 0; i < m; ++i) {
    const double t = m == 1 ? 0.0 : static_cast<double>(i) / (m - 1);
    s[i] = config.scale_top * std::pow(ratio, t);
  }
  return s;
}

Eigen::VectorXd draw_point(const Eigen::VectorXd& scales, Engine& eng) {
  Eigen::VectorXd v(scales.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = scales[i] * relind::rng::normal(eng);
  }
  return v;
}

enum class Structure { kOffset, kLinearMap, kNone };

Fixture build(const FixtureConfig& config, Structure structure) {
  if (config.base_words < config.pairs_per_relation) {
    throw std::invalid_argument("fixture: base vocabulary smaller than a relation");
  }
  Engine eng = relind::rng::make_engine(config.seed);
  const int m = config.dimension;
  const Eigen::VectorXd scales = make_scales(config);

  const int total =
      config.base_words + config.relation_count * config.pairs_per_relation;
  std::vector<std::string> words;
  words.reserve(total);
  Eigen::MatrixXd vectors(total, m);

  for (int i = 0; i < config.base_words; ++i) {
    words.push_back(base_word(i));
    vectors.row(i) = draw_point(scales, eng).transpose();
  }

  std::vector<relind::RelationDataset> relations;
  relations.reserve(config.relation_count);
  int row = config.base_words;
  for (int r = 0; r < config.relation_count; ++r) {
    // Hidden structure for this relation.
    Eigen::VectorXd offset;
    Eigen::MatrixXd map;
    if (structure == Structure::kOffset) {
      offset = config.offset_scale * draw_point(scales, eng);
    } else if (structure == Structure::kLinearMap) {
      // Random rows rescaled so each output coordinate keeps variance
      // scales[i]^2 under source covariance diag(scales^2).
      map.resize(m, m);
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd w(m);
        for (int j = 0; j < m; ++j) w[j] = relind::rng::normal(eng);
        const double out_sd = (w.array() * scales.array()).matrix().norm();
        map.row(i) = (scales[i] / out_sd) * w.transpose();
      }
    }

    relind::RelationDataset rel;
    rel.name = relation_name(r);
    const auto sources = relind::rng::sample_without_replacement(
        static_cast<std::size_t>(config.base_words),
        static_cast<std::size_t>(config.pairs_per_relation), eng);
    for (int p = 0; p < config.pairs_per_relation; ++p) {
      const Eigen::VectorXd source = vectors.row(static_cast<Eigen::Index>(sources[p]));
      Eigen::VectorXd target(m);
      switch (structure) {
        case Structure::kOffset:
          target = source + offset;
          break;
        case Structure::kLinearMap:
          target = map * source;
          break;
        case Structure::kNone:
          target = draw_point(scales, eng);
          break;
      }
      for (int i = 0; i < m; ++i) {
        target[i] += config.noise * scales[i] * relind::rng::normal(eng);
      }
      words.push_back(target_word(r, p));
      vectors.row(row) = target.transpose();
      rel.pairs.push_back({words[sources[p]], words.back()});
      ++row;
    }
    relations.push_back(std::move(rel));
  }

  return Fixture{relind::WordEmbedding::from_vectors(std::move(words), vectors, false),
                 std::move(relations)};
}

}  // namespace

Fixture translation_fixture(const FixtureConfig& config) {
  return build(config, Structure::kOffset);
}

Fixture linear_fixture(const FixtureConfig& config) {
  return build(config, Structure::kLinearMap);
}

Fixture null_fixture(const FixtureConfig& config) {
  return build(config, Structure::kNone);
}

Fixture small_translation_fixture() {
  FixtureConfig config;
  config.dimension = 4;
  config.base_words = 40;
  config.relation_count = 2;
  config.pairs_per_relation = 12;
  config.noise = 0.05;
  config.seed = 7;
  return translation_fixture(config);
}

void write_custom_tsv(const std::filesystem::path& path,
                      const std::vector<relind::RelationDataset>& relations) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (const auto& rel : relations) {
    out << "#relation\t" << rel.name << "\n";
    for (const auto& pair : rel.pairs) {
      out << pair.source << "\t" << pair.target << "\n";
    }
  }
}

TempDir::TempDir() {
  auto base = std::filesystem::temp_directory_path();
  static std::uint64_t counter = 0;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto candidate =
        base / ("relind-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::error_code ec;
    if (std::filesystem::create_directory(candidate, ec)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace testsup
