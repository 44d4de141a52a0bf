#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "relind/diagnostics.hpp"
#include "relind/errors.hpp"
#include "relind/rng.hpp"
#include "support/fixtures.hpp"

using namespace relind;

namespace {

struct Cloud {
  WordEmbedding embedding;
  RelationDataset relation;
};

// n Gaussian sources and exactly translated targets, plus a few fillers.
Cloud translated_cloud(int n, int dimension, std::uint64_t seed) {
  auto eng = rng::make_engine(seed);
  Eigen::VectorXd offset(dimension);
  for (int j = 0; j < dimension; ++j) offset[j] = 3.0 + j;

  std::vector<std::string> names;
  Eigen::MatrixXd rows(2 * n + 3, dimension);
  RelationDataset relation;
  relation.name = "shift";
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd s(dimension);
    for (int j = 0; j < dimension; ++j) s[j] = rng::normal(eng);
    names.push_back("s" + std::to_string(i));
    rows.row(2 * i) = s.transpose();
    names.push_back("t" + std::to_string(i));
    rows.row(2 * i + 1) = (s + offset).transpose();
    relation.pairs.push_back({"s" + std::to_string(i), "t" + std::to_string(i)});
  }
  for (int i = 0; i < 3; ++i) {
    names.push_back("filler" + std::to_string(i));
    for (int j = 0; j < dimension; ++j) rows(2 * n + i, j) = rng::normal(eng);
  }
  return {WordEmbedding::from_vectors(names, rows, false), std::move(relation)};
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.is_open());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("layout lists sources then targets with aligned pair ids") {
    const auto cloud = translated_cloud(8, 5, 1);
    testsup::TempDir tmp;
    const auto proj = export_diagnostics(cloud.relation, cloud.embedding, tmp.file("d.csv"));

    REQUIRE(proj.words.size() == 16);
    REQUIRE(proj.roles.size() == 16);
    REQUIRE(proj.pair_ids.size() == 16);
    REQUIRE(proj.components.rows() == 16);
    REQUIRE(proj.components.cols() == 2);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(proj.words[i] == "s" + std::to_string(i));
      CHECK(proj.roles[i] == "source");
      CHECK(proj.pair_ids[i] == i);
      CHECK(proj.words[8 + i] == "t" + std::to_string(i));
      CHECK(proj.roles[8 + i] == "target");
      CHECK(proj.pair_ids[8 + i] == i);
    }
  }

  TEST_CASE("component scores are centered") {
    const auto cloud = translated_cloud(10, 4, 2);
    testsup::TempDir tmp;
    const auto proj = export_diagnostics(cloud.relation, cloud.embedding, tmp.file("d.csv"));
    CHECK(std::abs(proj.components.col(0).mean()) < 1e-9);
    CHECK(std::abs(proj.components.col(1).mean()) < 1e-9);
  }

  TEST_CASE("an exact translation shows unit slope and constant shift in pc1") {
    const auto cloud = translated_cloud(20, 5, 3);
    testsup::TempDir tmp;
    const auto proj = export_diagnostics(cloud.relation, cloud.embedding, tmp.file("d.csv"));

    const auto s = proj.components.col(0).head(20);
    const auto t = proj.components.col(0).tail(20);
    const double s_mean = s.mean();
    const double t_mean = t.mean();
    const double cov = ((s.array() - s_mean) * (t.array() - t_mean)).sum();
    const double var = ((s.array() - s_mean) * (s.array() - s_mean)).sum();
    CHECK(cov / var == doctest::Approx(1.0).epsilon(1e-9));

    const double shift = t[0] - s[0];
    for (int i = 1; i < 20; ++i) {
      CHECK(t[i] - s[i] == doctest::Approx(shift).epsilon(1e-9));
    }
  }

  TEST_CASE("written files parse back to the projection exactly") {
    const auto cloud = translated_cloud(6, 4, 4);
    testsup::TempDir tmp;
    const auto proj = export_diagnostics(cloud.relation, cloud.embedding, tmp.file("proj.csv"));
    CHECK(proj.points_path == tmp.file("proj.csv").string());
    CHECK(proj.pairs_path == tmp.file("proj_pairs.csv").string());

    const auto points = read_csv(proj.points_path);
    REQUIRE(points.size() == 13);
    CHECK(points[0] == std::vector<std::string>{"word", "role", "pc1", "pc2", "pair_id"});
    for (std::size_t i = 0; i < 12; ++i) {
      const auto& row = points[i + 1];
      REQUIRE(row.size() == 5);
      CHECK(row[0] == proj.words[i]);
      CHECK(row[1] == proj.roles[i]);
      // %.17g round trips doubles bit for bit.
      CHECK(std::strtod(row[2].c_str(), nullptr) == proj.components(static_cast<int>(i), 0));
      CHECK(std::strtod(row[3].c_str(), nullptr) == proj.components(static_cast<int>(i), 1));
      CHECK(row[4] == std::to_string(proj.pair_ids[i]));
    }

    const auto pairs = read_csv(proj.pairs_path);
    REQUIRE(pairs.size() == 7);
    CHECK(pairs[0] ==
          std::vector<std::string>{"pair_id", "source", "target", "source_pc1", "target_pc1"});
    for (int i = 0; i < 6; ++i) {
      const auto& row = pairs[static_cast<std::size_t>(i) + 1];
      REQUIRE(row.size() == 5);
      CHECK(row[0] == std::to_string(i));
      CHECK(row[1] == cloud.relation.pairs[static_cast<std::size_t>(i)].source);
      CHECK(row[2] == cloud.relation.pairs[static_cast<std::size_t>(i)].target);
      CHECK(std::strtod(row[3].c_str(), nullptr) == proj.components(i, 0));
      CHECK(std::strtod(row[4].c_str(), nullptr) == proj.components(6 + i, 0));
    }
  }

  TEST_CASE("out of vocabulary pairs are excluded and renumbered") {
    auto cloud = translated_cloud(4, 3, 5);
    cloud.relation.pairs.insert(cloud.relation.pairs.begin() + 1, {"s0", "missing"});
    testsup::TempDir tmp;
    const auto proj = export_diagnostics(cloud.relation, cloud.embedding, tmp.file("d.csv"));
    REQUIRE(proj.words.size() == 8);
    CHECK(proj.words[0] == "s0");
    CHECK(proj.words[1] == "s1");
    CHECK(proj.pair_ids[1] == 1);
    CHECK(proj.words[4] == "t0");
  }

  TEST_CASE("fewer than two usable pairs is an error") {
    auto cloud = translated_cloud(2, 3, 6);
    cloud.relation.pairs[1].target = "missing";
    testsup::TempDir tmp;
    try {
      export_diagnostics(cloud.relation, cloud.embedding, tmp.file("d.csv"));
      FAIL("expected a data error");
    } catch (const DataError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("shift") != std::string::npos);
      CHECK(msg.find("1") != std::string::npos);
    }
  }

  TEST_CASE("a one dimensional embedding zeroes the second component") {
    const auto cloud = translated_cloud(5, 1, 7);
    testsup::TempDir tmp;
    const auto proj = export_diagnostics(cloud.relation, cloud.embedding, tmp.file("d.csv"));
    for (int i = 0; i < 10; ++i) CHECK(proj.components(i, 1) == 0.0);
  }
}
