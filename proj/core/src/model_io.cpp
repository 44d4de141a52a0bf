#include "relind/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "relind/errors.hpp"

// Model files are JSON with a format tag and version. Doubles rely on the
// shortest-round-trip printing of the JSON library, so a loaded model
// reproduces the saved one bit for bit.

namespace relind {

namespace {

using nlohmann::json;

json vec_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vec_from_json(const json& j) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out[i] = j.at(static_cast<std::size_t>(i)).get<double>();
  }
  return out;
}

json mat_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXd mat_from_json(const json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("ragged matrix in model file");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
  }
  return out;
}

json predictive_to_json(const UnivariatePredictive& p) {
  return json::array({p.df, p.location, p.scale2});
}

UnivariatePredictive predictive_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("malformed predictive triple");
  UnivariatePredictive p;
  p.df = j.at(0).get<double>();
  p.location = j.at(1).get<double>();
  p.scale2 = j.at(2).get<double>();
  return p;
}

json predictives_to_json(const std::vector<UnivariatePredictive>& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(predictive_to_json(p));
  return out;
}

std::vector<UnivariatePredictive> predictives_from_json(const json& j) {
  std::vector<UnivariatePredictive> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(predictive_from_json(item));
  return out;
}

json basis_to_json(const LowRankBasis& b) {
  return json{{"k", b.k},
              {"basis", mat_to_json(b.basis)},
              {"design", mat_to_json(b.design)},
              {"singular_values", vec_to_json(b.singular_values)},
              {"rank_deficient", b.rank_deficient}};
}

LowRankBasis basis_from_json(const json& j) {
  LowRankBasis b;
  b.k = j.at("k").get<int>();
  b.basis = mat_from_json(j.at("basis"));
  b.design = mat_from_json(j.at("design"));
  b.singular_values = vec_from_json(j.at("singular_values"));
  b.rank_deficient = j.at("rank_deficient").get<bool>();
  return b;
}

}  // namespace

void save_model(const StoredModel& stored, const std::string& path) {
  json j;
  j["format"] = "relind-model";
  j["version"] = 1;
  j["kind"] = to_string(stored.kind);

  json m;
  switch (stored.kind) {
    case ModelKind::kTranslation: {
      const auto& model = std::get<TranslationRelationModel>(stored.model);
      m["dimension"] = model.dimension;
      m["pair_count"] = model.pair_count;
      m["seed"] = model.seed;
      m["source_predictive"] = predictives_to_json(model.source_predictive);
      m["target_predictive"] = predictives_to_json(model.target_predictive);
      m["diff_predictive"] = predictives_to_json(model.diff_predictive);
      m["cross_predictive"] = predictives_to_json(model.cross_predictive);
      break;
    }
    case ModelKind::kRegression: {
      const auto& model = std::get<RegressionRelationModel>(stored.model);
      m["dimension"] = model.dimension;
      m["pair_count"] = model.pair_count;
      m["k"] = model.k;
      m["source_predictive"] = predictives_to_json(model.source_predictive);
      m["basis"] = basis_to_json(model.basis);
      // Every coordinate model shares the basis, df and gram inverse;
      // store the shared parts once.
      if (model.coordinate_models.empty()) throw DataError("regression model is empty");
      m["df"] = model.coordinate_models.front().df;
      m["gram_inverse"] = mat_to_json(model.coordinate_models.front().gram_inverse);
      json coords = json::array();
      for (const auto& cm : model.coordinate_models) {
        coords.push_back(json{{"coefficients", vec_to_json(cm.coefficients)},
                              {"sigma0_2", cm.sigma0_2}});
      }
      m["coordinate_models"] = std::move(coords);
      break;
    }
    case ModelKind::kThreeCosAvg: {
      const auto& model = std::get<ThreeCosAvgModel>(stored.model);
      m["average_translation"] = vec_to_json(model.average_translation);
      break;
    }
    case ModelKind::kLRCos: {
      const auto& model = std::get<LRCosModel>(stored.model);
      m["dimension"] = model.dimension;
      m["source_predictive"] = predictives_to_json(model.source_predictive);
      m["target_predictive"] = predictives_to_json(model.target_predictive);
      break;
    }
    case ModelKind::kMargin: {
      const auto& model = std::get<MarginClassifier>(stored.model);
      m["weights"] = vec_to_json(model.weights);
      m["bias"] = model.bias;
      m["c"] = model.c;
      m["positive_weight"] = model.positive_weight;
      m["negative_weight"] = model.negative_weight;
      break;
    }
  }
  j["model"] = std::move(m);

  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw DataError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw DataError("write failed: " + path);
}

StoredModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw DataError("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("malformed model file " + path + ": " + e.what());
  }

  try {
    if (j.at("format").get<std::string>() != "relind-model") {
      throw ParseError("not a model file: " + path);
    }
    if (j.at("version").get<int>() != 1) {
      throw ParseError("unsupported model file version " +
                       std::to_string(j.at("version").get<int>()) + " in " + path);
    }
    StoredModel stored;
    try {
      stored.kind = model_kind_from_name(j.at("kind").get<std::string>());
    } catch (const ConfigError& e) {
      throw ParseError("model file " + path + ": " + e.what());
    }
    const json& m = j.at("model");
    switch (stored.kind) {
      case ModelKind::kTranslation: {
        TranslationRelationModel model;
        model.dimension = m.at("dimension").get<int>();
        model.pair_count = m.at("pair_count").get<int>();
        model.seed = m.at("seed").get<std::uint64_t>();
        model.source_predictive = predictives_from_json(m.at("source_predictive"));
        model.target_predictive = predictives_from_json(m.at("target_predictive"));
        model.diff_predictive = predictives_from_json(m.at("diff_predictive"));
        model.cross_predictive = predictives_from_json(m.at("cross_predictive"));
        stored.model = std::move(model);
        break;
      }
      case ModelKind::kRegression: {
        RegressionRelationModel model;
        model.dimension = m.at("dimension").get<int>();
        model.pair_count = m.at("pair_count").get<int>();
        model.k = m.at("k").get<int>();
        model.source_predictive = predictives_from_json(m.at("source_predictive"));
        model.basis = basis_from_json(m.at("basis"));
        const double df = m.at("df").get<double>();
        const Eigen::MatrixXd gram_inverse = mat_from_json(m.at("gram_inverse"));
        for (const auto& cm : m.at("coordinate_models")) {
          BayesRegressionPredictive pred;
          pred.coefficients = vec_from_json(cm.at("coefficients"));
          pred.gram_inverse = gram_inverse;
          pred.df = df;
          pred.sigma0_2 = cm.at("sigma0_2").get<double>();
          model.coordinate_models.push_back(std::move(pred));
        }
        stored.model = std::move(model);
        break;
      }
      case ModelKind::kThreeCosAvg: {
        stored.model = ThreeCosAvgModel{vec_from_json(j.at("model").at("average_translation"))};
        break;
      }
      case ModelKind::kLRCos: {
        LRCosModel model;
        model.dimension = m.at("dimension").get<int>();
        model.source_predictive = predictives_from_json(m.at("source_predictive"));
        model.target_predictive = predictives_from_json(m.at("target_predictive"));
        stored.model = std::move(model);
        break;
      }
      case ModelKind::kMargin: {
        MarginClassifier model;
        model.weights = vec_from_json(m.at("weights"));
        model.bias = m.at("bias").get<double>();
        model.c = m.at("c").get<double>();
        model.positive_weight = m.at("positive_weight").get<double>();
        model.negative_weight = m.at("negative_weight").get<double>();
        stored.model = std::move(model);
        break;
      }
    }
    return stored;
  } catch (const json::exception& e) {
    throw ParseError("malformed model file " + path + ": " + e.what());
  }
}

}  // namespace relind
