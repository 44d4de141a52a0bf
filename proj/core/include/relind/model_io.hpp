#pragma once

#include <string>
#include <variant>

#include "relind/baselines.hpp"
#include "relind/eval.hpp"
#include "relind/relation_models.hpp"

namespace relind {

// A fitted model of any kind, tagged for serialization.
struct StoredModel {
  ModelKind kind = ModelKind::kTranslation;
  std::variant<TranslationRelationModel, RegressionRelationModel, ThreeCosAvgModel,
               LRCosModel, MarginClassifier>
      model;
};

// JSON with a format version tag. Doubles are written in shortest
// round-trip decimal form, so load(save(x)) reproduces x bit for bit.
void save_model(const StoredModel& model, const std::string& path);

// Unknown version or kind raises ParseError.
StoredModel load_model(const std::string& path);

}  // namespace relind
