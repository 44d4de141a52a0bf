#pragma once

// Umbrella header.

#include "relind/baselines.hpp"
#include "relind/bayes.hpp"
#include "relind/dataset.hpp"
#include "relind/diagnostics.hpp"
#include "relind/embedding.hpp"
#include "relind/errors.hpp"
#include "relind/eval.hpp"
#include "relind/metrics.hpp"
#include "relind/model_io.hpp"
#include "relind/relation_models.hpp"
#include "relind/rng.hpp"
