#pragma once

/**
 * @file model_io.hpp
 * @brief JSON model documents.
 *
 * Shorthand form (every entry shares one distribution):
 *
 *     {"n": 2, "entries": "all", "dist": "exponential", "mean": 1.0}
 *
 * Explicit form: "entries" is an n x n array of objects, each with a
 * "dist" key and its parameters:
 *
 *     exponential  {"mean": m}
 *     uniform      {"lo": a, "hi": b}
 *     discrete     {"atoms": [{"value": v, "prob": p}, ...]}   ([v, p] pairs also accepted)
 *     constant     {"value": c}
 */

#include <string>

#include <json.hpp>

#include "maxplus/random_models.hpp"

namespace maxplus {

/// Throws ModelError on schema or validation failure.
[[nodiscard]] MatrixModel model_from_json(const nlohmann::json& doc);
[[nodiscard]] MatrixModel load_model(const std::string& path);

/// Always the explicit per-entry form.
[[nodiscard]] nlohmann::json model_to_json(const MatrixModel& model);

[[nodiscard]] DistributionSpec dist_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json dist_to_json(const DistributionSpec& dist);

}  // namespace maxplus
