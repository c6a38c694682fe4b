#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levy/levy_model.hpp"

namespace levy {

/// Parse a model document
/// { "sigma2": number, "drift": number, "label"?: string,
///   "measure": { "family": string, ...params } }.
/// Throws ValidationError naming the offending field.
LevyModel parse_model(const std::string& json_text);

/// Serialize back to the same schema.
std::string model_to_json(const LevyModel& model);

/// Built-in fixtures: brownian, brownian-jumps, drift, stable-<alpha>,
/// log-tempered-<beta>-<kappa>, example15, cauchy-tab, i2-tab,
/// lambda-inf-tab, hstar-a, hstar-b.
std::optional<LevyModel> builtin_model(const std::string& name);
std::vector<std::string> builtin_model_names();

/// Fixture name or path to a JSON document.
LevyModel load_model(const std::string& path_or_name);

} // namespace levy
