#pragma once

#include "stobon/kripke.hpp"

#include <json.hpp>

#include <string>

namespace stobon {

/// Converts the JSON model document into the raw spec; shape errors (missing
/// fields, wrong types) throw DomainError. Semantic validation happens in
/// validate()/build_model().
ModelSpec model_spec_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json model_spec_to_json(const ModelSpec& spec);

/// Parses, validates, and builds the pointed model from a file on disk.
PointedModel load_model_file(const std::string& path);

/// JSON Schema describing the model file format.
nlohmann::ordered_json model_schema_json();

} // namespace stobon
