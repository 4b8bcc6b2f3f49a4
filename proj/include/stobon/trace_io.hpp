#pragma once

#include "stobon/village.hpp"

#include <json.hpp>

#include <string>

namespace stobon {

nlohmann::ordered_json scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json trace_to_json(const Trace& trace);
Trace trace_from_json(const nlohmann::ordered_json& j);

/// Fixed-width text table, one row per morning.
std::string trace_table(const Trace& trace);

const char* outcome_name(Outcome o);

} // namespace stobon
