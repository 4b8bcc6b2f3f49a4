#include "stobon/model_json.hpp"

#include "stobon/errors.hpp"

#include <fstream>

namespace stobon {

using nlohmann::ordered_json;

namespace {

const ordered_json& field(const ordered_json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw DomainError(std::string("model document: missing field '") + name + "'");
    return *it;
}

std::vector<std::string> string_array(const ordered_json& j, const std::string& where) {
    if (!j.is_array()) throw DomainError("model document: " + where + " must be an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_string())
            throw DomainError("model document: " + where + " must contain only strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

} // namespace

ModelSpec model_spec_from_json(const ordered_json& j) {
    if (!j.is_object()) throw DomainError("model document: top level must be an object");
    ModelSpec spec;
    spec.agents = string_array(field(j, "agents"), "'agents'");
    spec.atoms = string_array(field(j, "atoms"), "'atoms'");

    const ordered_json& worlds = field(j, "worlds");
    if (!worlds.is_array()) throw DomainError("model document: 'worlds' must be an array");
    for (const auto& w : worlds) {
        if (!w.is_object() || !w.contains("id") || !w["id"].is_string())
            throw DomainError("model document: each world needs a string 'id'");
        WorldSpec ws;
        ws.id = w["id"].get<std::string>();
        if (w.contains("atoms")) ws.atoms = string_array(w["atoms"], "world '" + ws.id + "' atoms");
        spec.worlds.push_back(std::move(ws));
    }

    const ordered_json& rels = field(j, "relations");
    if (!rels.is_object()) throw DomainError("model document: 'relations' must be an object");
    for (const auto& [agent, blocks] : rels.items()) {
        if (!blocks.is_array())
            throw DomainError("model document: relations for '" + agent +
                              "' must be an array of blocks");
        std::vector<std::vector<std::string>> block_list;
        for (const auto& b : blocks)
            block_list.push_back(string_array(b, "a block of agent '" + agent + "'"));
        spec.relations.emplace_back(agent, std::move(block_list));
    }

    const ordered_json& actual = field(j, "actual");
    if (!actual.is_string()) throw DomainError("model document: 'actual' must be a world id string");
    spec.actual = actual.get<std::string>();
    return spec;
}

ordered_json model_spec_to_json(const ModelSpec& spec) {
    ordered_json j;
    j["agents"] = spec.agents;
    j["atoms"] = spec.atoms;
    j["worlds"] = ordered_json::array();
    for (const WorldSpec& w : spec.worlds)
        j["worlds"].push_back(ordered_json{{"id", w.id}, {"atoms", w.atoms}});
    ordered_json rels = ordered_json::object();
    for (const auto& [agent, blocks] : spec.relations) rels[agent] = blocks;
    j["relations"] = std::move(rels);
    j["actual"] = spec.actual;
    return j;
}

PointedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open model file '" + path + "'");
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return build_model(model_spec_from_json(j));
}

ordered_json model_schema_json() {
    return ordered_json{
        {"$schema", "https://json-schema.org/draft/2020-12/schema"},
        {"title", "Kripke model"},
        {"description",
         "A finite S5 possible-worlds model: per-agent partitions of the world set "
         "into indistinguishability blocks, an atomic valuation per world, and the "
         "actual world. The validator checks block disjointness/coverage and atom "
         "references on load."},
        {"type", "object"},
        {"required", {"agents", "atoms", "worlds", "relations", "actual"}},
        {"properties",
         {{"agents", {{"type", "array"}, {"items", {{"type", "string"}}}}},
          {"atoms",
           {{"type", "array"},
            {"items", {{"type", "string"}}},
            {"maxItems", 64},
            {"description", "At most 64 atoms (fixed-width valuations)."}}},
          {"worlds",
           {{"type", "array"},
            {"minItems", 1},
            {"items",
             {{"type", "object"},
              {"required", {"id"}},
              {"properties",
               {{"id", {{"type", "string"}}},
                {"atoms",
                 {{"type", "array"},
                  {"items", {{"type", "string"}}},
                  {"description", "Atoms true at this world."}}}}}}}}},
          {"relations",
           {{"type", "object"},
            {"description",
             "Per agent name, a partition of the worlds: an array of blocks, each "
             "block an array of world ids. Every world must appear in exactly one "
             "block per agent."},
            {"additionalProperties",
             {{"type", "array"},
              {"items", {{"type", "array"}, {"items", {{"type", "string"}}}}}}}}},
          {"actual", {{"type", "string"}, {"description", "Id of the actual world."}}}}},
    };
}

} // namespace stobon
