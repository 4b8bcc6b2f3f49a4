#pragma once

#include "stobon/errors.hpp"
#include "stobon/world_set.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stobon {

using WorldId = std::uint32_t;
using AgentId = std::uint32_t;

/// An agent's indistinguishability relation, stored as a partition of the
/// world set: block_of[w] is the block index of world w. Every world has a
/// block, and blocks are disjoint by construction, which makes the S5
/// properties (reflexive, symmetric, transitive) structural.
struct Partition {
    std::uint32_t n_blocks = 0;
    std::vector<std::uint32_t> block_of;

    bool operator==(const Partition&) const = default;
};

/// Builds a partition from explicit member-list blocks, rejecting overlaps,
/// uncovered worlds and out-of-range ids.
Partition partition_from_blocks(std::size_t world_count,
                                const std::vector<std::vector<std::uint32_t>>& blocks);

/// A finite S5 possible-worlds model: per-world atomic valuations (one bit
/// per atom, at most 64 atoms) plus one partition per agent. Immutable after
/// construction; every operation returning a model returns a new value.
class KripkeModel {
public:
    KripkeModel() = default;

    /// world_ids may be empty, in which case ids are synthesized from the
    /// valuation as a subset string ("{}", "{1,3}", ...), the canonical
    /// identity for puzzle models, whose world bitmask is its valuation.
    KripkeModel(std::vector<std::string> agent_names,
                std::vector<std::string> atom_names,
                std::vector<std::uint64_t> valuations,
                std::vector<std::string> world_ids,
                std::vector<Partition> relations);

    std::size_t world_count() const { return valuations_.size(); }
    std::size_t agent_count() const { return agent_names_.size(); }
    std::size_t atom_count() const { return atom_names_.size(); }

    /// A model with zero worlds: the distinguished result of an update that
    /// contradicted every possibility.
    bool collapsed() const { return valuations_.empty(); }

    const std::vector<std::string>& agent_names() const { return agent_names_; }
    const std::vector<std::string>& atom_names() const { return atom_names_; }

    std::optional<AgentId> agent_index(std::string_view name) const;
    std::optional<std::uint32_t> atom_index(std::string_view name) const;

    std::uint64_t valuation(WorldId w) const { return valuations_[w]; }
    bool atom_true_at(WorldId w, std::uint32_t atom) const {
        return (valuations_[w] >> atom) & 1u;
    }

    /// Display id of a world (stored on file-loaded models, synthesized for
    /// puzzle models).
    std::string world_id(WorldId w) const;

    const Partition& relation(AgentId a) const { return relations_[a]; }

    /// All worlds agent a cannot distinguish from w (a's block, always
    /// containing w). Throws DomainError on unknown world or agent.
    WorldSet accessible(WorldId w, AgentId a) const;

    /// Transitive closure of the union of the group's relations from w.
    /// An empty group yields {w}.
    WorldSet reachable(WorldId w, std::span<const AgentId> group) const;

    /// Component labelling of the union of the group's relations:
    /// first = component index per world, second = component count.
    /// With an empty group every world is its own component.
    std::pair<std::vector<std::uint32_t>, std::uint32_t>
    group_components(std::span<const AgentId> group) const;

    /// The model over exactly the kept worlds; blocks are intersected with
    /// the kept set and empty blocks dropped. May produce a collapsed model.
    KripkeModel restricted(const WorldSet& keep) const;

    /// As above, also reporting the index mapping: old_to_new[w] is the new
    /// index of old world w, or -1 if dropped.
    KripkeModel restricted(const WorldSet& keep, std::vector<std::int32_t>& old_to_new) const;

    /// Restriction by explicit world ids; unknown ids are a DomainError.
    KripkeModel restricted(std::span<const WorldId> keep) const;

    /// Structural re-validation for property tests. Empty means sound.
    std::vector<std::string> check_invariants() const;

    bool operator==(const KripkeModel&) const = default;

private:
    std::vector<std::string> agent_names_;
    std::vector<std::string> atom_names_;
    std::vector<std::uint64_t> valuations_;
    std::vector<std::string> world_ids_; // empty: synthesize from valuation
    std::vector<Partition> relations_;
};

/// A model plus the world taken to be actual.
struct PointedModel {
    KripkeModel model;
    WorldId actual = 0;
};

/// Raw, pre-validation model description mirroring the JSON file format.
struct WorldSpec {
    std::string id;
    std::vector<std::string> atoms;
};

struct ModelSpec {
    std::vector<std::string> agents;
    std::vector<std::string> atoms;
    std::vector<WorldSpec> worlds;
    /// agent name -> partition blocks, each block a list of world ids
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> relations;
    std::string actual;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks block disjointness and coverage per agent, dangling atom and world
/// references, duplicate names, and the actual-world reference. Runs on
/// every model load.
ValidationReport validate(const ModelSpec& spec);

/// Validates and constructs; throws DomainError listing every violation.
PointedModel build_model(const ModelSpec& spec);

} // namespace stobon
