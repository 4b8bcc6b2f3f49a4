#include "stobon/kripke.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace stobon {

namespace {

std::string subset_id(std::uint64_t mask) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (unsigned bit = 0; bit < 64; ++bit) {
        if ((mask >> bit) & 1u) {
            if (!first) os << ',';
            os << bit + 1;
            first = false;
        }
    }
    os << '}';
    return os.str();
}

// Plain union-find over world indices.
struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

} // namespace

Partition partition_from_blocks(std::size_t world_count,
                                const std::vector<std::vector<std::uint32_t>>& blocks) {
    Partition p;
    p.n_blocks = static_cast<std::uint32_t>(blocks.size());
    p.block_of.assign(world_count, UINT32_MAX);
    for (std::uint32_t b = 0; b < blocks.size(); ++b) {
        for (std::uint32_t w : blocks[b]) {
            if (w >= world_count)
                throw DomainError("partition block references unknown world index " + std::to_string(w));
            if (p.block_of[w] != UINT32_MAX)
                throw DomainError("overlapping blocks: world " + std::to_string(w) +
                                  " appears in more than one block");
            p.block_of[w] = b;
        }
    }
    for (std::size_t w = 0; w < world_count; ++w)
        if (p.block_of[w] == UINT32_MAX)
            throw DomainError("uncovered world: world " + std::to_string(w) + " is in no block");
    return p;
}

KripkeModel::KripkeModel(std::vector<std::string> agent_names,
                         std::vector<std::string> atom_names,
                         std::vector<std::uint64_t> valuations,
                         std::vector<std::string> world_ids,
                         std::vector<Partition> relations)
    : agent_names_(std::move(agent_names)),
      atom_names_(std::move(atom_names)),
      valuations_(std::move(valuations)),
      world_ids_(std::move(world_ids)),
      relations_(std::move(relations)) {
    if (atom_names_.size() > 64)
        throw DomainError("at most 64 atoms are supported (fixed-width valuations)");
    if (relations_.size() != agent_names_.size())
        throw DomainError("one relation required per agent");
    if (!world_ids_.empty() && world_ids_.size() != valuations_.size())
        throw DomainError("world id table does not match world count");
    for (const Partition& p : relations_)
        if (p.block_of.size() != valuations_.size())
            throw DomainError("relation does not cover the world set");
}

std::optional<AgentId> KripkeModel::agent_index(std::string_view name) const {
    for (std::size_t i = 0; i < agent_names_.size(); ++i)
        if (agent_names_[i] == name) return static_cast<AgentId>(i);
    return std::nullopt;
}

std::optional<std::uint32_t> KripkeModel::atom_index(std::string_view name) const {
    for (std::size_t i = 0; i < atom_names_.size(); ++i)
        if (atom_names_[i] == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

std::string KripkeModel::world_id(WorldId w) const {
    if (w >= world_count())
        throw DomainError("unknown world index " + std::to_string(w));
    if (!world_ids_.empty()) return world_ids_[w];
    return subset_id(valuations_[w]);
}

WorldSet KripkeModel::accessible(WorldId w, AgentId a) const {
    if (w >= world_count())
        throw DomainError("unknown world index " + std::to_string(w));
    if (a >= agent_count())
        throw DomainError("unknown agent index " + std::to_string(a));
    const Partition& p = relations_[a];
    const std::uint32_t target = p.block_of[w];
    WorldSet out(world_count());
    for (std::size_t v = 0; v < world_count(); ++v)
        if (p.block_of[v] == target) out.set(v);
    return out;
}

std::pair<std::vector<std::uint32_t>, std::uint32_t>
KripkeModel::group_components(std::span<const AgentId> group) const {
    const std::size_t m = world_count();
    UnionFind uf(m);
    std::vector<std::int64_t> rep;
    for (AgentId a : group) {
        if (a >= agent_count())
            throw DomainError("unknown agent index " + std::to_string(a));
        const Partition& p = relations_[a];
        rep.assign(p.n_blocks, -1);
        for (std::uint32_t w = 0; w < m; ++w) {
            std::int64_t& r = rep[p.block_of[w]];
            if (r < 0)
                r = w;
            else
                uf.unite(static_cast<std::uint32_t>(r), w);
        }
    }
    std::vector<std::uint32_t> comp(m, 0);
    std::uint32_t count = 0;
    std::vector<std::int64_t> label(m, -1);
    for (std::uint32_t w = 0; w < m; ++w) {
        std::uint32_t root = uf.find(w);
        if (label[root] < 0) label[root] = count++;
        comp[w] = static_cast<std::uint32_t>(label[root]);
    }
    return {std::move(comp), count};
}

WorldSet KripkeModel::reachable(WorldId w, std::span<const AgentId> group) const {
    if (w >= world_count())
        throw DomainError("unknown world index " + std::to_string(w));
    if (group.empty()) {
        WorldSet out(world_count());
        out.set(w);
        return out;
    }
    auto [comp, n_comp] = group_components(group);
    (void)n_comp;
    WorldSet out(world_count());
    const std::uint32_t target = comp[w];
    for (std::size_t v = 0; v < world_count(); ++v)
        if (comp[v] == target) out.set(v);
    return out;
}

KripkeModel KripkeModel::restricted(const WorldSet& keep, std::vector<std::int32_t>& old_to_new) const {
    if (keep.size() != world_count())
        throw DomainError("restriction set does not match the world count");
    const std::size_t m = world_count();
    old_to_new.assign(m, -1);
    std::vector<std::uint32_t> kept;
    kept.reserve(static_cast<std::size_t>(keep.count()));
    keep.for_each([&](std::uint32_t w) {
        old_to_new[w] = static_cast<std::int32_t>(kept.size());
        kept.push_back(w);
    });

    std::vector<std::uint64_t> vals(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) vals[i] = valuations_[kept[i]];

    std::vector<std::string> ids;
    if (!world_ids_.empty()) {
        ids.resize(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) ids[i] = world_ids_[kept[i]];
    }

    std::vector<Partition> rels;
    rels.reserve(relations_.size());
    std::vector<std::int64_t> bmap;
    for (const Partition& p : relations_) {
        Partition q;
        q.block_of.resize(kept.size());
        bmap.assign(p.n_blocks, -1);
        std::uint32_t nb = 0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::int64_t& mapped = bmap[p.block_of[kept[i]]];
            if (mapped < 0) mapped = nb++;
            q.block_of[i] = static_cast<std::uint32_t>(mapped);
        }
        q.n_blocks = nb;
        rels.push_back(std::move(q));
    }

    return KripkeModel(agent_names_, atom_names_, std::move(vals), std::move(ids), std::move(rels));
}

KripkeModel KripkeModel::restricted(const WorldSet& keep) const {
    std::vector<std::int32_t> unused;
    return restricted(keep, unused);
}

KripkeModel KripkeModel::restricted(std::span<const WorldId> keep) const {
    WorldSet s(world_count());
    for (WorldId w : keep) {
        if (w >= world_count())
            throw DomainError("restriction references unknown world index " + std::to_string(w));
        s.set(w);
    }
    return restricted(s);
}

std::vector<std::string> KripkeModel::check_invariants() const {
    std::vector<std::string> bad;
    const std::uint64_t atom_mask =
        atom_count() >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << atom_count()) - 1);
    for (std::size_t w = 0; w < world_count(); ++w)
        if ((valuations_[w] & ~atom_mask) != 0)
            bad.push_back("world " + std::to_string(w) + " references an undeclared atom bit");
    for (std::size_t a = 0; a < relations_.size(); ++a) {
        const Partition& p = relations_[a];
        if (p.block_of.size() != world_count()) {
            bad.push_back("agent " + std::to_string(a) + ": relation size mismatch");
            continue;
        }
        std::vector<std::uint32_t> sizes(p.n_blocks, 0);
        for (std::uint32_t b : p.block_of) {
            if (b >= p.n_blocks) {
                bad.push_back("agent " + std::to_string(a) + ": block index out of range");
                break;
            }
            ++sizes[b];
        }
        for (std::uint32_t b = 0; b < p.n_blocks; ++b)
            if (sizes.size() == p.n_blocks && sizes[b] == 0)
                bad.push_back("agent " + std::to_string(a) + ": empty block " + std::to_string(b));
    }
    return bad;
}

ValidationReport validate(const ModelSpec& spec) {
    ValidationReport report;
    auto flag = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    std::unordered_set<std::string> agent_set;
    for (const std::string& a : spec.agents)
        if (!agent_set.insert(a).second) flag("duplicate agent name '" + a + "'");
    std::unordered_set<std::string> atom_set;
    for (const std::string& a : spec.atoms)
        if (!atom_set.insert(a).second) flag("duplicate atom name '" + a + "'");
    if (spec.atoms.size() > 64) flag("at most 64 atoms are supported");

    std::unordered_map<std::string, std::uint32_t> world_index;
    for (std::uint32_t i = 0; i < spec.worlds.size(); ++i) {
        const WorldSpec& w = spec.worlds[i];
        if (!world_index.emplace(w.id, i).second) flag("duplicate world id '" + w.id + "'");
        for (const std::string& atom : w.atoms)
            if (atom_set.find(atom) == atom_set.end())
                flag("dangling atom: world '" + w.id + "' references undeclared atom '" + atom + "'");
    }
    if (spec.worlds.empty()) flag("model declares no worlds");

    std::unordered_set<std::string> relation_agents;
    for (const auto& [agent, blocks] : spec.relations) {
        if (agent_set.find(agent) == agent_set.end()) {
            flag("relation given for undeclared agent '" + agent + "'");
            continue;
        }
        if (!relation_agents.insert(agent).second) {
            flag("duplicate relation for agent '" + agent + "'");
            continue;
        }
        std::unordered_set<std::string> seen;
        for (const auto& block : blocks) {
            for (const std::string& wid : block) {
                if (world_index.find(wid) == world_index.end()) {
                    flag("agent '" + agent + "': block references unknown world '" + wid + "'");
                    continue;
                }
                if (!seen.insert(wid).second)
                    flag("overlapping blocks: agent '" + agent + "' lists world '" + wid +
                         "' in more than one block");
            }
        }
        for (const WorldSpec& w : spec.worlds)
            if (world_index.count(w.id) != 0 && seen.find(w.id) == seen.end())
                flag("uncovered world: agent '" + agent + "' has no block containing world '" +
                     w.id + "'");
    }
    for (const std::string& a : spec.agents)
        if (relation_agents.find(a) == relation_agents.end())
            flag("no relation given for agent '" + a + "'");

    if (world_index.find(spec.actual) == world_index.end())
        flag("actual world '" + spec.actual + "' is not a declared world");

    return report;
}

PointedModel build_model(const ModelSpec& spec) {
    ValidationReport report = validate(spec);
    if (!report.ok()) {
        std::string msg = "invalid model:";
        for (const std::string& v : report.violations) msg += "\n  - " + v;
        throw DomainError(msg);
    }

    std::unordered_map<std::string, std::uint32_t> world_index;
    for (std::uint32_t i = 0; i < spec.worlds.size(); ++i) world_index.emplace(spec.worlds[i].id, i);
    std::unordered_map<std::string, std::uint32_t> atom_index;
    for (std::uint32_t i = 0; i < spec.atoms.size(); ++i) atom_index.emplace(spec.atoms[i], i);

    std::vector<std::uint64_t> vals(spec.worlds.size(), 0);
    std::vector<std::string> ids(spec.worlds.size());
    for (std::uint32_t i = 0; i < spec.worlds.size(); ++i) {
        ids[i] = spec.worlds[i].id;
        for (const std::string& atom : spec.worlds[i].atoms)
            vals[i] |= std::uint64_t{1} << atom_index.at(atom);
    }

    std::unordered_map<std::string, const std::vector<std::vector<std::string>>*> rel_by_agent;
    for (const auto& [agent, blocks] : spec.relations) rel_by_agent.emplace(agent, &blocks);

    std::vector<Partition> rels;
    rels.reserve(spec.agents.size());
    for (const std::string& agent : spec.agents) {
        const auto& blocks = *rel_by_agent.at(agent);
        std::vector<std::vector<std::uint32_t>> idx_blocks;
        idx_blocks.reserve(blocks.size());
        for (const auto& block : blocks) {
            std::vector<std::uint32_t> b;
            b.reserve(block.size());
            for (const std::string& wid : block) b.push_back(world_index.at(wid));
            idx_blocks.push_back(std::move(b));
        }
        rels.push_back(partition_from_blocks(spec.worlds.size(), idx_blocks));
    }

    KripkeModel model(spec.agents, spec.atoms, std::move(vals), std::move(ids), std::move(rels));
    return PointedModel{std::move(model), world_index.at(spec.actual)};
}

} // namespace stobon
