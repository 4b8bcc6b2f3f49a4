#include "stobon/checker.hpp"

#include "stobon/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace stobon {

namespace {

class Evaluator {
public:
    explicit Evaluator(const KripkeModel& model) : m_(model) {}

    const WorldSet& eval(const Formula& f) {
        auto it = memo_.find(&f);
        if (it != memo_.end()) return it->second;
        WorldSet result = compute(f);
        return memo_.emplace(&f, std::move(result)).first->second;
    }

private:
    AgentId resolve_agent(const std::string& name) const {
        if (auto idx = m_.agent_index(name)) return *idx;
        throw DomainError("unknown agent '" + name + "'");
    }

    std::vector<AgentId> resolve_group(const std::vector<std::string>& group) const {
        std::vector<AgentId> ids;
        if (group.empty()) {
            ids.resize(m_.agent_count());
            for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<AgentId>(i);
            return ids;
        }
        ids.reserve(group.size());
        for (const std::string& name : group) ids.push_back(resolve_agent(name));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    // Worlds whose whole block (under `part`) lies inside sat.
    WorldSet blocks_inside(const Partition& part, const WorldSet& sat) const {
        std::vector<std::uint32_t> size(part.n_blocks, 0);
        std::vector<std::uint32_t> hit(part.n_blocks, 0);
        for (std::uint32_t w = 0; w < m_.world_count(); ++w) ++size[part.block_of[w]];
        sat.for_each([&](std::uint32_t w) { ++hit[part.block_of[w]]; });
        WorldSet out(m_.world_count());
        for (std::uint32_t w = 0; w < m_.world_count(); ++w) {
            std::uint32_t b = part.block_of[w];
            if (hit[b] == size[b]) out.set(w);
        }
        return out;
    }

    WorldSet knows_ext(AgentId a, const WorldSet& sat) const {
        return blocks_inside(m_.relation(a), sat);
    }

    WorldSet compute(const Formula& f) {
        const std::size_t m = m_.world_count();
        switch (f.kind()) {
        case FormulaKind::Atom: {
            auto idx = m_.atom_index(f.name());
            if (!idx) throw DomainError("unknown atom '" + f.name() + "'");
            WorldSet out(m);
            for (std::uint32_t w = 0; w < m; ++w)
                if (m_.atom_true_at(w, *idx)) out.set(w);
            return out;
        }
        case FormulaKind::True:
            return WorldSet::all_of(m);
        case FormulaKind::False:
            return WorldSet::none_of(m);
        case FormulaKind::Not:
            return ~eval(*f.lhs());
        case FormulaKind::And:
            return eval(*f.lhs()) & eval(*f.rhs());
        case FormulaKind::Or:
            return eval(*f.lhs()) | eval(*f.rhs());
        case FormulaKind::Implies:
            return ~eval(*f.lhs()) | eval(*f.rhs());
        case FormulaKind::Iff:
            return ~(eval(*f.lhs()) ^ eval(*f.rhs()));
        case FormulaKind::Knows: {
            const WorldSet& sat = eval(*f.lhs());
            return knows_ext(resolve_agent(f.name()), sat);
        }
        case FormulaKind::Everyone: {
            const WorldSet& sat = eval(*f.lhs());
            WorldSet out = WorldSet::all_of(m);
            for (AgentId a : resolve_group(f.group())) out &= knows_ext(a, sat);
            return out;
        }
        case FormulaKind::Common: {
            const WorldSet& sat = eval(*f.lhs());
            std::vector<AgentId> group = resolve_group(f.group());
            auto [comp, n_comp] = m_.group_components(group);
            Partition as_partition{n_comp, std::move(comp)};
            return blocks_inside(as_partition, sat);
        }
        case FormulaKind::Announce: {
            const WorldSet said = eval(*f.lhs());
            std::vector<std::int32_t> old_to_new;
            KripkeModel inner = m_.restricted(said, old_to_new);
            Evaluator sub(inner);
            const WorldSet& inner_sat = sub.eval(*f.rhs());
            // False-premise worlds satisfy the announcement vacuously.
            WorldSet out = ~said;
            said.for_each([&](std::uint32_t w) {
                if (inner_sat.test(static_cast<std::uint32_t>(old_to_new[w]))) out.set(w);
            });
            return out;
        }
        }
        throw DomainError("unhandled formula node");
    }

    const KripkeModel& m_;
    std::unordered_map<const Formula*, WorldSet> memo_;
};

} // namespace

WorldSet extension(const KripkeModel& model, const Formula& f) {
    Evaluator ev(model);
    return ev.eval(f);
}

bool holds(const PointedModel& pm, const Formula& f) {
    if (pm.model.collapsed())
        throw EvalError("cannot evaluate a formula on a collapsed model: no worlds");
    if (pm.actual >= pm.model.world_count())
        throw DomainError("actual world out of range");
    return extension(pm.model, f).test(pm.actual);
}

Probability subjective_probability(const PointedModel& pm, AgentId agent, const Formula& f) {
    if (pm.model.collapsed())
        throw EvalError("cannot take probabilities on a collapsed model: no worlds");
    WorldSet acc = pm.model.accessible(pm.actual, agent);
    WorldSet sat = extension(pm.model, f);
    const std::uint64_t den = acc.count(); // >= 1 by reflexivity
    const std::uint64_t num = acc.count_and(sat);
    return make_probability(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Probability subjective_probability(const PointedModel& pm, std::string_view agent, const Formula& f) {
    auto idx = pm.model.agent_index(agent);
    if (!idx) throw DomainError("unknown agent '" + std::string(agent) + "'");
    return subjective_probability(pm, *idx, f);
}

} // namespace stobon
