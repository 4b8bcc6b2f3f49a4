#pragma once

// Test-only oracle: per-world recursive truth evaluation, written directly
// from the semantic clauses. No world sets, no memoization, no reuse of the
// extension path. Deliberately slow and obvious.

#include "stobon/errors.hpp"
#include "stobon/formula.hpp"
#include "stobon/kripke.hpp"

#include <algorithm>
#include <deque>
#include <vector>

namespace stobon::testing {

inline std::vector<AgentId> naive_resolve_group(const KripkeModel& m,
                                                const std::vector<std::string>& group) {
    std::vector<AgentId> ids;
    if (group.empty()) {
        for (std::size_t i = 0; i < m.agent_count(); ++i) ids.push_back(static_cast<AgentId>(i));
        return ids;
    }
    for (const std::string& name : group) {
        auto idx = m.agent_index(name);
        if (!idx) throw DomainError("unknown agent '" + name + "'");
        ids.push_back(*idx);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

inline std::vector<WorldId> naive_block(const KripkeModel& m, WorldId w, AgentId a) {
    const Partition& p = m.relation(a);
    std::vector<WorldId> out;
    for (WorldId v = 0; v < m.world_count(); ++v)
        if (p.block_of[v] == p.block_of[w]) out.push_back(v);
    return out;
}

inline std::vector<WorldId> naive_reachable(const KripkeModel& m, WorldId w,
                                            const std::vector<AgentId>& group) {
    std::vector<bool> seen(m.world_count(), false);
    std::deque<WorldId> frontier{w};
    seen[w] = true;
    while (!frontier.empty()) {
        WorldId v = frontier.front();
        frontier.pop_front();
        for (AgentId a : group) {
            for (WorldId u : naive_block(m, v, a)) {
                if (!seen[u]) {
                    seen[u] = true;
                    frontier.push_back(u);
                }
            }
        }
    }
    std::vector<WorldId> out;
    for (WorldId v = 0; v < m.world_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

inline KripkeModel naive_restrict(const KripkeModel& m, const std::vector<bool>& keep,
                                  std::vector<std::int32_t>& old_to_new) {
    old_to_new.assign(m.world_count(), -1);
    std::vector<WorldId> kept;
    for (WorldId w = 0; w < m.world_count(); ++w) {
        if (keep[w]) {
            old_to_new[w] = static_cast<std::int32_t>(kept.size());
            kept.push_back(w);
        }
    }
    std::vector<std::uint64_t> vals;
    std::vector<std::string> ids;
    for (WorldId w : kept) {
        vals.push_back(m.valuation(w));
        ids.push_back(m.world_id(w));
    }
    std::vector<Partition> rels;
    for (std::size_t a = 0; a < m.agent_count(); ++a) {
        const Partition& p = m.relation(static_cast<AgentId>(a));
        Partition q;
        q.block_of.resize(kept.size());
        std::vector<std::int32_t> bmap(p.n_blocks, -1);
        std::uint32_t nb = 0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::int32_t& mapped = bmap[p.block_of[kept[i]]];
            if (mapped < 0) mapped = static_cast<std::int32_t>(nb++);
            q.block_of[i] = static_cast<std::uint32_t>(mapped);
        }
        q.n_blocks = nb;
        rels.push_back(std::move(q));
    }
    return KripkeModel(m.agent_names(), m.atom_names(), std::move(vals), std::move(ids),
                       std::move(rels));
}

inline bool naive_holds(const KripkeModel& m, WorldId w, const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Atom: {
        auto idx = m.atom_index(f.name());
        if (!idx) throw DomainError("unknown atom '" + f.name() + "'");
        return m.atom_true_at(w, *idx);
    }
    case FormulaKind::True:
        return true;
    case FormulaKind::False:
        return false;
    case FormulaKind::Not:
        return !naive_holds(m, w, *f.lhs());
    case FormulaKind::And:
        return naive_holds(m, w, *f.lhs()) && naive_holds(m, w, *f.rhs());
    case FormulaKind::Or:
        return naive_holds(m, w, *f.lhs()) || naive_holds(m, w, *f.rhs());
    case FormulaKind::Implies:
        return !naive_holds(m, w, *f.lhs()) || naive_holds(m, w, *f.rhs());
    case FormulaKind::Iff:
        return naive_holds(m, w, *f.lhs()) == naive_holds(m, w, *f.rhs());
    case FormulaKind::Knows: {
        auto idx = m.agent_index(f.name());
        if (!idx) throw DomainError("unknown agent '" + f.name() + "'");
        for (WorldId v : naive_block(m, w, *idx))
            if (!naive_holds(m, v, *f.lhs())) return false;
        return true;
    }
    case FormulaKind::Everyone: {
        for (AgentId a : naive_resolve_group(m, f.group()))
            for (WorldId v : naive_block(m, w, a))
                if (!naive_holds(m, v, *f.lhs())) return false;
        return true;
    }
    case FormulaKind::Common: {
        for (WorldId v : naive_reachable(m, w, naive_resolve_group(m, f.group())))
            if (!naive_holds(m, v, *f.lhs())) return false;
        return true;
    }
    case FormulaKind::Announce: {
        if (!naive_holds(m, w, *f.lhs())) return true;
        std::vector<bool> keep(m.world_count());
        for (WorldId v = 0; v < m.world_count(); ++v) keep[v] = naive_holds(m, v, *f.lhs());
        std::vector<std::int32_t> old_to_new;
        KripkeModel inner = naive_restrict(m, keep, old_to_new);
        return naive_holds(inner, static_cast<WorldId>(old_to_new[w]), *f.rhs());
    }
    }
    throw DomainError("unhandled node in naive oracle");
}

} // namespace stobon::testing
