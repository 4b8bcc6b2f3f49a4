#include "stobon/village.hpp"

#include "stobon/checker.hpp"
#include "stobon/errors.hpp"

#include <algorithm>
#include <sstream>

namespace stobon {

namespace {

std::vector<std::uint32_t> normalized_indices(std::vector<std::uint32_t> xs, std::uint32_t n_men,
                                              const char* what) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::uint32_t x : xs)
        if (x < 1 || x > n_men)
            throw DomainError(std::string(what) + " index " + std::to_string(x) +
                              " outside 1.." + std::to_string(n_men));
    return xs;
}

std::string join_indices(const std::vector<std::uint32_t>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) os << ',';
        os << xs[i];
    }
    return os.str();
}

} // namespace

ScenarioSpec ScenarioSpec::make(std::uint32_t n_men, std::vector<std::uint32_t> unfaithful,
                                std::vector<std::uint32_t> deviants, std::uint32_t max_mornings) {
    if (n_men < 1) throw DomainError("a village needs at least one man");
    ScenarioSpec s;
    s.n_men = n_men;
    s.unfaithful = normalized_indices(std::move(unfaithful), n_men, "unfaithful man");
    s.deviants = normalized_indices(std::move(deviants), n_men, "deviant wife");
    s.max_mornings = max_mornings == 0 ? n_men + 2 : max_mornings;
    return s;
}

PointedModel build_village(std::uint32_t n_men, const std::vector<std::uint32_t>& unfaithful,
                           std::uint64_t max_worlds) {
    if (n_men < 1) throw DomainError("a village needs at least one man");
    if (n_men > 63 || (std::uint64_t{1} << n_men) > max_worlds)
        throw DomainError("explicit model for " + std::to_string(n_men) + " men needs 2^" +
                          std::to_string(n_men) + " worlds, over the " +
                          std::to_string(max_worlds) +
                          "-world guard; use the fast engine (--engine fast) or raise "
                          "STOBON_MAX_WORLDS");
    const std::uint64_t n_worlds = std::uint64_t{1} << n_men;

    std::uint64_t actual_mask = 0;
    for (std::uint32_t man : normalized_indices(unfaithful, n_men, "unfaithful man"))
        actual_mask |= std::uint64_t{1} << (man - 1);

    std::vector<std::string> agents(n_men), atoms(n_men);
    for (std::uint32_t i = 0; i < n_men; ++i) {
        agents[i] = "w" + std::to_string(i + 1);
        atoms[i] = "u" + std::to_string(i + 1);
    }

    // World index == its subset mask == its valuation.
    std::vector<std::uint64_t> vals(n_worlds);
    for (std::uint64_t w = 0; w < n_worlds; ++w) vals[w] = w;

    // Wife i's block pairs w with w ^ (1 << i): drop bit i, keep the rest.
    std::vector<Partition> rels(n_men);
    for (std::uint32_t i = 0; i < n_men; ++i) {
        Partition& p = rels[i];
        p.n_blocks = static_cast<std::uint32_t>(n_worlds >> 1);
        p.block_of.resize(n_worlds);
        const std::uint64_t low = (std::uint64_t{1} << i) - 1;
        for (std::uint64_t w = 0; w < n_worlds; ++w)
            p.block_of[w] = static_cast<std::uint32_t>(((w >> (i + 1)) << i) | (w & low));
    }

    KripkeModel model(std::move(agents), std::move(atoms), std::move(vals), {}, std::move(rels));
    return PointedModel{std::move(model), static_cast<WorldId>(actual_mask)};
}

FormulaPtr at_least_one(std::uint32_t n_men) {
    if (n_men < 1) throw DomainError("at_least_one needs n >= 1");
    FormulaPtr f = Formula::Atom("u1");
    for (std::uint32_t i = 2; i <= n_men; ++i)
        f = Formula::Or(std::move(f), Formula::Atom("u" + std::to_string(i)));
    return f;
}

ProtocolState initial_state(PointedModel pm) {
    ProtocolState st;
    st.pm = std::move(pm);
    return st;
}

ProtocolState announce(ProtocolState state, const FormulaPtr& f) {
    if (state.collapsed) throw EvalError("cannot announce on a collapsed state");
    if (!holds(state.pm, *f))
        throw TruthfulnessViolation("announcement '" + render(*f) +
                                    "' is false at the actual world");
    WorldSet keep = extension(state.pm.model, *f);
    std::vector<std::int32_t> old_to_new;
    KripkeModel next = state.pm.model.restricted(keep, old_to_new);
    state.pm.actual = static_cast<WorldId>(old_to_new[state.pm.actual]);
    state.pm.model = std::move(next);
    state.history.push_back(PublicEvent{PublicEvent::Kind::Announcement, render(*f), {}});
    return state;
}

std::pair<ProtocolState, DayEvent> step_morning(ProtocolState state,
                                                const std::vector<std::uint32_t>& deviants) {
    if (state.collapsed) throw EvalError("cannot step a collapsed protocol state");
    const KripkeModel& m = state.pm.model;
    const std::size_t n_agents = m.agent_count();
    if (n_agents != m.atom_count())
        throw DomainError("step_morning expects a village model (one atom per wife)");
    std::vector<std::uint32_t> sorted_deviants(deviants);
    std::sort(sorted_deviants.begin(), sorted_deviants.end());
    for (std::uint32_t d : sorted_deviants)
        if (d < 1 || d > n_agents)
            throw DomainError("deviant index " + std::to_string(d) + " out of range");

    // Knowledge extents K_i(u_i), one per wife.
    std::vector<WorldSet> knows(n_agents);
    for (std::uint32_t i = 0; i < n_agents; ++i) {
        FormulaPtr f = Formula::Knows(m.agent_names()[i], Formula::Atom(m.atom_names()[i]));
        knows[i] = extension(m, *f);
    }

    auto is_deviant = [&](std::uint32_t wife) {
        return std::binary_search(sorted_deviants.begin(), sorted_deviants.end(), wife);
    };

    // Observed kills: wives who know, minus the secret rebels.
    std::vector<std::uint32_t> killed;
    std::vector<bool> in_observed(n_agents, false);
    for (std::uint32_t i = 0; i < n_agents; ++i) {
        if (knows[i].test(state.pm.actual) && !is_deviant(i + 1)) {
            killed.push_back(i + 1);
            in_observed[i] = true;
        }
    }

    // Keep the worlds that predicted exactly the observed kill set. The
    // prediction is what the public expects: every wife who knows kills
    // (deviance is not in anyone's model).
    WorldSet keep = WorldSet::all_of(m.world_count());
    for (std::uint32_t i = 0; i < n_agents; ++i) {
        if (in_observed[i])
            keep &= knows[i];
        else
            keep.subtract(knows[i]);
    }

    DayEvent event;
    event.morning = state.morning + 1;
    event.killed = killed;
    event.model_size_after = keep.count();

    state.morning = event.morning;
    if (!keep.test(state.pm.actual)) {
        // The public update contradicts the actual world: the pointed model
        // is gone (zero worlds in the deviant-free-actual case, or a public
        // model that excludes reality).
        state.collapsed = true;
        state.pm.model = m.restricted(keep);
        state.pm.actual = 0;
    } else {
        std::vector<std::int32_t> old_to_new;
        KripkeModel next = m.restricted(keep, old_to_new);
        state.pm.actual = static_cast<WorldId>(old_to_new[state.pm.actual]);
        state.pm.model = std::move(next);
    }
    state.history.push_back(PublicEvent{PublicEvent::Kind::Morning, {}, event});
    return {std::move(state), std::move(event)};
}

Trace run_protocol(const ScenarioSpec& spec, std::uint64_t max_worlds) {
    Trace trace;
    trace.spec = spec;
    ProtocolState state = initial_state(build_village(spec.n_men, spec.unfaithful, max_worlds));
    state = announce(std::move(state), at_least_one(spec.n_men));

    trace.outcome = Outcome::MorningLimitReached;
    for (std::uint32_t morning = 1; morning <= spec.max_mornings; ++morning) {
        auto [next, event] = step_morning(std::move(state), spec.deviants);
        state = std::move(next);
        trace.events.push_back(event);
        if (state.collapsed) {
            trace.outcome = Outcome::Collapsed;
            trace.collapsed_at = event.morning;
            break;
        }
        if (!event.killed.empty()) {
            trace.outcome = Outcome::Completed;
            break;
        }
    }
    return trace;
}

std::optional<std::uint64_t> worlds_with_more_than(std::uint32_t n, std::uint32_t m) {
    if (n > 64) return std::nullopt;
    if (m >= n) return std::uint64_t{0};
    // 2^n - sum_{j<=m} C(n,j), in 128 bits to survive n = 64.
    unsigned __int128 total = static_cast<unsigned __int128>(1) << n;
    unsigned __int128 below = 0;
    unsigned __int128 binom = 1; // C(n, 0)
    for (std::uint32_t j = 0; j <= m; ++j) {
        if (j > 0) binom = binom * (n - j + 1) / j;
        below += binom;
    }
    return static_cast<std::uint64_t>(total - below);
}

Trace run_protocol_fast(const ScenarioSpec& spec) {
    if (!spec.deviants.empty())
        throw UnsupportedScenario("the counting engine models only compliant wives; run the "
                                  "exact engine for deviant scenarios");
    const std::uint32_t k = static_cast<std::uint32_t>(spec.unfaithful.size());
    if (k == 0)
        throw TruthfulnessViolation(
            "announcement 'at least one unfaithful man' is false at the actual world");

    Trace trace;
    trace.spec = spec;
    trace.outcome = Outcome::MorningLimitReached;

    FastState fs;
    fs.n = spec.n_men;
    fs.k = k;
    for (std::uint32_t morning = 1; morning <= spec.max_mornings; ++morning) {
        DayEvent event;
        event.morning = morning;
        if (fs.kills_this_morning()) {
            event.killed = spec.unfaithful;
            // Exactly one world predicts this kill set: the actual one.
            event.model_size_after = std::uint64_t{1};
            trace.events.push_back(std::move(event));
            trace.outcome = Outcome::Completed;
            break;
        }
        fs.quiet_morning();
        event.model_size_after = worlds_with_more_than(fs.n, morning);
        trace.events.push_back(std::move(event));
    }
    return trace;
}

AssertionReport check_S(std::uint32_t n, std::uint32_t k) {
    if (k < 1 || k > n || n > 24)
        throw DomainError("check_S requires 1 <= k <= n <= 24");
    std::vector<std::uint32_t> unfaithful(k);
    for (std::uint32_t i = 0; i < k; ++i) unfaithful[i] = i + 1;
    ScenarioSpec spec = ScenarioSpec::make(n, unfaithful);

    std::ostringstream details;
    bool ok = true;
    auto complain = [&](const std::string& msg) {
        ok = false;
        details << "  violation: " << msg << '\n';
    };

    ProtocolState state = initial_state(build_village(n, unfaithful));

    // "No faithful wife ever knows" is checked at every public state,
    // pre-announcement included; the betrayed wives' knowledge must first
    // all be present after the update that follows morning k-1 (the
    // post-announcement state when k = 1).
    auto knows_own = [&](const ProtocolState& st, std::uint32_t wife) {
        FormulaPtr f = Formula::Knows("w" + std::to_string(wife),
                                      Formula::Atom("u" + std::to_string(wife)));
        return holds(st.pm, *f);
    };
    auto check_faithful = [&](const ProtocolState& st, const std::string& when) {
        for (std::uint32_t wife = k + 1; wife <= n; ++wife)
            if (knows_own(st, wife))
                complain("faithful wife " + std::to_string(wife) + " claims knowledge " + when);
    };

    check_faithful(state, "pre-announcement");
    state = announce(std::move(state), at_least_one(n));
    check_faithful(state, "post-announcement");
    std::uint32_t mornings_run = 0;
    for (std::uint32_t morning = 1; morning <= k && ok; ++morning) {
        if (morning == k) {
            // State after the update following morning k-1: every betrayed
            // wife must have rejected the conservative hypothesis.
            for (std::uint32_t wife = 1; wife <= k; ++wife)
                if (!knows_own(state, wife))
                    complain("betrayed wife " + std::to_string(wife) +
                             " does not know after " + std::to_string(k - 1) + " mornings");
        }
        auto [next, event] = step_morning(std::move(state), {});
        state = std::move(next);
        mornings_run = morning;
        if (morning < k) {
            if (!event.killed.empty())
                complain("expected a quiet morning " + std::to_string(morning) + ", got kills " +
                         join_indices(event.killed));
        } else {
            if (event.killed != unfaithful)
                complain("morning " + std::to_string(k) + " killed {" +
                         join_indices(event.killed) + "}, expected {" + join_indices(unfaithful) +
                         "}");
        }
        if (state.collapsed) {
            complain("model collapsed on morning " + std::to_string(morning));
            break;
        }
        check_faithful(state, "after morning " + std::to_string(morning));
    }

    AssertionReport report;
    report.holds = ok;
    std::ostringstream head;
    head << "S(" << k << ") on n=" << n << ": " << (ok ? "holds" : "FAILS") << " ("
         << (k - 1) << " quiet mornings, kills on morning " << k << "; " << mornings_run
         << " mornings simulated)\n";
    report.details = head.str() + details.str();
    return report;
}

AssertionReport check_T(std::uint32_t n, std::uint32_t k) {
    if (k < 1 || k > n || n > 12)
        throw DomainError("check_T requires 1 <= k <= n <= 12");
    std::vector<std::uint32_t> unfaithful(k);
    for (std::uint32_t i = 0; i < k; ++i) unfaithful[i] = i + 1;

    PointedModel pm = build_village(n, unfaithful);
    FormulaPtr nested = nest_everyone(at_least_one(n), k - 1);

    std::ostringstream details;
    bool ok = true;
    auto complain = [&](const std::string& msg) {
        ok = false;
        details << "  violation: " << msg << '\n';
    };

    if (!holds(pm, *nested))
        complain("the nested fact itself fails at the actual world");
    // By the scenario's symmetry every betrayed wife is interchangeable;
    // the check covers all of them, so "some vs all" cannot differ here.
    for (std::uint32_t wife = 1; wife <= k; ++wife) {
        FormulaPtr kf = Formula::Knows("w" + std::to_string(wife), nested);
        if (holds(pm, *kf))
            complain("betrayed wife " + std::to_string(wife) + " already knows E^" +
                     std::to_string(k - 1) + "(at_least_one) pre-announcement");
    }

    AssertionReport report;
    report.holds = ok;
    std::ostringstream head;
    head << "T(" << k << ") on n=" << n << ": " << (ok ? "holds" : "FAILS")
         << " (no betrayed wife knows E^" << (k - 1)
         << "(at_least_one) pre-announcement, though it is true at the actual world; "
            "all k betrayed wives checked; symmetric, so some/all coincide)\n";
    report.details = head.str() + details.str();
    return report;
}

} // namespace stobon
