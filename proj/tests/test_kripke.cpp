#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stobon/kripke.hpp"
#include "stobon/model_json.hpp"
#include "stobon/village.hpp"

#include "support/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

using namespace stobon;
using namespace stobon::testing;

namespace {

ModelSpec two_world_spec() {
    ModelSpec spec;
    spec.agents = {"a", "b"};
    spec.atoms = {"p"};
    spec.worlds = {{"w0", {}}, {"w1", {"p"}}};
    spec.relations = {
        {"a", {{"w0", "w1"}}},
        {"b", {{"w0"}, {"w1"}}},
    };
    spec.actual = "w1";
    return spec;
}

bool mentions(const ValidationReport& r, const std::string& needle) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const std::string& v) {
        return v.find(needle) != std::string::npos;
    });
}

// Label-independent partition equality.
bool same_partition(const Partition& p, const Partition& q) {
    if (p.block_of.size() != q.block_of.size()) return false;
    for (std::size_t v = 0; v < p.block_of.size(); ++v)
        for (std::size_t w = v + 1; w < p.block_of.size(); ++w)
            if ((p.block_of[v] == p.block_of[w]) != (q.block_of[v] == q.block_of[w])) return false;
    return true;
}

bool isomorphic_models(const KripkeModel& a, const KripkeModel& b) {
    if (a.world_count() != b.world_count() || a.agent_count() != b.agent_count()) return false;
    if (a.agent_names() != b.agent_names() || a.atom_names() != b.atom_names()) return false;
    for (std::size_t w = 0; w < a.world_count(); ++w) {
        if (a.valuation(static_cast<WorldId>(w)) != b.valuation(static_cast<WorldId>(w)))
            return false;
        if (a.world_id(static_cast<WorldId>(w)) != b.world_id(static_cast<WorldId>(w)))
            return false;
    }
    for (std::size_t ag = 0; ag < a.agent_count(); ++ag)
        if (!same_partition(a.relation(static_cast<AgentId>(ag)),
                            b.relation(static_cast<AgentId>(ag))))
            return false;
    return true;
}

} // namespace

TEST_CASE("validate accepts a well-formed model") {
    CHECK(validate(two_world_spec()).ok());
}

TEST_CASE("validate reports overlapping blocks") {
    ModelSpec spec = two_world_spec();
    spec.relations[0].second = {{"w0", "w1"}, {"w0"}}; // agent a lists w0 twice
    ValidationReport r = validate(spec);
    CHECK(!r.ok());
    CHECK(mentions(r, "overlapping blocks"));
}

TEST_CASE("validate reports uncovered worlds") {
    ModelSpec spec = two_world_spec();
    spec.relations[1].second = {{"w0"}}; // agent b forgets w1
    ValidationReport r = validate(spec);
    CHECK(!r.ok());
    CHECK(mentions(r, "uncovered world"));
}

TEST_CASE("validate reports dangling atoms and bad actual world") {
    ModelSpec spec = two_world_spec();
    spec.worlds[1].atoms.push_back("ghost");
    spec.actual = "nowhere";
    ValidationReport r = validate(spec);
    CHECK(mentions(r, "dangling atom"));
    CHECK(mentions(r, "actual world"));
}

TEST_CASE("build_model rejects invalid input with every violation listed") {
    ModelSpec spec = two_world_spec();
    spec.relations[0].second = {{"w0", "w1"}, {"w0"}};
    spec.worlds[1].atoms.push_back("ghost");
    CHECK_THROWS_AS(build_model(spec), DomainError);
    try {
        build_model(spec);
    } catch (const DomainError& e) {
        std::string msg = e.what();
        CHECK(msg.find("overlapping blocks") != std::string::npos);
        CHECK(msg.find("dangling atom") != std::string::npos);
    }
}

TEST_CASE("accessible: village n=1, wife 1 cannot tell the two worlds apart") {
    PointedModel pm = build_village(1, {1});
    CHECK(pm.model.world_count() == 2);
    CHECK(pm.actual == 1); // mask of {1}
    WorldSet acc = pm.model.accessible(pm.actual, 0);
    CHECK(acc.count() == 2);
    CHECK(acc.test(0));
    CHECK(acc.test(1));
}

TEST_CASE("accessible: village n=2, wife 1 from {1,2} sees {1,2} and {2}") {
    PointedModel pm = build_village(2, {1, 2});
    WorldSet acc = pm.model.accessible(3, 0); // world mask 0b11, wife 1 flips bit 0
    CHECK(acc.to_indices() == std::vector<std::uint32_t>{2, 3});
}

TEST_CASE("accessible always contains the source world (and is symmetric+transitive)") {
    Rng rng(11);
    for (int round = 0; round < 30; ++round) {
        PointedModel pm = random_model(rng);
        const auto m = pm.model.world_count();
        for (AgentId a = 0; a < pm.model.agent_count(); ++a) {
            for (WorldId w = 0; w < m; ++w) {
                WorldSet acc = pm.model.accessible(w, a);
                CHECK(acc.test(w)); // reflexive
                acc.for_each([&](std::uint32_t v) {
                    CHECK(pm.model.accessible(v, a) == acc); // symmetric + transitive: same block
                });
            }
        }
        CHECK(pm.model.check_invariants().empty());
    }
}

TEST_CASE("accessible rejects unknown worlds and agents") {
    PointedModel pm = build_village(2, {1});
    CHECK_THROWS_AS(pm.model.accessible(99, 0), DomainError);
    CHECK_THROWS_AS(pm.model.accessible(0, 99), DomainError);
}

TEST_CASE("restrict to all worlds is an isomorphism") {
    Rng rng(12);
    for (int round = 0; round < 20; ++round) {
        PointedModel pm = random_model(rng);
        KripkeModel r = pm.model.restricted(WorldSet::all_of(pm.model.world_count()));
        CHECK(isomorphic_models(pm.model, r));
    }
}

TEST_CASE("restrict: village n=2 to worlds with at least one unfaithful man") {
    PointedModel pm = build_village(2, {1, 2});
    WorldSet keep(4);
    for (WorldId w = 1; w < 4; ++w) keep.set(w);
    KripkeModel r = pm.model.restricted(keep);
    CHECK(r.world_count() == 3);
    CHECK(r.check_invariants().empty());
}

TEST_CASE("restrict to nothing collapses") {
    PointedModel pm = build_village(2, {1});
    KripkeModel r = pm.model.restricted(WorldSet(4));
    CHECK(r.collapsed());
    CHECK(r.world_count() == 0);
    CHECK(r.agent_count() == 2); // tables survive the collapse
}

TEST_CASE("restrict keeps exactly the requested worlds and stays well-formed") {
    Rng rng(13);
    for (int round = 0; round < 40; ++round) {
        PointedModel pm = random_model(rng);
        const std::size_t m = pm.model.world_count();
        WorldSet keep(m);
        for (WorldId w = 0; w < m; ++w)
            if (rng.chance(0.6)) keep.set(w);
        std::vector<std::int32_t> old_to_new;
        KripkeModel r = pm.model.restricted(keep, old_to_new);
        CHECK(r.world_count() == keep.count());
        CHECK(r.check_invariants().empty());
        keep.for_each([&](std::uint32_t w) {
            CHECK(r.world_id(static_cast<WorldId>(old_to_new[w])) == pm.model.world_id(w));
            CHECK(r.valuation(static_cast<WorldId>(old_to_new[w])) == pm.model.valuation(w));
        });
    }
}

TEST_CASE("restrict composes: (m|A)|B == m|(A∩B) up to indices") {
    Rng rng(14);
    for (int round = 0; round < 25; ++round) {
        PointedModel pm = random_model(rng);
        const std::size_t m = pm.model.world_count();
        WorldSet a(m), b(m);
        for (WorldId w = 0; w < m; ++w) {
            if (rng.chance(0.7)) a.set(w);
            if (rng.chance(0.7)) b.set(w);
        }
        WorldSet both = a & b;

        std::vector<std::int32_t> to_a;
        KripkeModel ma = pm.model.restricted(a, to_a);
        WorldSet b_in_a(ma.world_count());
        both.for_each([&](std::uint32_t w) { b_in_a.set(static_cast<std::uint32_t>(to_a[w])); });
        KripkeModel lhs = ma.restricted(b_in_a);
        KripkeModel rhs = pm.model.restricted(both);
        CHECK(isomorphic_models(lhs, rhs));
    }
}

TEST_CASE("restrict by explicit ids validates them") {
    PointedModel pm = build_village(2, {1});
    std::vector<WorldId> bad{0, 9};
    CHECK_THROWS_AS(pm.model.restricted(std::span<const WorldId>(bad)), DomainError);
}

TEST_CASE("reachable: one agent gives that agent's block") {
    Rng rng(15);
    for (int round = 0; round < 20; ++round) {
        PointedModel pm = random_model(rng);
        for (AgentId a = 0; a < pm.model.agent_count(); ++a) {
            std::vector<AgentId> group{a};
            for (WorldId w = 0; w < pm.model.world_count(); ++w)
                CHECK(pm.model.reachable(w, group) == pm.model.accessible(w, a));
        }
    }
}

TEST_CASE("reachable: all wives connect the whole n=2 village") {
    PointedModel pm = build_village(2, {1});
    std::vector<AgentId> all{0, 1};
    for (WorldId w = 0; w < 4; ++w) CHECK(pm.model.reachable(w, all).count() == 4);
}

TEST_CASE("reachable with an empty group is just the start world") {
    PointedModel pm = build_village(2, {1});
    WorldSet r = pm.model.reachable(2, {});
    CHECK(r.count() == 1);
    CHECK(r.test(2));
}

TEST_CASE("reachable is monotone in the group") {
    Rng rng(16);
    for (int round = 0; round < 25; ++round) {
        PointedModel pm = random_model(rng);
        const auto n_agents = static_cast<AgentId>(pm.model.agent_count());
        std::vector<AgentId> small, large;
        for (AgentId a = 0; a < n_agents; ++a) {
            const bool in_large = rng.chance(0.7);
            if (in_large) {
                large.push_back(a);
                if (rng.chance(0.5)) small.push_back(a);
            }
        }
        for (WorldId w = 0; w < pm.model.world_count(); ++w)
            CHECK(pm.model.reachable(w, small).is_subset_of(pm.model.reachable(w, large)));
    }
}

TEST_CASE("reachable agrees with a brute-force closure on the village") {
    // Brute force: from w, repeatedly flip any single bit (that is what the
    // wives' relations allow) until the set stops growing.
    PointedModel pm = build_village(3, {1, 2});
    std::vector<AgentId> all{0, 1, 2};
    for (WorldId start = 0; start < 8; ++start) {
        std::vector<bool> seen(8, false);
        std::vector<WorldId> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            WorldId w = stack.back();
            stack.pop_back();
            for (unsigned bit = 0; bit < 3; ++bit) {
                WorldId v = w ^ (1u << bit);
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        WorldSet got = pm.model.reachable(start, all);
        for (WorldId v = 0; v < 8; ++v) CHECK(got.test(v) == seen[v]);
    }
}

TEST_CASE("world guard refuses oversized villages and points at the fast engine") {
    CHECK_THROWS_AS(build_village(25, {1}), DomainError);
    try {
        build_village(25, {1});
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("fast") != std::string::npos);
    }
    CHECK_THROWS_AS(build_village(5, {1}, 16), DomainError);
    CHECK_NOTHROW(build_village(5, {1}, 32));
}

TEST_CASE("model JSON round-trips through the raw description") {
    ModelSpec spec = two_world_spec();
    ModelSpec back = model_spec_from_json(model_spec_to_json(spec));
    CHECK(back.agents == spec.agents);
    CHECK(back.atoms == spec.atoms);
    CHECK(back.actual == spec.actual);
    REQUIRE(back.worlds.size() == spec.worlds.size());
    CHECK(back.relations.size() == spec.relations.size());
}

TEST_CASE("load_model_file validates on load") {
    const std::string good = "/tmp/stobon_test_model_good.json";
    const std::string bad = "/tmp/stobon_test_model_bad.json";
    {
        std::ofstream out(good);
        out << model_spec_to_json(two_world_spec()).dump();
    }
    PointedModel pm = load_model_file(good);
    CHECK(pm.model.world_count() == 2);
    CHECK(pm.model.world_id(pm.actual) == "w1");
    {
        ModelSpec broken = two_world_spec();
        broken.relations[0].second = {{"w0"}}; // w1 uncovered
        std::ofstream out(bad);
        out << model_spec_to_json(broken).dump();
    }
    CHECK_THROWS_AS(load_model_file(bad), DomainError);
    CHECK_THROWS_AS(load_model_file("/tmp/definitely_missing_stobon.json"), DomainError);
    std::remove(good.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("synthesized world ids use subset notation") {
    PointedModel pm = build_village(2, {1, 2});
    CHECK(pm.model.world_id(0) == "{}");
    CHECK(pm.model.world_id(1) == "{1}");
    CHECK(pm.model.world_id(3) == "{1,2}");
}
