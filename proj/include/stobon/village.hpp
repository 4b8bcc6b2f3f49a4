#pragma once

#include "stobon/formula.hpp"
#include "stobon/kripke.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stobon {

inline constexpr std::uint64_t kDefaultMaxWorlds = std::uint64_t{1} << 24;

/// One puzzle instance. Man/wife indices are 1-based, matching the CLI.
struct ScenarioSpec {
    std::uint32_t n_men = 0;
    std::vector<std::uint32_t> unfaithful; // sorted, unique
    std::vector<std::uint32_t> deviants;   // wives who refuse to kill; sorted, unique
    std::uint32_t max_mornings = 0;

    /// Normalizes (sorts, dedups, defaults max_mornings to n_men + 2) and
    /// validates ranges. Throws DomainError.
    static ScenarioSpec make(std::uint32_t n_men,
                             std::vector<std::uint32_t> unfaithful,
                             std::vector<std::uint32_t> deviants = {},
                             std::uint32_t max_mornings = 0);

    bool operator==(const ScenarioSpec&) const = default;
};

struct DayEvent {
    std::uint32_t morning = 0;                        // 1-based
    std::vector<std::uint32_t> killed;                // man indices, sorted
    /// Worlds the public update retains; absent when the exact count does
    /// not fit in 64 bits (counting engine at very large n).
    std::optional<std::uint64_t> model_size_after;

    bool operator==(const DayEvent&) const = default;
};

enum class Outcome : std::uint8_t { Completed, Collapsed, MorningLimitReached };

struct Trace {
    ScenarioSpec spec;
    std::vector<DayEvent> events;
    Outcome outcome = Outcome::Completed;
    std::uint32_t collapsed_at = 0; // morning, meaningful when Collapsed

    bool operator==(const Trace&) const = default;
};

/// Public history entry: the oracle's announcement or a morning's outcome.
struct PublicEvent {
    enum class Kind : std::uint8_t { Announcement, Morning } kind;
    std::string announced; // canonical formula text, Announcement only
    DayEvent morning;      // Morning only
};

/// The evolving pointed model of a protocol run.
struct ProtocolState {
    PointedModel pm;
    bool collapsed = false;
    std::uint32_t morning = 0; // mornings completed so far
    std::vector<PublicEvent> history;
};

/// The 2^n-world model: one world per subset of unfaithful men, atom u_i
/// true where man i strays, and wife i unable to distinguish worlds that
/// differ only in her own husband's bit. Actual world = the given subset.
/// Construction refuses 2^n_men > max_worlds and points at the fast engine.
PointedModel build_village(std::uint32_t n_men,
                           const std::vector<std::uint32_t>& unfaithful,
                           std::uint64_t max_worlds = kDefaultMaxWorlds);

/// u1 | u2 | ... | un
FormulaPtr at_least_one(std::uint32_t n_men);

ProtocolState initial_state(PointedModel pm);

/// Truthful public announcement: restrict to the worlds where f holds.
/// Throws TruthfulnessViolation when f is false at the actual world.
ProtocolState announce(ProtocolState state, const FormulaPtr& f);

/// One synchronous morning: every wife who knows her husband strays kills
/// him unless she is a deviant; the public then retains exactly the worlds
/// that predicted the observed kill set (prediction never subtracts
/// deviants; deviance is secret). Collapses when the actual world is
/// eliminated. Deviants are 1-based wife indices.
std::pair<ProtocolState, DayEvent> step_morning(ProtocolState state,
                                                const std::vector<std::uint32_t>& deviants);

/// Full run on the explicit model: build, announce at_least_one, step until
/// a kill, a collapse, or spec.max_mornings.
Trace run_protocol(const ScenarioSpec& spec, std::uint64_t max_worlds = kDefaultMaxWorlds);

/// Counting engine for compliant scenarios. Tracks the public lower bound
/// on the number of unfaithful men instead of a world set; equivalent to
/// run_protocol event-for-event, and comfortable at n in the millions.
/// Throws UnsupportedScenario when deviants are present.
Trace run_protocol_fast(const ScenarioSpec& spec);

/// State of the counting engine. The public lower bound starts at 1 after
/// the announcement and rises by one for every quiet morning; a betrayed
/// wife sees k-1 unfaithful men and kills as soon as that count falls below
/// the bound.
struct FastState {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::uint32_t lower_bound = 1;

    std::uint32_t observed_count(bool betrayed) const { return betrayed ? k - 1 : k; }
    bool kills_this_morning() const { return observed_count(true) < lower_bound; }
    void quiet_morning() { ++lower_bound; }
};

/// Sum of binomial coefficients C(n, j) for j > m, when it fits in 64 bits.
std::optional<std::uint64_t> worlds_with_more_than(std::uint32_t n, std::uint32_t m);

struct AssertionReport {
    bool holds = false;
    std::string details;
};

/// Executable check of the knowledge-timing assertion: mornings 1..k-1 are
/// quiet, morning k kills exactly the unfaithful set, after the update
/// following morning k-1 every betrayed wife knows her husband strays, and
/// no faithful wife ever does. Guard: 1 <= k <= n <= 24.
AssertionReport check_S(std::uint32_t n, std::uint32_t k);

/// Executable check of the nested-knowledge assertion on the pre-oracle
/// model: no betrayed wife knows E^(k-1)(at_least_one), while the nested
/// formula itself holds at the actual world. Guard: 1 <= k <= n <= 12.
AssertionReport check_T(std::uint32_t n, std::uint32_t k);

} // namespace stobon
