#include "stobon/trace_io.hpp"

#include "stobon/errors.hpp"

#include <iomanip>
#include <sstream>

namespace stobon {

using nlohmann::ordered_json;

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::Collapsed: return "collapsed";
    case Outcome::MorningLimitReached: return "morning_limit_reached";
    }
    return "?";
}

namespace {

Outcome outcome_from_name(const std::string& name) {
    if (name == "completed") return Outcome::Completed;
    if (name == "collapsed") return Outcome::Collapsed;
    if (name == "morning_limit_reached") return Outcome::MorningLimitReached;
    throw DomainError("unknown trace outcome '" + name + "'");
}

std::string join(const std::vector<std::uint32_t>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) os << ',';
        os << xs[i];
    }
    return os.str();
}

} // namespace

ordered_json scenario_to_json(const ScenarioSpec& spec) {
    return ordered_json{
        {"n_men", spec.n_men},
        {"unfaithful", spec.unfaithful},
        {"deviants", spec.deviants},
        {"max_mornings", spec.max_mornings},
    };
}

ScenarioSpec scenario_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("n_men"))
        throw DomainError("scenario document: missing 'n_men'");
    std::vector<std::uint32_t> unfaithful, deviants;
    if (j.contains("unfaithful")) unfaithful = j["unfaithful"].get<std::vector<std::uint32_t>>();
    if (j.contains("deviants")) deviants = j["deviants"].get<std::vector<std::uint32_t>>();
    std::uint32_t max_mornings = j.value("max_mornings", 0u);
    return ScenarioSpec::make(j["n_men"].get<std::uint32_t>(), std::move(unfaithful),
                              std::move(deviants), max_mornings);
}

ordered_json trace_to_json(const Trace& trace) {
    ordered_json events = ordered_json::array();
    for (const DayEvent& e : trace.events) {
        ordered_json je{
            {"morning", e.morning},
            {"killed", e.killed},
        };
        if (e.model_size_after.has_value())
            je["model_size_after"] = *e.model_size_after;
        else
            je["model_size_after"] = nullptr;
        events.push_back(std::move(je));
    }
    ordered_json j{
        {"spec", scenario_to_json(trace.spec)},
        {"events", std::move(events)},
        {"outcome", outcome_name(trace.outcome)},
    };
    if (trace.outcome == Outcome::Collapsed) j["collapsed_at"] = trace.collapsed_at;
    return j;
}

Trace trace_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("spec") || !j.contains("events") || !j.contains("outcome"))
        throw DomainError("trace document: needs 'spec', 'events', and 'outcome'");
    Trace t;
    t.spec = scenario_from_json(j["spec"]);
    for (const auto& je : j["events"]) {
        DayEvent e;
        e.morning = je.at("morning").get<std::uint32_t>();
        e.killed = je.at("killed").get<std::vector<std::uint32_t>>();
        if (je.contains("model_size_after") && !je["model_size_after"].is_null())
            e.model_size_after = je["model_size_after"].get<std::uint64_t>();
        t.events.push_back(std::move(e));
    }
    t.outcome = outcome_from_name(j["outcome"].get<std::string>());
    if (t.outcome == Outcome::Collapsed) t.collapsed_at = j.value("collapsed_at", 0u);
    return t;
}

std::string trace_table(const Trace& trace) {
    std::ostringstream os;
    os << "scenario: n=" << trace.spec.n_men << " unfaithful={" << join(trace.spec.unfaithful)
       << "}";
    if (!trace.spec.deviants.empty()) os << " deviants={" << join(trace.spec.deviants) << "}";
    os << '\n';
    os << std::left << std::setw(9) << "morning" << std::setw(24) << "killed"
       << std::setw(18) << "worlds_left" << '\n';
    for (const DayEvent& e : trace.events) {
        std::string size_text =
            e.model_size_after.has_value() ? std::to_string(*e.model_size_after) : "-";
        std::string killed = e.killed.empty() ? "(no killings)" : join(e.killed);
        os << std::left << std::setw(9) << e.morning << std::setw(24) << killed
           << std::setw(18) << size_text << '\n';
    }
    os << "outcome: " << outcome_name(trace.outcome);
    if (trace.outcome == Outcome::Collapsed) os << " (morning " << trace.collapsed_at << ")";
    os << '\n';
    return os.str();
}

} // namespace stobon
