// stobon: multi-agent epistemic model checker and puzzle-protocol simulator.
//
// Exit codes: 0 success; 1 a check/assertion came out false; 2 usage error;
// 3 domain error (collapse, truthfulness violation, bad names, guards).

#include "stobon/checker.hpp"
#include "stobon/errors.hpp"
#include "stobon/kernels.hpp"
#include "stobon/model_json.hpp"
#include "stobon/parser.hpp"
#include "stobon/probability.hpp"
#include "stobon/trace_io.hpp"
#include "stobon/village.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace stobon;

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::uint64_t max_worlds_guard() {
    if (const char* env = std::getenv("STOBON_MAX_WORLDS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return v;
        std::cerr << "warning: ignoring malformed STOBON_MAX_WORLDS='" << env << "'\n";
    }
    return kDefaultMaxWorlds;
}

FormulaPtr parse_or_usage_error(const std::string& text) {
    ParseResult r = parse_formula(text);
    if (!r.ok()) {
        std::cerr << "error: formula \"" << text << "\": " << r.error->message() << '\n';
        std::exit(kExitUsage);
    }
    return r.ast;
}

struct ModelArgs {
    std::uint32_t village_n = 0;
    std::vector<std::uint32_t> unfaithful;
    bool post_oracle = false;
    std::string model_file;

    void add_to(CLI::App& cmd, bool required) {
        auto* village = cmd.add_option("--village", village_n, "Build the n-man village model");
        auto* unf = cmd.add_option("--unfaithful", unfaithful, "Actually unfaithful men (1-based)")
                        ->delimiter(',');
        auto* post = cmd.add_flag("--post-oracle", post_oracle,
                                  "Apply the at-least-one announcement before evaluating");
        auto* model = cmd.add_option("--model", model_file, "Load a model from a JSON file");
        village->excludes(model);
        model->excludes(village);
        model->excludes(unf);
        model->excludes(post);
        if (required) {
            // exactly one source of a model
            cmd.callback([this, &cmd]() {
                if (cmd.count("--village") == 0 && cmd.count("--model") == 0)
                    throw CLI::RequiredError("--village or --model");
            });
        }
    }

    PointedModel build() const {
        if (!model_file.empty()) return load_model_file(model_file);
        PointedModel pm = build_village(village_n, unfaithful, max_worlds_guard());
        if (post_oracle) {
            ProtocolState st = announce(initial_state(std::move(pm)), at_least_one(village_n));
            return std::move(st.pm);
        }
        return pm;
    }
};

int run_simulate(const ScenarioSpec& spec, const std::string& engine, const std::string& format) {
    Trace trace = engine == "fast" ? run_protocol_fast(spec)
                                   : run_protocol(spec, max_worlds_guard());
    if (format == "json")
        std::cout << trace_to_json(trace).dump(2) << '\n';
    else
        std::cout << trace_table(trace);
    if (trace.outcome == Outcome::Collapsed) {
        std::cerr << "error: model collapsed on morning " << trace.collapsed_at
                  << ": the public history contradicts every remaining world\n";
        return kExitDomain;
    }
    if (trace.outcome == Outcome::MorningLimitReached) {
        std::cerr << "error: morning limit (" << spec.max_mornings
                  << ") reached without a kill or a collapse\n";
        return kExitDomain;
    }
    return kExitOk;
}

int run_check(const ModelArgs& margs, const std::string& formula_text, const std::string& format) {
    FormulaPtr f = parse_or_usage_error(formula_text);
    PointedModel pm = margs.build();
    bool value = holds(pm, *f);
    if (format == "json") {
        ordered_json j{
            {"formula", render(*f)},
            {"world", pm.model.world_id(pm.actual)},
            {"holds", value},
        };
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << (value ? "true" : "false") << '\n';
    }
    return value ? kExitOk : kExitFalse;
}

int run_info(const ModelArgs& margs, const std::string& agent, const std::string& formula_text,
             const std::string& format) {
    FormulaPtr f = parse_or_usage_error(formula_text);
    PointedModel pm = margs.build();
    Probability p = subjective_probability(pm, agent, *f);
    Surprisal s = info_content(p);
    if (format == "json") {
        ordered_json j{
            {"agent", agent},
            {"formula", render(*f)},
            {"probability", to_string(p)},
            {"numerator", p.num},
            {"denominator", p.den},
        };
        if (s.impossible()) {
            j["surprisal_bits"] = nullptr;
            j["impossible_event"] = true;
        } else {
            j["surprisal_bits"] = s.bits();
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "probability: " << to_string(p) << '\n';
        if (s.impossible())
            std::cout << "information: impossible event (no finite surprisal)\n";
        else
            std::cout << "information: " << s.bits() << (s.bits() == 1.0 ? " bit\n" : " bits\n");
    }
    return kExitOk;
}

int run_verify(const std::string& assertion, std::uint32_t max_n, bool verbose) {
    const std::uint32_t guard = assertion == "S" ? 24 : 12;
    if (max_n < 1 || max_n > guard)
        throw DomainError("verify --assertion " + assertion + " supports --max-n 1.." +
                          std::to_string(guard));
    bool all_ok = true;
    for (std::uint32_t n = 1; n <= max_n; ++n) {
        for (std::uint32_t k = 1; k <= n; ++k) {
            AssertionReport report = assertion == "S" ? check_S(n, k) : check_T(n, k);
            if (verbose || !report.holds) std::cout << report.details;
            all_ok = all_ok && report.holds;
        }
    }
    if (all_ok)
        std::cout << assertion << " holds for all 1≤k≤n≤" << max_n << '\n';
    else
        std::cout << assertion << " FAILED somewhere in 1≤k≤n≤" << max_n << '\n';
    return all_ok ? kExitOk : kExitFalse;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stobon: epistemic model checking and announcement-protocol simulation"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for all subcommands");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run the day-by-day protocol");
    std::uint32_t men = 0;
    std::vector<std::uint32_t> unfaithful, deviants;
    std::uint32_t max_mornings = 0;
    std::string engine = "exact", format = "table";
    simulate->add_option("--men", men, "Number of men")->required();
    simulate->add_option("--unfaithful", unfaithful, "Unfaithful men (1-based)")->delimiter(',');
    simulate->add_option("--deviant", deviants, "Wives who refuse to kill (1-based)")
        ->delimiter(',');
    simulate->add_option("--engine", engine, "exact | fast (default exact)")
        ->check(CLI::IsMember({"exact", "fast"}));
    simulate->add_option("--format", format, "table | json (default table)")
        ->check(CLI::IsMember({"table", "json"}));
    simulate->add_option("--max-mornings", max_mornings, "Morning limit (default n+2)");

    // check
    auto* check = app.add_subcommand("check", "Evaluate a formula at the actual world");
    std::string check_formula, check_format = "table";
    ModelArgs check_model;
    check->add_option("--formula", check_formula, "Formula text")->required();
    check_model.add_to(*check, true);
    check->add_option("--format", check_format, "table | json (default table)")
        ->check(CLI::IsMember({"table", "json"}));

    // info
    auto* info = app.add_subcommand(
        "info", "Subjective probability and information content of a formula for an agent");
    std::string info_agent, info_formula, info_format = "table";
    ModelArgs info_model;
    info->add_option("--agent", info_agent, "Agent name (e.g. w1)")->required();
    info->add_option("--formula", info_formula, "Formula text")->required();
    info_model.add_to(*info, true);
    info->add_option("--format", info_format, "table | json (default table)")
        ->check(CLI::IsMember({"table", "json"}));

    // verify
    auto* verify = app.add_subcommand("verify", "Sweep an executable assertion over 1<=k<=n<=N");
    std::string assertion;
    std::uint32_t max_n = 8;
    bool verbose = false;
    verify->add_option("--assertion", assertion, "S | T")
        ->required()
        ->check(CLI::IsMember({"S", "T"}));
    verify->add_option("--max-n", max_n, "Largest village size (default 8)");
    verify->add_flag("-v,--verbose", verbose, "Print one report per (n,k)");

    // grammar / schema
    auto* grammar = app.add_subcommand("grammar", "Print the formula grammar (EBNF)");
    auto* schema = app.add_subcommand("schema", "Print the model file JSON schema");

    // kernels (introspection)
    auto* kernels = app.add_subcommand("kernels", "Show the selected bitset kernel backend");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int cli_code = app.exit(e);
        return cli_code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            ScenarioSpec spec = ScenarioSpec::make(men, unfaithful, deviants, max_mornings);
            return run_simulate(spec, engine, format);
        }
        if (check->parsed()) return run_check(check_model, check_formula, check_format);
        if (info->parsed()) return run_info(info_model, info_agent, info_formula, info_format);
        if (verify->parsed()) return run_verify(assertion, max_n, verbose);
        if (grammar->parsed()) {
            std::cout << grammar_text();
            return kExitOk;
        }
        if (schema->parsed()) {
            std::cout << model_schema_json().dump(2) << '\n';
            return kExitOk;
        }
        if (kernels->parsed()) {
            std::cout << "active: " << kern::active_ops().name << '\n';
            for (const kern::Ops* ops : kern::runnable_ops())
                std::cout << "runnable: " << ops->name << '\n';
            return kExitOk;
        }
    } catch (const TruthfulnessViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const UnsupportedScenario& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}
