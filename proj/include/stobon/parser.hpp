#pragma once

#include "stobon/formula.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace stobon {

struct ParseError {
    std::size_t offset = 0;   // byte offset into the input
    std::string expected;
    std::string found;

    std::string message() const;
};

struct ParseResult {
    FormulaPtr ast;
    std::optional<ParseError> error;

    bool ok() const { return !error.has_value(); }
};

inline constexpr std::size_t kDefaultParseDepth = 10'000;

/// Recursive-descent parser for the concrete epistemic syntax. Whitespace
/// insensitive; on failure reports the first offending byte offset. The
/// depth guard bounds formula nesting so adversarial input fails cleanly.
ParseResult parse_formula(std::string_view text, std::size_t max_depth = kDefaultParseDepth);

/// The normative EBNF, as printed by the `grammar` CLI subcommand.
const char* grammar_text();

} // namespace stobon
