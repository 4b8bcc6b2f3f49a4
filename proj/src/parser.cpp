#include "stobon/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace stobon {

std::string ParseError::message() const {
    std::ostringstream os;
    os << "parse error at offset " << offset << ": expected " << expected << ", found " << found;
    return os.str();
}

namespace {

enum class Tok : std::uint8_t {
    Ident,     // atom or agent name
    KwTrue,
    KwFalse,
    KwK,
    KwE,
    KwC,
    Tilde,
    Amp,
    Pipe,
    Arrow,     // ->
    DArrow,    // <->
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Bang,
    End,
};

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
};

const char* describe(Tok k) {
    switch (k) {
    case Tok::Ident: return "name";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwK: return "'K'";
    case Tok::KwE: return "'E'";
    case Tok::KwC: return "'C'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Bang: return "'!'";
    case Tok::End: return "end of input";
    }
    return "?";
}

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + std::string(t.text) + "'";
}

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Lexer {
    std::string_view src;
    std::vector<Token> tokens;
    std::optional<ParseError> error;

    void run() {
        std::size_t i = 0;
        while (i < src.size()) {
            char c = src[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (ident_start(c)) {
                std::size_t start = i;
                while (i < src.size() && ident_char(src[i])) ++i;
                std::string_view word = src.substr(start, i - start);
                Tok kind = Tok::Ident;
                if (word == "true") kind = Tok::KwTrue;
                else if (word == "false") kind = Tok::KwFalse;
                else if (word == "K") kind = Tok::KwK;
                else if (word == "E") kind = Tok::KwE;
                else if (word == "C") kind = Tok::KwC;
                tokens.push_back({kind, start, word});
                continue;
            }
            switch (c) {
            case '~': tokens.push_back({Tok::Tilde, i, src.substr(i, 1)}); ++i; continue;
            case '&': tokens.push_back({Tok::Amp, i, src.substr(i, 1)}); ++i; continue;
            case '|': tokens.push_back({Tok::Pipe, i, src.substr(i, 1)}); ++i; continue;
            case '(': tokens.push_back({Tok::LParen, i, src.substr(i, 1)}); ++i; continue;
            case ')': tokens.push_back({Tok::RParen, i, src.substr(i, 1)}); ++i; continue;
            case '[': tokens.push_back({Tok::LBracket, i, src.substr(i, 1)}); ++i; continue;
            case ']': tokens.push_back({Tok::RBracket, i, src.substr(i, 1)}); ++i; continue;
            case ',': tokens.push_back({Tok::Comma, i, src.substr(i, 1)}); ++i; continue;
            case '!': tokens.push_back({Tok::Bang, i, src.substr(i, 1)}); ++i; continue;
            case '-':
                if (i + 1 < src.size() && src[i + 1] == '>') {
                    tokens.push_back({Tok::Arrow, i, src.substr(i, 2)});
                    i += 2;
                    continue;
                }
                error = ParseError{i, "'->'", "'" + std::string(src.substr(i, 1)) + "'"};
                return;
            case '<':
                if (src.substr(i).starts_with("<->")) {
                    tokens.push_back({Tok::DArrow, i, src.substr(i, 3)});
                    i += 3;
                    continue;
                }
                error = ParseError{i, "'<->'", "'" + std::string(src.substr(i, 1)) + "'"};
                return;
            default:
                error = ParseError{i, "a formula token",
                                   "'" + std::string(src.substr(i, 1)) + "'"};
                return;
            }
        }
        tokens.push_back({Tok::End, src.size(), {}});
    }
};

struct Parser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    std::size_t depth = 0;
    std::size_t max_depth;
    std::optional<ParseError> error;

    const Token& peek() const { return toks[pos]; }

    bool at(Tok k) const { return toks[pos].kind == k; }

    const Token& advance() { return toks[pos++]; }

    FormulaPtr fail(std::string expected) {
        if (!error)
            error = ParseError{peek().offset, std::move(expected), describe(peek())};
        return nullptr;
    }

    bool expect(Tok k) {
        if (!at(k)) {
            fail(describe(k));
            return false;
        }
        advance();
        return true;
    }

    struct DepthGuard {
        Parser& p;
        bool ok;
        explicit DepthGuard(Parser& parser) : p(parser), ok(++p.depth <= p.max_depth) {
            if (!ok && !p.error)
                p.error = ParseError{p.peek().offset,
                                     "a formula no deeper than " + std::to_string(p.max_depth),
                                     "deeper nesting"};
        }
        ~DepthGuard() { --p.depth; }
    };

    // formula ::= iff
    FormulaPtr parse_formula() {
        DepthGuard guard(*this);
        if (!guard.ok) return nullptr;
        return parse_iff();
    }

    // iff ::= imp { "<->" imp }
    FormulaPtr parse_iff() {
        FormulaPtr lhs = parse_imp();
        if (!lhs) return nullptr;
        while (at(Tok::DArrow)) {
            advance();
            FormulaPtr rhs = parse_imp();
            if (!rhs) return nullptr;
            lhs = Formula::Iff(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    // imp ::= or [ "->" imp ]
    FormulaPtr parse_imp() {
        FormulaPtr lhs = parse_or();
        if (!lhs) return nullptr;
        if (at(Tok::Arrow)) {
            advance();
            DepthGuard guard(*this);
            if (!guard.ok) return nullptr;
            FormulaPtr rhs = parse_imp();
            if (!rhs) return nullptr;
            return Formula::Implies(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    // or ::= and { "|" and }
    FormulaPtr parse_or() {
        FormulaPtr lhs = parse_and();
        if (!lhs) return nullptr;
        while (at(Tok::Pipe)) {
            advance();
            FormulaPtr rhs = parse_and();
            if (!rhs) return nullptr;
            lhs = Formula::Or(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    // and ::= unary { "&" unary }
    FormulaPtr parse_and() {
        FormulaPtr lhs = parse_unary();
        if (!lhs) return nullptr;
        while (at(Tok::Amp)) {
            advance();
            FormulaPtr rhs = parse_unary();
            if (!rhs) return nullptr;
            lhs = Formula::And(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    std::optional<std::vector<std::string>> parse_namelist() {
        std::vector<std::string> names;
        if (!at(Tok::Ident)) {
            fail("agent name");
            return std::nullopt;
        }
        names.emplace_back(advance().text);
        while (at(Tok::Comma)) {
            advance();
            if (!at(Tok::Ident)) {
                fail("agent name");
                return std::nullopt;
            }
            names.emplace_back(advance().text);
        }
        return names;
    }

    // Prefix operators are collected in a loop, so degenerate chains
    // ("~~~~...p") cost constant C++ stack; the depth guard still ticks
    // once per level.
    struct Prefix {
        enum Kind : std::uint8_t { Neg, Know, Every, Comm, Ann } kind;
        std::string agent;
        std::vector<std::string> group;
        FormulaPtr said;
    };

    FormulaPtr parse_unary() {
        std::vector<Prefix> prefixes;
        std::size_t opened = 0;
        auto bump = [&]() -> bool {
            if (depth + 1 > max_depth) {
                if (!error)
                    error = ParseError{peek().offset,
                                       "a formula no deeper than " + std::to_string(max_depth),
                                       "deeper nesting"};
                return false;
            }
            ++depth;
            ++opened;
            return true;
        };
        auto done = [&](FormulaPtr f) -> FormulaPtr {
            depth -= opened;
            if (!f) return nullptr;
            for (auto it = prefixes.rbegin(); it != prefixes.rend(); ++it) {
                switch (it->kind) {
                case Prefix::Neg: f = Formula::Not(std::move(f)); break;
                case Prefix::Know: f = Formula::Knows(std::move(it->agent), std::move(f)); break;
                case Prefix::Every: f = Formula::Everyone(std::move(it->group), std::move(f)); break;
                case Prefix::Comm: f = Formula::Common(std::move(it->group), std::move(f)); break;
                case Prefix::Ann: f = Formula::Announce(std::move(it->said), std::move(f)); break;
                }
            }
            return f;
        };

        for (;;) {
            switch (peek().kind) {
            case Tok::Tilde:
                if (!bump()) return done(nullptr);
                advance();
                prefixes.push_back({Prefix::Neg, {}, {}, nullptr});
                continue;
            case Tok::KwK: {
                if (!bump()) return done(nullptr);
                advance();
                if (!expect(Tok::LBracket)) return done(nullptr);
                if (!at(Tok::Ident)) return done(fail("agent name"));
                std::string agent(advance().text);
                if (!expect(Tok::RBracket)) return done(nullptr);
                prefixes.push_back({Prefix::Know, std::move(agent), {}, nullptr});
                continue;
            }
            case Tok::KwE:
            case Tok::KwC: {
                const bool everyone = peek().kind == Tok::KwE;
                if (!bump()) return done(nullptr);
                advance();
                std::vector<std::string> group;
                if (at(Tok::LBracket)) {
                    advance();
                    auto names = parse_namelist();
                    if (!names) return done(nullptr);
                    group = std::move(*names);
                    if (!expect(Tok::RBracket)) return done(nullptr);
                }
                prefixes.push_back(
                    {everyone ? Prefix::Every : Prefix::Comm, {}, std::move(group), nullptr});
                continue;
            }
            case Tok::LBracket: {
                if (!bump()) return done(nullptr);
                advance();
                if (!expect(Tok::Bang)) return done(nullptr);
                FormulaPtr said = parse_formula();
                if (!said) return done(nullptr);
                if (!expect(Tok::RBracket)) return done(nullptr);
                prefixes.push_back({Prefix::Ann, {}, {}, std::move(said)});
                continue;
            }
            case Tok::LParen: {
                if (!bump()) return done(nullptr);
                advance();
                FormulaPtr f = parse_formula();
                if (!f) return done(nullptr);
                if (!expect(Tok::RParen)) return done(nullptr);
                return done(std::move(f));
            }
            case Tok::KwTrue:
                advance();
                return done(Formula::True());
            case Tok::KwFalse:
                advance();
                return done(Formula::False());
            case Tok::Ident:
                return done(Formula::Atom(std::string(advance().text)));
            default:
                return done(fail("a formula"));
            }
        }
    }
};

} // namespace

ParseResult parse_formula(std::string_view text, std::size_t max_depth) {
    Lexer lexer{text, {}, std::nullopt};
    lexer.run();
    if (lexer.error) return ParseResult{nullptr, lexer.error};

    Parser parser{lexer.tokens, 0, 0, max_depth, std::nullopt};
    FormulaPtr ast = parser.parse_formula();
    if (!ast) return ParseResult{nullptr, parser.error};
    if (!parser.at(Tok::End)) {
        return ParseResult{nullptr, ParseError{parser.peek().offset, "end of input",
                                               describe(parser.peek())}};
    }
    return ParseResult{std::move(ast), std::nullopt};
}

const char* grammar_text() {
    return
        "formula ::= iff ;  iff ::= imp { \"<->\" imp } ;  imp ::= or [ \"->\" imp ] ;\n"
        "or ::= and { \"|\" and } ;  and ::= unary { \"&\" unary } ;\n"
        "unary ::= \"~\" unary | \"K\" \"[\" name \"]\" unary | \"E\" [ \"[\" namelist \"]\" ] unary\n"
        "        | \"C\" [ \"[\" namelist \"]\" ] unary | \"[\" \"!\" formula \"]\" unary\n"
        "        | \"(\" formula \")\" | \"true\" | \"false\" | name ;\n"
        "\n"
        "name ::= /[a-zA-Z_][a-zA-Z0-9_]*/ except the reserved words ;\n"
        "namelist ::= name { \",\" name } ;\n"
        "reserved ::= \"true\" | \"false\" | \"K\" | \"E\" | \"C\" ;\n";
}

} // namespace stobon
