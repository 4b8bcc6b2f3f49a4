#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stobon/errors.hpp"
#include "stobon/formula.hpp"
#include "stobon/parser.hpp"

#include "support/generators.hpp"

#include <string>

using namespace stobon;
using namespace stobon::testing;

namespace {

FormulaPtr must_parse(const std::string& text) {
    ParseResult r = parse_formula(text);
    REQUIRE_MESSAGE(r.ok(), (r.error ? r.error->message() : "?"));
    return r.ast;
}

ParseError must_fail(const std::string& text) {
    ParseResult r = parse_formula(text);
    REQUIRE(!r.ok());
    return *r.error;
}

} // namespace

TEST_CASE("K binds an agent and its operand") {
    FormulaPtr f = must_parse("K[w1] (u1 & ~u2)");
    REQUIRE(f->kind() == FormulaKind::Knows);
    CHECK(f->name() == "w1");
    const Formula& body = *f->lhs();
    REQUIRE(body.kind() == FormulaKind::And);
    CHECK(body.lhs()->kind() == FormulaKind::Atom);
    CHECK(body.lhs()->name() == "u1");
    REQUIRE(body.rhs()->kind() == FormulaKind::Not);
    CHECK(body.rhs()->lhs()->name() == "u2");
}

TEST_CASE("unary operators bind tighter than |") {
    FormulaPtr f = must_parse("~K[a] u1 | u2");
    REQUIRE(f->kind() == FormulaKind::Or);
    REQUIRE(f->lhs()->kind() == FormulaKind::Not);
    REQUIRE(f->lhs()->lhs()->kind() == FormulaKind::Knows);
    CHECK(f->lhs()->lhs()->name() == "a");
    CHECK(f->lhs()->lhs()->lhs()->name() == "u1");
    CHECK(f->rhs()->name() == "u2");
}

TEST_CASE("unterminated agent bracket pinpoints the offset") {
    ParseError e = must_fail("K[a");
    CHECK(e.offset == 3);
    CHECK(e.expected == "']'");
    CHECK(e.found == "end of input");
}

TEST_CASE("precedence ladder: <-> loosest, then ->, |, &, unary") {
    FormulaPtr f = must_parse("p & q | r -> s <-> t");
    REQUIRE(f->kind() == FormulaKind::Iff);
    REQUIRE(f->lhs()->kind() == FormulaKind::Implies);
    CHECK(f->rhs()->name() == "t");
    const Formula& imp = *f->lhs();
    REQUIRE(imp.lhs()->kind() == FormulaKind::Or);
    CHECK(imp.rhs()->name() == "s");
    REQUIRE(imp.lhs()->lhs()->kind() == FormulaKind::And);
    CHECK(imp.lhs()->rhs()->name() == "r");
}

TEST_CASE("-> associates right, <-> chains left") {
    FormulaPtr imp = must_parse("a -> b -> c");
    REQUIRE(imp->kind() == FormulaKind::Implies);
    CHECK(imp->lhs()->name() == "a");
    CHECK(imp->rhs()->kind() == FormulaKind::Implies);

    FormulaPtr iff = must_parse("a <-> b <-> c");
    REQUIRE(iff->kind() == FormulaKind::Iff);
    CHECK(iff->lhs()->kind() == FormulaKind::Iff);
    CHECK(iff->rhs()->name() == "c");
}

TEST_CASE("E and C default to all agents, brackets narrow the group") {
    FormulaPtr e = must_parse("E p");
    REQUIRE(e->kind() == FormulaKind::Everyone);
    CHECK(e->group().empty());

    FormulaPtr eg = must_parse("E[a,b] p");
    CHECK(eg->group() == std::vector<std::string>{"a", "b"});

    FormulaPtr c = must_parse("C[a] K[b] p");
    REQUIRE(c->kind() == FormulaKind::Common);
    CHECK(c->group() == std::vector<std::string>{"a"});
    CHECK(c->lhs()->kind() == FormulaKind::Knows);
}

TEST_CASE("announcement syntax") {
    FormulaPtr f = must_parse("[! p] C p");
    REQUIRE(f->kind() == FormulaKind::Announce);
    CHECK(f->lhs()->name() == "p");
    REQUIRE(f->rhs()->kind() == FormulaKind::Common);
    CHECK(render(*f) == "[! p] C p");
    CHECK(must_parse("[!p]q")->kind() == FormulaKind::Announce); // whitespace-free
}

TEST_CASE("parse failures carry offsets and expectations") {
    CHECK(must_fail("").expected == "a formula");
    CHECK(must_fail("(p").expected == "')'");
    CHECK(must_fail("p q").expected == "end of input");
    CHECK(must_fail("p q").offset == 2);
    CHECK(must_fail("K p").expected == "'['");
    CHECK(must_fail("p &").expected == "a formula");
    CHECK(must_fail("p $ q").offset == 2);
    CHECK(must_fail("a - b").expected == "'->'");
    CHECK(must_fail("a < b").expected == "'<->'");
    CHECK(must_fail("E[] p").expected == "agent name");
    CHECK(must_fail("[p] q").expected == "'!'");
    CHECK(must_fail("true false").expected == "end of input");
}

TEST_CASE("render produces minimal parentheses") {
    CHECK(render(*Formula::And(Formula::Atom("u1"), Formula::Atom("u2"))) == "u1 & u2");
    CHECK(render(*Formula::Not(Formula::And(Formula::Atom("p"), Formula::Atom("q")))) ==
          "~(p & q)");
    CHECK(render(*Formula::Not(Formula::Not(Formula::Atom("p")))) == "~~p");
    CHECK(render(*Formula::Or(Formula::Atom("p"),
                              Formula::Or(Formula::Atom("q"), Formula::Atom("r")))) ==
          "p | (q | r)");
    CHECK(render(*Formula::Or(Formula::Or(Formula::Atom("p"), Formula::Atom("q")),
                              Formula::Atom("r"))) == "p | q | r");
    CHECK(render(*Formula::Implies(Formula::Implies(Formula::Atom("a"), Formula::Atom("b")),
                                   Formula::Atom("c"))) == "(a -> b) -> c");
    CHECK(render(*Formula::Knows("a", Formula::Everyone({}, Formula::Atom("p")))) == "K[a] E p");
    CHECK(render(*Formula::Announce(Formula::Atom("p"),
                                    Formula::Common({}, Formula::Atom("p")))) == "[! p] C p");
}

TEST_CASE("nest_everyone") {
    FormulaPtr base = Formula::Atom("p");
    CHECK(nest_everyone(base, 0) == base); // identity, same node
    FormulaPtr one = nest_everyone(base, 1);
    REQUIRE(one->kind() == FormulaKind::Everyone);
    CHECK(one->lhs() == base);

    FormulaPtr three = nest_everyone(base, 3);
    int depth = 0;
    const Formula* cur = three.get();
    while (cur->kind() == FormulaKind::Everyone) {
        ++depth;
        cur = cur->lhs().get();
    }
    CHECK(depth == 3);
    CHECK(cur->kind() == FormulaKind::Atom);

    // nest(a+b) == nest(nest(b), a)
    FormulaPtr lhs = nest_everyone(base, 5);
    FormulaPtr rhs = nest_everyone(nest_everyone(base, 2), 3);
    CHECK(structurally_equal(*lhs, *rhs));
}

TEST_CASE("parse ∘ render is the identity on random ASTs") {
    Rng rng(777);
    for (int round = 0; round < 1200; ++round) {
        FormulaPtr f = random_any_formula(rng, rng.between(0, 7));
        std::string text = render(*f);
        ParseResult r = parse_formula(text);
        std::string diag = text + (r.error ? " :: " + r.error->message() : std::string());
        REQUIRE_MESSAGE(r.ok(), diag);
        CHECK_MESSAGE(structurally_equal(*f, *r.ast), text);
        CHECK(render(*r.ast) == text); // canonical text is a fixed point
    }
}

TEST_CASE("whitespace and redundant parentheses never change the parse") {
    Rng rng(778);
    for (int round = 0; round < 300; ++round) {
        FormulaPtr f = random_any_formula(rng, rng.between(0, 5));
        std::string canonical = render(*f);

        // Perturb: stretch existing separators (never inside a token) and
        // wrap the whole formula in extra parentheses.
        std::string noisy = "  ((";
        for (char c : canonical) {
            if (c == ' ' && rng.chance(0.5))
                noisy += " \t ";
            else
                noisy += c;
            if ((c == '(' || c == ')' || c == ']' || c == '~') && rng.chance(0.3)) noisy += "  ";
        }
        noisy += "))\n";

        ParseResult r = parse_formula(noisy);
        REQUIRE(r.ok());
        CHECK(structurally_equal(*f, *r.ast));
        CHECK(render(*r.ast) == canonical);
    }
}

TEST_CASE("reserved words cannot be atoms or agents") {
    CHECK_THROWS_AS(Formula::Atom("true"), DomainError);
    CHECK_THROWS_AS(Formula::Atom("K"), DomainError);
    CHECK_THROWS_AS(Formula::Knows("E", Formula::Atom("p")), DomainError);
    CHECK(is_valid_name("Ka"));
    CHECK(is_valid_name("_x1"));
    CHECK(!is_valid_name("1x"));
    CHECK(!is_valid_name(""));
    CHECK(!is_valid_name("C"));
    CHECK(must_parse("true")->kind() == FormulaKind::True);
    CHECK(must_parse("Ka")->kind() == FormulaKind::Atom);
}

TEST_CASE("arbitrary byte soup never crashes the parser") {
    Rng rng(779);
    const std::string alphabet = "KEC[]()!~&|<->, abpq_01\ttrue false$#\"\\";
    for (int round = 0; round < 2000; ++round) {
        std::string s;
        const std::uint32_t len = rng.below(40);
        for (std::uint32_t i = 0; i < len; ++i)
            s.push_back(alphabet[rng.below(static_cast<std::uint32_t>(alphabet.size()))]);
        ParseResult r = parse_formula(s);
        if (!r.ok()) {
            CHECK(r.error->offset <= s.size());
            CHECK(!r.error->expected.empty());
        } else {
            // anything accepted must round-trip
            CHECK(structurally_equal(*r.ast, *parse_formula(render(*r.ast)).ast));
        }
    }
}

TEST_CASE("deep but legal nesting parses; past the guard it fails cleanly") {
    std::string deep(9'998, '~');
    deep += "p";
    CHECK(parse_formula(deep).ok());

    std::string too_deep(50'000, '~');
    too_deep += "p";
    ParseResult r = parse_formula(too_deep);
    REQUIRE(!r.ok());
    CHECK(r.error->expected.find("deep") != std::string::npos);

    std::string parens = std::string(200, '(') + "p" + std::string(200, ')');
    CHECK(parse_formula(parens).ok());
    CHECK(!parse_formula(parens, 50).ok()); // custom guard
}
