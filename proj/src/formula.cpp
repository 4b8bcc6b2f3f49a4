#include "stobon/formula.hpp"

#include "stobon/errors.hpp"

#include <cctype>
#include <sstream>

namespace stobon {

namespace {

bool ident_shaped(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

void require_name(std::string_view name, const char* what) {
    if (!is_valid_name(name))
        throw DomainError(std::string(what) + " '" + std::string(name) +
                          "' is not a legal name (identifier, not reserved)");
}

} // namespace

bool is_valid_name(std::string_view name) {
    if (!ident_shaped(name)) return false;
    return name != "true" && name != "false" && name != "K" && name != "E" && name != "C";
}

Formula::~Formula() {
    std::vector<Ptr> pending;
    auto grab = [&pending](Ptr& child) {
        if (child && child.use_count() == 1) pending.push_back(std::move(child));
        child.reset();
    };
    grab(lhs_);
    grab(rhs_);
    while (!pending.empty()) {
        Ptr node = std::move(pending.back());
        pending.pop_back();
        auto* inner = const_cast<Formula*>(node.get());
        grab(inner->lhs_);
        grab(inner->rhs_);
        // node dies here with its children already detached
    }
}

FormulaPtr Formula::Atom(std::string name) {
    require_name(name, "atom");
    return Ptr(new Formula(FormulaKind::Atom, std::move(name), {}, nullptr, nullptr));
}

FormulaPtr Formula::True() {
    return Ptr(new Formula(FormulaKind::True, {}, {}, nullptr, nullptr));
}

FormulaPtr Formula::False() {
    return Ptr(new Formula(FormulaKind::False, {}, {}, nullptr, nullptr));
}

FormulaPtr Formula::Not(Ptr f) {
    return Ptr(new Formula(FormulaKind::Not, {}, {}, std::move(f), nullptr));
}

FormulaPtr Formula::And(Ptr f, Ptr g) {
    return Ptr(new Formula(FormulaKind::And, {}, {}, std::move(f), std::move(g)));
}

FormulaPtr Formula::Or(Ptr f, Ptr g) {
    return Ptr(new Formula(FormulaKind::Or, {}, {}, std::move(f), std::move(g)));
}

FormulaPtr Formula::Implies(Ptr f, Ptr g) {
    return Ptr(new Formula(FormulaKind::Implies, {}, {}, std::move(f), std::move(g)));
}

FormulaPtr Formula::Iff(Ptr f, Ptr g) {
    return Ptr(new Formula(FormulaKind::Iff, {}, {}, std::move(f), std::move(g)));
}

FormulaPtr Formula::Knows(std::string agent, Ptr f) {
    require_name(agent, "agent");
    return Ptr(new Formula(FormulaKind::Knows, std::move(agent), {}, std::move(f), nullptr));
}

FormulaPtr Formula::Everyone(std::vector<std::string> group, Ptr f) {
    for (const std::string& a : group) require_name(a, "agent");
    return Ptr(new Formula(FormulaKind::Everyone, {}, std::move(group), std::move(f), nullptr));
}

FormulaPtr Formula::Common(std::vector<std::string> group, Ptr f) {
    for (const std::string& a : group) require_name(a, "agent");
    return Ptr(new Formula(FormulaKind::Common, {}, std::move(group), std::move(f), nullptr));
}

FormulaPtr Formula::Announce(Ptr said, Ptr then) {
    return Ptr(new Formula(FormulaKind::Announce, {}, {}, std::move(said), std::move(then)));
}

bool structurally_equal(const Formula& a, const Formula& b) {
    if (&a == &b) return true;
    if (a.kind() != b.kind()) return false;
    if (a.name() != b.name()) return false;
    if (a.group() != b.group()) return false;
    const bool la = a.lhs() != nullptr, lb = b.lhs() != nullptr;
    const bool ra = a.rhs() != nullptr, rb = b.rhs() != nullptr;
    if (la != lb || ra != rb) return false;
    if (la && !structurally_equal(*a.lhs(), *b.lhs())) return false;
    if (ra && !structurally_equal(*a.rhs(), *b.rhs())) return false;
    return true;
}

namespace {

// Grammar levels: <-> is 1, -> is 2, | is 3, & is 4, prefix operators and
// leaves are 5. A node is parenthesized when its level is below the level
// its context requires.
int level_of(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    default: return 5;
    }
}

void render_into(const Formula& f, int min_level, std::ostringstream& os) {
    const bool parens = level_of(f) < min_level;
    if (parens) os << '(';
    switch (f.kind()) {
    case FormulaKind::Atom:
        os << f.name();
        break;
    case FormulaKind::True:
        os << "true";
        break;
    case FormulaKind::False:
        os << "false";
        break;
    case FormulaKind::Not:
        os << '~';
        render_into(*f.lhs(), 5, os);
        break;
    case FormulaKind::And:
        render_into(*f.lhs(), 4, os);
        os << " & ";
        render_into(*f.rhs(), 5, os);
        break;
    case FormulaKind::Or:
        render_into(*f.lhs(), 3, os);
        os << " | ";
        render_into(*f.rhs(), 4, os);
        break;
    case FormulaKind::Implies:
        render_into(*f.lhs(), 3, os);
        os << " -> ";
        render_into(*f.rhs(), 2, os);
        break;
    case FormulaKind::Iff:
        render_into(*f.lhs(), 1, os);
        os << " <-> ";
        render_into(*f.rhs(), 2, os);
        break;
    case FormulaKind::Knows:
        os << "K[" << f.name() << "] ";
        render_into(*f.lhs(), 5, os);
        break;
    case FormulaKind::Everyone:
    case FormulaKind::Common: {
        os << (f.kind() == FormulaKind::Everyone ? 'E' : 'C');
        if (!f.group().empty()) {
            os << '[';
            for (std::size_t i = 0; i < f.group().size(); ++i) {
                if (i != 0) os << ',';
                os << f.group()[i];
            }
            os << ']';
        }
        os << ' ';
        // "E [! g] h" would read the bracket as a group; parenthesize an
        // announcement operand when no group bracket separates them.
        const bool bracket_clash =
            f.group().empty() && f.lhs()->kind() == FormulaKind::Announce;
        if (bracket_clash) {
            os << '(';
            render_into(*f.lhs(), 1, os);
            os << ')';
        } else {
            render_into(*f.lhs(), 5, os);
        }
        break;
    }
    case FormulaKind::Announce:
        os << "[! ";
        render_into(*f.lhs(), 1, os);
        os << "] ";
        render_into(*f.rhs(), 5, os);
        break;
    }
    if (parens) os << ')';
}

} // namespace

std::string render(const Formula& f) {
    std::ostringstream os;
    render_into(f, 1, os);
    return os.str();
}

FormulaPtr nest_everyone(FormulaPtr base, std::uint32_t k, std::vector<std::string> group) {
    FormulaPtr out = std::move(base);
    for (std::uint32_t i = 0; i < k; ++i) out = Formula::Everyone(group, std::move(out));
    return out;
}

} // namespace stobon
