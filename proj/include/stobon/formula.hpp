#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace stobon {

enum class FormulaKind : std::uint8_t {
    Atom,
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Knows,
    Everyone,
    Common,
    Announce,
};

/// Immutable epistemic formula node. Agent and group names stay unresolved
/// in the AST; they are looked up against a model's agent table when the
/// formula is evaluated. Subtrees may be shared (never cyclic).
class Formula {
public:
    using Ptr = std::shared_ptr<const Formula>;

    FormulaKind kind() const { return kind_; }

    /// Atom name, or the agent name of a Knows node.
    const std::string& name() const { return name_; }

    /// Group of an Everyone/Common node; empty means "all agents".
    const std::vector<std::string>& group() const { return group_; }

    /// Left child; the announced formula of an Announce node.
    const Ptr& lhs() const { return lhs_; }
    /// Right child; the continuation of an Announce node.
    const Ptr& rhs() const { return rhs_; }

    static Ptr Atom(std::string name);
    static Ptr True();
    static Ptr False();
    static Ptr Not(Ptr f);
    static Ptr And(Ptr f, Ptr g);
    static Ptr Or(Ptr f, Ptr g);
    static Ptr Implies(Ptr f, Ptr g);
    static Ptr Iff(Ptr f, Ptr g);
    static Ptr Knows(std::string agent, Ptr f);
    static Ptr Everyone(std::vector<std::string> group, Ptr f);
    static Ptr Common(std::vector<std::string> group, Ptr f);
    static Ptr Announce(Ptr said, Ptr then);

    /// Dismantles solely-owned subtrees iteratively so that destroying a
    /// deep formula does not recurse.
    ~Formula();

private:
    Formula(FormulaKind kind, std::string name, std::vector<std::string> group, Ptr lhs, Ptr rhs)
        : kind_(kind), name_(std::move(name)), group_(std::move(group)),
          lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

    FormulaKind kind_;
    std::string name_;
    std::vector<std::string> group_;
    Ptr lhs_;
    Ptr rhs_;
};

using FormulaPtr = Formula::Ptr;

bool structurally_equal(const Formula& a, const Formula& b);

/// Canonical text with minimal parentheses; parse(render(f)) == f.
std::string render(const Formula& f);

/// k nested applications of Everyone(group, .) around base. An empty group
/// means all agents of whatever model the result is evaluated on.
FormulaPtr nest_everyone(FormulaPtr base, std::uint32_t k, std::vector<std::string> group = {});

/// True for names usable as atoms/agents in the concrete syntax:
/// identifier shape and not one of the reserved words (true, false, K, E, C).
bool is_valid_name(std::string_view name);

} // namespace stobon
