#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cqa/relational.hpp"
#include "cqa/term.hpp"

namespace cqa {

/// forall x. P1(x1) & ... & Pm(xm) -> Q1(y1) | ... | Qn(yn) | phi
/// where phi is a disjunction of (in)equalities. A denial has no head atoms
/// and an empty phi (false).
struct UniversalConstraint {
    std::vector<Atom> body;
    std::vector<Atom> head_atoms;
    std::vector<Builtin> head_builtin;

    bool is_denial() const { return head_atoms.empty(); }
    std::vector<std::string> variables() const;
    ConstantSet constants() const;
    std::string str() const;

    auto operator<=>(const UniversalConstraint&) const = default;
};

/// lhs -> rhs over 1-based positions of `predicate`.
struct FD {
    PredicateSig predicate;
    std::vector<std::size_t> lhs;  // sorted, nonempty
    std::size_t rhs = 0;

    std::string str() const;
    auto operator<=>(const FD&) const = default;
};

struct KeyConstraint {
    PredicateSig predicate;
    std::vector<std::size_t> key;  // sorted, nonempty

    /// One FD key -> p for every non-key position p.
    std::vector<FD> expand() const;
    std::string str() const;
    auto operator<=>(const KeyConstraint&) const = default;
};

using Constraint = std::variant<UniversalConstraint, FD, KeyConstraint>;

/// Parses the constraint DSL against a fixed schema.
std::vector<Constraint> parse_constraints(std::string_view text, const Schema& schema);

/// Same, but unknown predicates are added to `schema` (arity inferred).
std::vector<Constraint> parse_constraints_extending(std::string_view text, Schema& schema);

UniversalConstraint fd_to_constraint(const FD& fd);

/// Universal form of any constraint; keys yield one constraint per FD.
std::vector<UniversalConstraint> to_universal(const Constraint& c);
std::vector<UniversalConstraint> to_universal(const std::vector<Constraint>& cs);

/// All FDs if every constraint is an FD or key; keys are expanded.
std::optional<std::vector<FD>> as_fds(const std::vector<Constraint>& cs);

bool denial_only(const std::vector<Constraint>& cs);
ConstantSet constraint_constants(const std::vector<Constraint>& cs);
std::string constraint_str(const Constraint& c);

/// Assignments to body variables that witness a violation of `c` in `instance`.
std::set<Substitution> violations(const Instance& instance, const UniversalConstraint& c);

bool satisfies(const Instance& instance, const std::vector<UniversalConstraint>& cs);

}  // namespace cqa
