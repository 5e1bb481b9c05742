#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cqa/lexer.hpp"
#include "cqa/relational.hpp"

namespace cqa {

struct Term {
    enum class Kind { Variable, Constant };
    Kind kind = Kind::Constant;
    std::string name;

    static Term var(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    bool is_variable() const { return kind == Kind::Variable; }
    std::string str() const;

    auto operator<=>(const Term&) const = default;
};

/// Non-ground predicate atom.
struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::string str() const;
    auto operator<=>(const Atom&) const = default;
};

enum class BuiltinOp { Eq, Neq };

struct Builtin {
    BuiltinOp op = BuiltinOp::Eq;
    Term lhs;
    Term rhs;

    Builtin negated() const { return {op == BuiltinOp::Eq ? BuiltinOp::Neq : BuiltinOp::Eq, lhs, rhs}; }
    std::string str() const;
    auto operator<=>(const Builtin&) const = default;
};

using Substitution = std::map<std::string, Constant>;

/// Instantiates a term/atom; throws ValidationError on an unbound variable.
Constant ground_term(const Term& t, const Substitution& s);
GroundAtom ground_atom(const Atom& a, const Substitution& s);
bool evaluate_builtin(const Builtin& b, const Substitution& s);

/// Extends `s` so that `pattern` matches `fact`; false on mismatch.
bool match_atom(const Atom& pattern, const GroundAtom& fact, Substitution& s);

void collect_variables(const Atom& a, std::vector<std::string>& out);
void collect_variables(const Builtin& b, std::vector<std::string>& out);
void collect_constants(const Atom& a, ConstantSet& out);
void collect_constants(const Builtin& b, ConstantSet& out);

std::string format_substitution(const Substitution& s);

namespace text {

Term parse_term(TokenStream& ts);
/// `name(t1,...,tn)` or a bare `name` (0-ary).
Atom parse_atom(TokenStream& ts);
/// True if the upcoming tokens form `term (=|!=) term`.
bool at_builtin(const TokenStream& ts);
Builtin parse_builtin(TokenStream& ts);

}  // namespace text

}  // namespace cqa
