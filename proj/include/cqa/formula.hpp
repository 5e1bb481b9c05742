#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cqa/relational.hpp"
#include "cqa/term.hpp"

// First-order formulas with a bounded second-order existential prefix, and
// their evaluation over finite structures.
namespace cqa::logic {

enum class NodeKind { Atom, Eq, Neq, Bot, Top, Not, And, Or, Implies, Iff, Forall, Exists, Exists2 };

/// Predicate variable of an `exists2` prefix. When `bound` is set the
/// variable ranges over subsets of that predicate's extension.
struct PredVar {
    std::string name;
    std::size_t arity = 0;
    std::optional<std::string> bound;
    auto operator<=>(const PredVar&) const = default;
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Top;
    std::string predicate;            // Atom
    std::vector<Term> args;           // Atom; Eq/Neq use two entries
    std::vector<Formula> children;    // connectives and quantifier bodies
    std::vector<std::string> vars;    // Forall / Exists
    std::vector<PredVar> pred_vars;   // Exists2
};

Formula atom(std::string predicate, std::vector<Term> args);
Formula atom(const Atom& a);
Formula eq(Term lhs, Term rhs);
Formula neq(Term lhs, Term rhs);
Formula bot();
Formula top();
Formula neg(Formula f);
/// n-ary conjunction; an empty list is `top`, a singleton is its element.
Formula conj(std::vector<Formula> fs);
/// n-ary disjunction; an empty list is `bot`, a singleton is its element.
Formula disj(std::vector<Formula> fs);
Formula implies(Formula lhs, Formula rhs);
Formula iff(Formula lhs, Formula rhs);
/// Quantifiers with an empty variable list return the body unchanged.
Formula forall(std::vector<std::string> vars, Formula body);
Formula exists(std::vector<std::string> vars, Formula body);
Formula exists2(std::vector<PredVar> vars, Formula body);

bool equal(const Formula& a, const Formula& b);

/// Variables `X`, `Y`, `Z`, `W` for small arities, `X1..Xn` otherwise.
std::vector<std::string> standard_variables(std::size_t n);
std::vector<Term> as_terms(const std::vector<std::string>& vars);

std::set<std::string> free_variables(const Formula& f);
/// Predicate symbols with arities, excluding predicate variables bound inside.
std::map<std::string, std::size_t> predicates(const Formula& f);

/// Herbrand-style finite structure. Every predicate a formula mentions must
/// have an entry, possibly empty.
struct FiniteStructure {
    ConstantSet domain;
    std::map<std::string, std::set<Tuple>> extensions;

    static FiniteStructure from_instance(const Instance& d, const ConstantSet& extra_domain = {});
    void declare(const std::string& predicate) { extensions[predicate]; }
    bool holds(const std::string& predicate, const Tuple& t) const;
};

struct EvalLimits {
    /// Bound on the total number of bits enumerated by one `exists2`.
    std::size_t max_so_bits = 24;
};

/// Tarskian truth over `s`; quantifiers range over `s.domain`.
bool eval(const FiniteStructure& s, const Formula& f, const Substitution& env = {}, const EvalLimits& limits = {});

enum class Notation { Ascii, Unicode };

std::string print(const Formula& f, Notation notation = Notation::Ascii);
Formula parse_formula(std::string_view text);

}  // namespace cqa::logic
