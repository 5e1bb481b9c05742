#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cqa/relational.hpp"
#include "cqa/term.hpp"

// Disjunctive Datalog with default negation under the stable-model
// semantics, evaluated by grounding over the Herbrand universe.
namespace cqa::asp {

enum class Dialect { Dlv, Clingo };

/// Body literal. Built-ins are never negated: `not X = Y` is stored as `X != Y`.
struct Literal {
    bool negated = false;
    std::variant<Atom, Builtin> content;

    static Literal pos(Atom a) { return {false, std::move(a)}; }
    static Literal neg(Atom a) { return {true, std::move(a)}; }
    static Literal builtin(Builtin b) { return {false, std::move(b)}; }

    bool is_builtin() const { return std::holds_alternative<Builtin>(content); }
    const Atom& atom() const { return std::get<Atom>(content); }
    const Builtin& as_builtin() const { return std::get<Builtin>(content); }
    std::string str() const;
    auto operator<=>(const Literal&) const = default;
};

/// Head disjunction <- body. An empty head is a program constraint.
struct Rule {
    std::vector<Atom> head;
    std::vector<Literal> body;

    bool is_constraint() const { return head.empty(); }
    bool is_fact() const { return body.empty(); }
    std::vector<std::string> variables() const;
    std::string str(Dialect dialect = Dialect::Dlv) const;
    auto operator<=>(const Rule&) const = default;
};

using Signature = std::map<std::string, std::size_t>;

struct Program {
    std::vector<Rule> rules;

    void append(const Program& other) { rules.insert(rules.end(), other.rules.begin(), other.rules.end()); }
    ConstantSet constants() const;
    /// Predicate name -> arity; throws ValidationError on inconsistent use.
    Signature signature() const;
    /// Predicates occurring in some rule head.
    std::set<std::string> head_predicates() const;
    std::string str(Dialect dialect = Dialect::Dlv) const;
    bool operator==(const Program&) const = default;
};

/// Throws ValidationError naming the first variable that breaks safety.
void check_safety(const Rule& rule);

Program parse_program(std::string_view text);
Program facts_program(const Instance& instance);

// ---------------------------------------------------------------- grounding

using AtomId = std::uint32_t;

class AtomTable {
public:
    AtomId intern(const GroundAtom& atom);
    std::optional<AtomId> find(const GroundAtom& atom) const;
    const GroundAtom& atom(AtomId id) const { return atoms_[id]; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<GroundAtom> atoms_;
    std::map<GroundAtom, AtomId> index_;
};

struct GroundRule {
    std::vector<AtomId> head;
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;

    auto operator<=>(const GroundRule&) const = default;
};

/// Variable-free program; built-ins are already evaluated away.
struct GroundProgram {
    AtomTable atoms;
    std::vector<GroundRule> rules;
    ConstantSet domain;
    Signature signature;

    bool is_positive() const;
    /// Every atom over `signature` and `domain`.
    AtomSet herbrand_base() const;
    std::string str(const GroundRule& rule, Dialect dialect = Dialect::Dlv) const;
    std::string str(Dialect dialect = Dialect::Dlv) const;
};

using Interpretation = AtomSet;

struct Limits {
    std::size_t max_ground_rules = 1'000'000;
    std::size_t max_undetermined_atoms = 4096;
    std::size_t max_search_nodes = std::size_t{1} << 24;
};

GroundProgram ground(const Program& program, const ConstantSet& domain, const Limits& limits = {});

bool is_model(const GroundProgram& gp, const Interpretation& m);
GroundProgram reduct(const GroundProgram& gp, const Interpretation& s);

/// All subset-minimal models of a negation-free ground program.
std::vector<Interpretation> minimal_models(const GroundProgram& gp, const Limits& limits = {});

std::vector<Interpretation> stable_models(const GroundProgram& gp, const Limits& limits = {});
/// Grounds over the program's own constants; models in canonical order.
std::vector<Interpretation> stable_models(const Program& program, const Limits& limits = {});

/// Atoms that some ground rule could derive when negation is ignored.
/// Every stable model is a subset of this set.
std::set<AtomId> possibly_true_atoms(const GroundProgram& gp);

std::set<Tuple> extension(const Interpretation& m, std::string_view predicate);
Interpretation project(const Interpretation& m, const std::set<std::string>& predicates);
std::string format_interpretation(const Interpretation& m);

/// Tuples of `query_pred` true in every stable model. Throws
/// InconsistentProgram when there is no stable model.
std::set<Tuple> cautious_answers(const Program& program, const std::string& query_pred, const Limits& limits = {});
std::set<Tuple> cautious_answers(const std::vector<Interpretation>& models, const std::string& query_pred);

// ------------------------------------------------------------------ analyses

struct Stratification {
    std::map<std::string, std::size_t> level;
    std::vector<std::set<std::string>> strata;  // strata[i] = predicates at level i
};

/// Minimal-level stratification: extensional predicates sit at level 0, every
/// other predicate at level >= 1. When `extensional` is absent, predicates
/// that never head a non-fact rule are extensional. Empty iff none exists.
std::optional<Stratification> stratification(const Program& program,
                                             const std::optional<std::set<std::string>>& extensional = std::nullopt);

/// Predicate-level head-cycle-freeness. Conservative: a `true` answer
/// implies every grounding is head-cycle free.
bool is_hcf(const Program& program);
/// Exact check on the ground positive dependency graph.
bool is_hcf(const GroundProgram& gp);

}  // namespace cqa::asp
