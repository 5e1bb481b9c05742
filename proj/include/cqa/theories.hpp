#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqa/asp.hpp"
#include "cqa/constraints.hpp"
#include "cqa/formula.hpp"
#include "cqa/relational.hpp"

// Compilers from instances and programs to classical theories.
namespace cqa::logic {

struct TheoryEntry {
    std::string name;
    std::string tag;
    Formula formula;
};

struct Theory {
    std::vector<TheoryEntry> entries;
    std::vector<std::string> notes;

    /// Throws ValidationError on a duplicate name.
    void add(std::string name, std::string tag, Formula f);
    void append(const Theory& other);
    const TheoryEntry* find(std::string_view name) const;
    Formula conjunction() const;
};

/// One `name [tag] := formula .` line per entry, notes as `%` comments.
std::string emit_theory(const Theory& t, Notation notation = Notation::Ascii);
Theory parse_theory(std::string_view text);

/// forall x (P(x) <-> x = a1 | ... | x = an).
Formula completion(const std::string& predicate, std::size_t arity, const std::set<Tuple>& tuples);

/// Domain closure, unique names and predicate completion for `d`.
Theory reiter_theory(const Instance& d);

Formula psi_of_rule(const asp::Rule& rule);
/// Conjunction of universal closures of body -> head, one per rule.
Formula psi_of_program(const asp::Program& program);

/// Renames predicate symbols, leaving the rest of the formula untouched.
Formula rename_predicates(const Formula& f, const std::map<std::string, std::string>& renaming);

/// The circle transform: predicates in `varmap` become predicate variables and
/// implications keep a copy of their original. With `simplify_negative`,
/// negated subformulas are left as they are.
Formula circle_transform(const Formula& f, const std::map<std::string, std::string>& varmap,
                         bool simplify_negative = false);

struct PhiOptions {
    /// Predicates to circumscribe; all program predicates when absent.
    std::optional<std::vector<std::string>> circumscribed;
    bool simplify_negative = true;
};

/// psi & constraints & ~exists2 X (X < P & psi-circle(X)).
Formula phi_stable(const asp::Program& program, const PhiOptions& options = {});

struct SoCheckLimits {
    std::size_t max_atoms = 16;
};

/// Whether `candidate` is a Herbrand model of phi_stable(program).
bool check_stable_so(const asp::Program& program, const asp::Interpretation& candidate,
                     const SoCheckLimits& limits = {});

enum class Preorder { Parallel, Prioritized };

/// Circumscription of `minimized` in `sigma` with `varying` predicates
/// allowed to change. Minimized variables are named `U_<P>`, varying ones
/// `V_<Q>`; `varying_bounds` restricts a varying variable to the extension
/// of the named predicate.
Formula circumscribe(const Formula& sigma, const std::vector<PredicateSig>& minimized,
                     const std::vector<PredicateSig>& varying, Preorder preorder = Preorder::Parallel,
                     const std::map<std::string, std::string>& varying_bounds = {});

struct ClosureOptions {
    /// Include domain closure and unique names explicitly.
    bool explicit_una = false;
};

/// Completions of the database and of the star/dstar annotations, coherence of
/// t and f, and the parallel circumscription of every P_t, P_f over the
/// facts, star rules and repair rules with P_s varying.
Theory prop2_closure(const std::vector<Constraint>& ics, const Instance& d, const ClosureOptions& options = {});

struct BoundedModelLimits {
    std::size_t max_free_atoms = 16;
    std::size_t max_so_bits = 24;
};

/// Models of prop2_closure over the active domain: P fixed to d, P_t and P_f
/// ranging over atoms the repair program could derive, P_s and P_ds given by
/// their completions.
std::vector<FiniteStructure> prop2_models(const std::vector<Constraint>& ics, const Instance& d,
                                          const BoundedModelLimits& limits = {});

/// Reads an instance off a structure through the dstar predicates.
Instance dstar_instance(const FiniteStructure& s, const Schema& schema);

}  // namespace cqa::logic
