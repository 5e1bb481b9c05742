#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cqa/asp.hpp"
#include "cqa/constraints.hpp"
#include "cqa/relational.hpp"

namespace cqa::repair {

/// Generated predicate names for one base predicate P:
/// t = inserted, f = deleted, star = true or inserted, dstar = true in the repair.
struct AnnotatedNames {
    std::string t, f, star, dstar;
};

/// Maps every schema predicate P to `P_t`, `P_f`, `P_s`, `P_ds`. A generated
/// name that collides with a schema or reserved predicate gets a `__` prefix.
class AnnotationScheme {
public:
    AnnotationScheme() = default;
    explicit AnnotationScheme(const Schema& schema, const std::set<std::string>& reserved = {});

    const AnnotatedNames& of(std::string_view base) const;
    bool is_generated(std::string_view predicate) const;
    /// Base predicate whose dstar name is `predicate`, if any.
    std::optional<std::string> base_of_dstar(std::string_view predicate) const;
    std::set<std::string> dstar_predicates() const;
    std::set<std::string> generated() const;

private:
    std::map<std::string, AnnotatedNames, std::less<>> names_;
};

/// A Datalog query with negation; `answer_pred` occurs only in heads.
struct QuerySpec {
    asp::Program rules;
    std::string answer_pred = "Ans";
    std::size_t arity = 0;

    /// Predicates defined by the query's own rules.
    std::set<std::string> intensional() const { return rules.head_predicates(); }
};

/// Parses and validates a query program over `schema`.
QuerySpec parse_query(std::string_view text, const Schema& schema, const std::string& answer_pred = "Ans");

/// Throws ValidationError unless the query is non-recursive, stratified, keeps
/// `answer_pred` out of bodies and draws extensional predicates from the schema.
void validate_query(const QuerySpec& q, const Schema& schema);

/// Repair program split into the sections that `gen-program` prints.
struct RepairProgram {
    std::vector<std::string> sources;  // the constraints it was compiled from
    asp::Program repair_rules;
    asp::Program annotation_rules;
    asp::Program interpretation_rules;
    asp::Program program_constraints;

    asp::Program all() const;
    /// `all()` without program constraints.
    asp::Program without_constraints() const;
    std::string str(asp::Dialect dialect = asp::Dialect::Dlv) const;
};

struct GeneratorOptions {
    /// Emit t-annotation rules and program constraints even when every
    /// constraint is a denial.
    bool faithful_appendix = false;
};

/// General repair program for universal constraints: one rule per constraint
/// and per split of its head atoms into deleted/absent, plus annotation,
/// interpretation and coherence rules for every schema predicate.
RepairProgram gen_repair_program_general(const std::vector<UniversalConstraint>& ics, const Schema& schema,
                                         const AnnotationScheme& names, const GeneratorOptions& options = {});

/// Deletion-only program for FDs. Falls back to the general generator when a
/// predicate carries more than one FD.
RepairProgram gen_repair_program_fd(const std::vector<FD>& fds, const Schema& schema, const AnnotationScheme& names,
                                    const GeneratorOptions& options = {});

/// FD generator when every constraint is an FD or key, general otherwise.
RepairProgram gen_repair_program(const std::vector<Constraint>& ics, const Schema& schema,
                                 const AnnotationScheme& names, const GeneratorOptions& options = {});

/// Replaces each extensional predicate P in rule bodies by its dstar name.
QuerySpec star_query(const QuerySpec& q, const Schema& schema, const AnnotationScheme& names);

/// Facts of `d`, then the repair rules, then the (starred) query rules.
asp::Program assemble_cqa_program(const Instance& d, const asp::Program& repair, const QuerySpec& starred,
                                  const AnnotationScheme& names);

/// Reads the repaired instance off a stable model through the dstar atoms.
Instance repair_of_model(const asp::Interpretation& model, const Schema& schema, const AnnotationScheme& names);

}  // namespace cqa::repair
