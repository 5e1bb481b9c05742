#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cqa/constraints.hpp"
#include "cqa/formula.hpp"
#include "cqa/relational.hpp"
#include "cqa/repair_program.hpp"
#include "cqa/theories.hpp"

// First-order consistent answers for atomic queries under FDs.
namespace cqa::rewrite {

struct RewriteResult {
    logic::Formula rewritten;
    /// Answer variables, in the order of the query head.
    std::vector<std::string> free_variables;
    bool applicable = false;
    std::string reason;
    /// One line per negative conjunct naming the FD that produced it.
    std::vector<std::string> explanation;
};

/// R(x) & ~exists z (R(x') & z != x_rhs) for each FD on R, where x' agrees
/// with x on the FD's left-hand side and has fresh variables elsewhere.
RewriteResult rewrite_atomic(const std::vector<FD>& fds, const Atom& query_atom,
                             const std::vector<std::string>& answer_vars);

/// Rewriting of a single-rule, single-atom, projection-free query; any other
/// query yields `applicable == false` with a reason.
RewriteResult rewrite_query(const repair::QuerySpec& q, const std::vector<FD>& fds);

/// Evaluates the rewriting on `d`. Throws ValidationError when it does not apply.
std::set<Tuple> answers_via_rewrite(const Instance& d, const std::vector<FD>& fds, const repair::QuerySpec& q);

/// Completion of each FD predicate and of its dstar predicate, the deletion
/// disjunction per conflict, and the surviving-witness condition for every
/// deleted tuple. Throws ValidationError on two FDs for one predicate.
logic::Theory prop4_theory(const std::vector<FD>& fds, const Instance& d);

/// Models of prop4_theory with P_f ranging over subsets of d and P_ds
/// determined by P and P_f.
std::vector<logic::FiniteStructure> prop4_models(const std::vector<FD>& fds, const Instance& d,
                                                 const logic::BoundedModelLimits& limits = {});

}  // namespace cqa::rewrite
