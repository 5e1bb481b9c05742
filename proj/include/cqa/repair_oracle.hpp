#pragma once

#include <set>
#include <utility>
#include <vector>

#include "cqa/asp.hpp"
#include "cqa/constraints.hpp"
#include "cqa/relational.hpp"
#include "cqa/repair_program.hpp"

// Definition-level repairs and consistent answers; the ground truth the
// program-based and rewriting-based methods are checked against.
namespace cqa::oracle {

struct Repair {
    Instance instance;
    AtomSet deleted;
    AtomSet inserted;

    bool operator==(const Repair& o) const { return instance.atoms() == o.instance.atoms(); }
    bool operator<(const Repair& o) const { return instance.atoms() < o.instance.atoms(); }
};

struct OracleLimits {
    /// Bound on |D| when only deletions are needed.
    std::size_t max_deletion_candidates = 24;
    /// Bound on the Herbrand base when insertions may be needed.
    std::size_t max_herbrand_atoms = 20;
};

/// Every consistent instance whose symmetric difference with `d` is
/// subset-minimal. Candidates are subsets of `d` for denial-only constraint
/// sets and otherwise subsets of the Herbrand base restricted, position by
/// position, to the values of d and the constants that constraint heads can
/// copy or introduce there. Atoms outside it never occur in a repair.
std::vector<Repair> repairs_bruteforce(const Instance& d, const std::vector<Constraint>& ics,
                                       const OracleLimits& limits = {});

/// Pairs of tuples jointly violating some FD.
std::set<std::pair<GroundAtom, GroundAtom>> conflict_edges(const Instance& d, const std::vector<FD>& fds);

/// Repairs as the maximal independent sets of the conflict graph.
std::vector<Repair> repairs_fd_conflicts(const Instance& d, const std::vector<FD>& fds);

/// Ordinary answers of `q` over `d` used as the extensional database.
std::set<Tuple> evaluate_query(const Instance& d, const repair::QuerySpec& q, const asp::Limits& limits = {});

/// Answers returned by `q` on every repair.
std::set<Tuple> consistent_answers_enum(const Instance& d, const std::vector<Constraint>& ics,
                                        const repair::QuerySpec& q, const OracleLimits& limits = {},
                                        const asp::Limits& asp_limits = {});
std::set<Tuple> consistent_answers_over(const std::vector<Repair>& repairs, const repair::QuerySpec& q,
                                        const asp::Limits& asp_limits = {});

}  // namespace cqa::oracle
