#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "cqa/asp.hpp"
#include "cqa/constraints.hpp"
#include "cqa/relational.hpp"
#include "cqa/repair_program.hpp"

// Seeded generators for the randomized agreement checks.
namespace cqa::gen {

using Rng = std::mt19937_64;

struct Scenario {
    Instance instance;
    std::vector<Constraint> ics;
    std::vector<repair::QuerySpec> queries;
};

struct FdScenarioConfig {
    std::size_t max_domain = 4;
    std::size_t max_atoms = 6;
    std::size_t max_predicates = 2;
};

/// 1-2 predicates of arity 2 or 3, one FD each, and atomic queries.
Scenario random_fd_scenario(Rng& rng, const FdScenarioConfig& config = {});

/// P(x) -> Q(x) over binary or unary P, Q with a Herbrand base of at most
/// `max_herbrand` atoms, plus queries that read both predicates.
Scenario random_inclusion_scenario(Rng& rng, std::size_t max_herbrand = 16);

struct ProgramConfig {
    std::size_t max_rules = 6;
    std::size_t max_body = 3;
    std::size_t max_head = 2;
};

/// Safe disjunctive program with default negation over at most eight ground atoms.
asp::Program random_program(Rng& rng, const ProgramConfig& config = {});

/// `count` constants a, b, c, ... (then c<i>).
std::vector<Constant> constants(std::size_t count);

}  // namespace cqa::gen
