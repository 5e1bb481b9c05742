#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqa/asp.hpp"
#include "cqa/constraints.hpp"
#include "cqa/relational.hpp"
#include "cqa/repair_oracle.hpp"
#include "cqa/repair_program.hpp"

// Runs the enumeration, repair-program and rewriting methods side by side.
namespace cqa::check {

enum class Method { Enumerate, Asp, Rewrite };

std::string method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

struct MethodResult {
    Method method = Method::Enumerate;
    bool ran = false;
    std::set<Tuple> answers;
    std::string note;
    double seconds = 0;
};

struct CrossCheckReport {
    std::vector<MethodResult> results;
    bool agreement = true;
    std::optional<std::size_t> repairs;
    std::optional<std::size_t> stable_models;
    std::optional<std::string> rewritten;

    std::string text(bool timing = false) const;
    nlohmann::ordered_json json(bool timing = false) const;
};

struct CrossCheckOptions {
    std::set<Method> methods{Method::Enumerate, Method::Asp, Method::Rewrite};
    oracle::OracleLimits oracle_limits;
    asp::Limits asp_limits;
};

/// Consistent answers by the cautious semantics of the repair program.
/// Returns the answers and the number of stable models.
std::pair<std::set<Tuple>, std::size_t> answers_via_program(const Instance& d, const std::vector<Constraint>& ics,
                                                            const repair::QuerySpec& q,
                                                            const asp::Limits& limits = {});

/// Guard and inconsistency errors propagate; an inapplicable rewriting is
/// reported as a note and excluded from the comparison.
CrossCheckReport cross_check(const Instance& d, const std::vector<Constraint>& ics, const repair::QuerySpec& q,
                             const CrossCheckOptions& options = {});

}  // namespace cqa::check
