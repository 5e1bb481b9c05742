#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cqa {

/// Constants are uninterpreted symbols under the unique-names assumption.
using Constant = std::string;
using Tuple = std::vector<Constant>;
using ConstantSet = std::set<Constant>;

struct PredicateSig {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const PredicateSig&) const = default;
};

class Schema {
public:
    Schema() = default;
    Schema(std::initializer_list<PredicateSig> preds);

    /// Adds a predicate; re-adding with the same arity is a no-op, a
    /// different arity throws ValidationError.
    void add(const PredicateSig& sig);
    void declare_constant(const Constant& c) { declared_constants_.insert(c); }

    bool contains(std::string_view name) const;
    std::size_t arity(std::string_view name) const;
    std::vector<PredicateSig> predicates() const;
    const ConstantSet& declared_constants() const { return declared_constants_; }
    bool empty() const { return arities_.empty(); }

    bool operator==(const Schema&) const = default;

private:
    std::map<std::string, std::size_t, std::less<>> arities_;
    ConstantSet declared_constants_;
};

struct GroundAtom {
    std::string predicate;
    Tuple args;

    auto operator<=>(const GroundAtom&) const = default;
    std::string str() const;
};

using AtomSet = std::set<GroundAtom>;

/// A finite set of ground atoms over a schema. Iteration is canonical:
/// lexicographic by (predicate name, args).
class Instance {
public:
    Instance() = default;
    explicit Instance(Schema schema) : schema_(std::move(schema)) {}
    Instance(Schema schema, const AtomSet& atoms);

    /// Throws ValidationError if the predicate is unknown or the arity is wrong.
    void insert(const GroundAtom& atom);
    bool contains(const GroundAtom& atom) const { return atoms_.count(atom) != 0; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    const Schema& schema() const { return schema_; }
    const AtomSet& atoms() const { return atoms_; }
    auto begin() const { return atoms_.begin(); }
    auto end() const { return atoms_.end(); }

    std::set<Tuple> extension(std::string_view predicate) const;

    bool operator==(const Instance& other) const { return atoms_ == other.atoms_; }
    bool operator<(const Instance& other) const { return atoms_ < other.atoms_; }

private:
    Schema schema_;
    AtomSet atoms_;
};

/// Parses `pred(c1,...,cn).` facts and `domain c1, ..., cn.` declarations of
/// constants outside the active domain. With a schema every predicate must be
/// declared; without one the schema is inferred from the facts.
Instance parse_fact_file(std::string_view text, const std::optional<Schema>& schema = std::nullopt);

/// Canonical printer; `parse_fact_file(print_instance(i)) == i`.
std::string print_instance(const Instance& instance);

/// Reads an RFC-4180 CSV document; each row becomes one atom of `predicate`.
std::vector<GroundAtom> read_csv_relation(std::string_view text, const std::string& predicate,
                                          bool has_header);

ConstantSet active_domain(const Instance& instance, const ConstantSet& extra = {});

struct InstanceDelta {
    AtomSet deleted;
    AtomSet inserted;

    AtomSet symmetric() const;
    bool operator==(const InstanceDelta&) const = default;
};

InstanceDelta instance_delta(const Instance& d, const Instance& d_prime);

std::string format_tuple(const Tuple& t);

}  // namespace cqa
