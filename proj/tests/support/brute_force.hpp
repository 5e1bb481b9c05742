#pragma once

// Subset-enumeration oracles written straight from the definitions. They share
// only the ground program data structure with the library.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "cqa/asp.hpp"
#include "cqa/constraints.hpp"
#include "cqa/relational.hpp"

namespace bf {

using Ids = std::set<cqa::asp::AtomId>;

inline std::vector<cqa::asp::AtomId> all_atoms(const cqa::asp::GroundProgram& gp) {
    std::vector<cqa::asp::AtomId> out;
    for (cqa::asp::AtomId i = 0; i < gp.atoms.size(); ++i) out.push_back(i);
    return out;
}

inline bool satisfies_rule(const cqa::asp::GroundRule& r, const Ids& m) {
    for (auto a : r.pos)
        if (!m.count(a)) return true;
    for (auto a : r.neg)
        if (m.count(a)) return true;
    for (auto a : r.head)
        if (m.count(a)) return true;
    return false;
}

/// Rules whose negative body is disjoint from `s`, with the negative body dropped.
inline std::vector<cqa::asp::GroundRule> reduct(const cqa::asp::GroundProgram& gp, const Ids& s) {
    std::vector<cqa::asp::GroundRule> out;
    for (const auto& r : gp.rules) {
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](auto a) { return s.count(a) > 0; })) continue;
        out.push_back({r.head, r.pos, {}});
    }
    return out;
}

inline bool is_model(const std::vector<cqa::asp::GroundRule>& rules, const Ids& m) {
    return std::all_of(rules.begin(), rules.end(), [&](const auto& r) { return satisfies_rule(r, m); });
}

inline Ids from_mask(const std::vector<cqa::asp::AtomId>& atoms, std::uint64_t mask) {
    Ids out;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if ((mask >> i) & 1) out.insert(atoms[i]);
    return out;
}

inline void require_small(std::size_t n) {
    if (n > 20) throw std::runtime_error("brute-force oracle limited to 20 atoms");
}

/// Subset-minimal models of the given rules over `atoms`.
inline std::vector<Ids> minimal_models(const std::vector<cqa::asp::GroundRule>& rules,
                                       const std::vector<cqa::asp::AtomId>& atoms) {
    require_small(atoms.size());
    std::vector<Ids> models;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
        Ids m = from_mask(atoms, mask);
        if (is_model(rules, m)) models.push_back(m);
    }
    std::vector<Ids> out;
    for (const auto& m : models) {
        bool minimal = std::none_of(models.begin(), models.end(), [&](const Ids& o) {
            return o.size() < m.size() && std::includes(m.begin(), m.end(), o.begin(), o.end());
        });
        if (minimal) out.push_back(m);
    }
    return out;
}

/// S is stable iff S is a minimal model of the reduct of the program by S.
inline std::vector<Ids> stable_models(const cqa::asp::GroundProgram& gp) {
    auto atoms = all_atoms(gp);
    require_small(atoms.size());
    std::vector<Ids> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
        Ids s = from_mask(atoms, mask);
        auto red = reduct(gp, s);
        if (!is_model(red, s)) continue;
        bool minimal = true;
        // proper subsets of s
        std::vector<cqa::asp::AtomId> members(s.begin(), s.end());
        for (std::uint64_t sub = 0; sub + 1 < (std::uint64_t{1} << members.size()) && minimal; ++sub) {
            if (is_model(red, from_mask(members, sub))) minimal = false;
        }
        if (minimal) out.push_back(s);
    }
    return out;
}

inline cqa::AtomSet to_atoms(const cqa::asp::GroundProgram& gp, const Ids& ids) {
    cqa::AtomSet out;
    for (auto i : ids) out.insert(gp.atoms.atom(i));
    return out;
}

/// Repairs of a denial-only constraint set: maximal consistent subsets of d.
inline std::set<cqa::AtomSet> deletion_repairs(const cqa::Instance& d,
                                               const std::vector<cqa::UniversalConstraint>& ics) {
    std::vector<cqa::GroundAtom> atoms(d.begin(), d.end());
    require_small(atoms.size());
    std::vector<cqa::AtomSet> consistent;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
        cqa::Instance c(d.schema());
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if ((mask >> i) & 1) c.insert(atoms[i]);
        if (cqa::satisfies(c, ics)) consistent.push_back(c.atoms());
    }
    std::set<cqa::AtomSet> out;
    for (const auto& c : consistent) {
        bool maximal = std::none_of(consistent.begin(), consistent.end(), [&](const cqa::AtomSet& o) {
            return o.size() > c.size() && std::includes(o.begin(), o.end(), c.begin(), c.end());
        });
        if (maximal) out.insert(c);
    }
    return out;
}

/// Repairs over the full Herbrand base of `domain`: consistent instances with
/// a subset-minimal symmetric difference to d.
inline std::set<cqa::AtomSet> general_repairs(const cqa::Instance& d, const std::vector<cqa::UniversalConstraint>& ics,
                                              const cqa::ConstantSet& domain) {
    std::vector<cqa::GroundAtom> hb;
    std::vector<cqa::Constant> dom(domain.begin(), domain.end());
    for (const auto& sig : d.schema().predicates()) {
        if (dom.empty() && sig.arity > 0) continue;
        std::vector<std::size_t> idx(sig.arity, 0);
        while (true) {
            cqa::Tuple t;
            for (auto i : idx) t.push_back(dom[i]);
            hb.push_back({sig.name, t});
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == dom.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    require_small(hb.size());
    std::vector<std::pair<cqa::AtomSet, cqa::AtomSet>> consistent;  // instance, delta
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << hb.size()); ++mask) {
        cqa::Instance c(d.schema());
        for (std::size_t i = 0; i < hb.size(); ++i)
            if ((mask >> i) & 1) c.insert(hb[i]);
        if (!cqa::satisfies(c, ics)) continue;
        consistent.emplace_back(c.atoms(), cqa::instance_delta(d, c).symmetric());
    }
    std::stable_sort(consistent.begin(), consistent.end(),
                     [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });
    std::vector<cqa::AtomSet> minimal_deltas;
    std::set<cqa::AtomSet> out;
    for (const auto& [inst, delta] : consistent) {
        bool dominated = std::any_of(minimal_deltas.begin(), minimal_deltas.end(), [&](const cqa::AtomSet& m) {
            return m.size() < delta.size() && std::includes(delta.begin(), delta.end(), m.begin(), m.end());
        });
        if (dominated) continue;
        minimal_deltas.push_back(delta);
        out.insert(inst);
    }
    return out;
}

}  // namespace bf
