#include "cqa/repair_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>

#include "cqa/error.hpp"

namespace cqa::oracle {

namespace {

using Mask = std::uint64_t;

/// Next mask with the same popcount (Gosper).
Mask next_same_popcount(Mask v) {
    Mask t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

/// Per-position value sets: the values of d at each position, closed under
/// the flow of values from body to head positions of the constraints.
std::map<std::pair<std::string, std::size_t>, ConstantSet> positional_domains(
    const Instance& d, const std::vector<UniversalConstraint>& ics) {
    std::map<std::pair<std::string, std::size_t>, ConstantSet> dom;
    for (const auto& p : d.schema().predicates())
        for (std::size_t i = 0; i < p.arity; ++i) dom[{p.name, i}];
    for (const auto& a : d)
        for (std::size_t i = 0; i < a.args.size(); ++i) dom[{a.predicate, i}].insert(a.args[i]);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& ic : ics) {
            for (const auto& h : ic.head_atoms) {
                for (std::size_t j = 0; j < h.args.size(); ++j) {
                    auto& target = dom[{h.predicate, j}];
                    const std::size_t before = target.size();
                    if (!h.args[j].is_variable()) {
                        target.insert(h.args[j].name);
                    } else {
                        for (const auto& b : ic.body)
                            for (std::size_t i = 0; i < b.args.size(); ++i)
                                if (b.args[i] == h.args[j]) {
                                    const auto& src = dom[{b.predicate, i}];
                                    target.insert(src.begin(), src.end());
                                }
                    }
                    changed |= target.size() != before;
                }
            }
        }
    }
    return dom;
}

AtomSet herbrand_base(const Schema& schema, const std::map<std::pair<std::string, std::size_t>, ConstantSet>& dom) {
    AtomSet out;
    for (const auto& p : schema.predicates()) {
        std::vector<std::vector<Constant>> values;
        bool empty = false;
        for (std::size_t i = 0; i < p.arity; ++i) {
            const auto& v = dom.at({p.name, i});
            values.emplace_back(v.begin(), v.end());
            empty |= v.empty();
        }
        if (empty) continue;
        std::vector<std::size_t> idx(p.arity, 0);
        while (true) {
            GroundAtom a{p.name, {}};
            for (std::size_t i = 0; i < p.arity; ++i) a.args.push_back(values[i][idx[i]]);
            out.insert(std::move(a));
            std::size_t k = p.arity;
            while (k > 0 && ++idx[k - 1] == values[k - 1].size()) idx[--k] = 0;
            if (k == 0) break;
        }
    }
    return out;
}

}  // namespace

std::vector<Repair> repairs_bruteforce(const Instance& d, const std::vector<Constraint>& ics,
                                       const OracleLimits& limits) {
    const auto universal = to_universal(ics);
    const bool deletions_only = denial_only(ics);

    // candidates differ from d by flipping a subset of `flippable`
    std::vector<GroundAtom> flippable;
    if (deletions_only) {
        flippable.assign(d.begin(), d.end());
        if (flippable.size() > limits.max_deletion_candidates) {
            throw GuardExceeded("instance has " + std::to_string(flippable.size()) + " atoms, limit is " +
                                std::to_string(limits.max_deletion_candidates));
        }
    } else {
        auto hb = herbrand_base(d.schema(), positional_domains(d, universal));
        if (hb.size() > limits.max_herbrand_atoms) {
            throw GuardExceeded("Herbrand base has " + std::to_string(hb.size()) + " atoms, limit is " +
                                std::to_string(limits.max_herbrand_atoms));
        }
        flippable.assign(hb.begin(), hb.end());
    }
    const std::size_t n = flippable.size();

    auto candidate = [&](Mask flips) {
        Instance out(d.schema());
        for (std::size_t i = 0; i < n; ++i) {
            bool in_d = d.contains(flippable[i]);
            bool flipped = (flips >> i) & 1;
            if (in_d != flipped) out.insert(flippable[i]);
        }
        return out;
    };

    // Collect consistent candidates by increasing |delta|; a candidate whose
    // delta contains an already accepted delta is not minimal.
    std::vector<Mask> minimal;
    const Mask end = Mask{1} << n;
    auto consider = [&](Mask m) {
        bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](Mask e) { return (e & m) == e; });
        if (!dominated && satisfies(candidate(m), universal)) minimal.push_back(m);
    };
    consider(0);
    for (std::size_t k = 1; k <= n; ++k) {
        for (Mask m = (Mask{1} << k) - 1; m < end; m = next_same_popcount(m)) consider(m);
    }

    std::vector<Repair> out;
    for (Mask m : minimal) {
        Instance inst = candidate(m);
        auto delta = instance_delta(d, inst);
        out.push_back(Repair{inst, delta.deleted, delta.inserted});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::pair<GroundAtom, GroundAtom>> conflict_edges(const Instance& d, const std::vector<FD>& fds) {
    std::set<std::pair<GroundAtom, GroundAtom>> out;
    for (const auto& fd : fds) {
        auto c = fd_to_constraint(fd);
        for (const auto& s : violations(d, c)) {
            auto a = ground_atom(c.body[0], s), b = ground_atom(c.body[1], s);
            if (b < a) std::swap(a, b);
            out.emplace(a, b);
        }
    }
    return out;
}

std::vector<Repair> repairs_fd_conflicts(const Instance& d, const std::vector<FD>& fds) {
    std::vector<GroundAtom> vertices(d.begin(), d.end());
    const std::size_t n = vertices.size();
    std::map<GroundAtom, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[vertices[i]] = i;
    std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : conflict_edges(d, fds)) {
        adjacent[index[a]][index[b]] = adjacent[index[b]][index[a]] = true;
    }

    // Bron-Kerbosch on the complement graph: maximal cliques there are the
    // maximal independent sets here.
    std::vector<std::vector<std::size_t>> sets;
    auto compatible = [&](std::size_t u, std::size_t v) { return u != v && !adjacent[u][v]; };
    std::function<void(std::vector<std::size_t>&, std::vector<std::size_t>, std::vector<std::size_t>)> expand =
        [&](std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
            if (p.empty() && x.empty()) {
                sets.push_back(r);
                return;
            }
            std::size_t pivot = p.empty() ? x.front() : p.front();
            std::vector<std::size_t> candidates;
            for (auto v : p)
                if (!compatible(pivot, v)) candidates.push_back(v);
            for (auto v : candidates) {
                std::vector<std::size_t> p2, x2;
                for (auto w : p)
                    if (compatible(v, w)) p2.push_back(w);
                for (auto w : x)
                    if (compatible(v, w)) x2.push_back(w);
                r.push_back(v);
                expand(r, p2, x2);
                r.pop_back();
                p.erase(std::find(p.begin(), p.end(), v));
                x.push_back(v);
            }
        };
    std::vector<std::size_t> all(n), r;
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    expand(r, all, {});

    std::vector<Repair> out;
    for (const auto& s : sets) {
        Instance inst(d.schema());
        for (auto v : s) inst.insert(vertices[v]);
        auto delta = instance_delta(d, inst);
        out.push_back(Repair{inst, delta.deleted, delta.inserted});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<Tuple> evaluate_query(const Instance& d, const repair::QuerySpec& q, const asp::Limits& limits) {
    asp::Program p = asp::facts_program(d);
    p.append(q.rules);
    auto models = asp::stable_models(p, limits);
    if (models.size() != 1) {
        throw ValidationError("query evaluation produced " + std::to_string(models.size()) + " models");
    }
    return asp::extension(models.front(), q.answer_pred);
}

std::set<Tuple> consistent_answers_over(const std::vector<Repair>& repairs, const repair::QuerySpec& q,
                                        const asp::Limits& asp_limits) {
    if (repairs.empty()) throw ValidationError("no repairs");
    std::set<Tuple> out = evaluate_query(repairs.front().instance, q, asp_limits);
    for (std::size_t i = 1; i < repairs.size() && !out.empty(); ++i) {
        auto answers = evaluate_query(repairs[i].instance, q, asp_limits);
        std::set<Tuple> kept;
        std::set_intersection(out.begin(), out.end(), answers.begin(), answers.end(),
                              std::inserter(kept, kept.end()));
        out = std::move(kept);
    }
    return out;
}

std::set<Tuple> consistent_answers_enum(const Instance& d, const std::vector<Constraint>& ics,
                                        const repair::QuerySpec& q, const OracleLimits& limits,
                                        const asp::Limits& asp_limits) {
    return consistent_answers_over(repairs_bruteforce(d, ics, limits), q, asp_limits);
}

}  // namespace cqa::oracle
