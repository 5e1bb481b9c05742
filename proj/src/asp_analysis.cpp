#include <algorithm>
#include <functional>
#include <numeric>

#include "cqa/asp.hpp"

namespace cqa::asp {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

/// Tarjan SCC; returns component index per node and whether it is cyclic.
struct Components {
    std::vector<std::size_t> component;
    std::vector<bool> cyclic;
};

Components strongly_connected(const std::vector<std::set<std::size_t>>& edges) {
    const std::size_t n = edges.size();
    Components out;
    out.component.assign(n, SIZE_MAX);
    std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    std::size_t counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : edges[v]) {
            if (index[w] == SIZE_MAX) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t id = out.cyclic.size();
            std::vector<std::size_t> members;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                out.component[w] = id;
                members.push_back(w);
            } while (w != v);
            out.cyclic.push_back(members.size() > 1 || edges[v].count(v) != 0);
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] == SIZE_MAX) visit(v);
    return out;
}

}  // namespace

std::optional<Stratification> stratification(const Program& program,
                                             const std::optional<std::set<std::string>>& extensional) {
    const Signature sig = program.signature();
    std::vector<std::string> names;
    std::map<std::string, std::size_t> id;
    for (const auto& [name, arity] : sig) {
        id[name] = names.size();
        names.push_back(name);
    }
    const std::size_t n = names.size();

    std::vector<bool> intensional(n, false);
    if (extensional) {
        for (std::size_t i = 0; i < n; ++i) intensional[i] = !extensional->count(names[i]);
    } else {
        for (const auto& r : program.rules) {
            if (r.body.empty() && r.head.size() <= 1) continue;
            for (const auto& h : r.head) intensional[id[h.predicate]] = true;
        }
    }

    // condition 1: predicates sharing a head share a stratum
    UnionFind groups(n);
    for (const auto& r : program.rules)
        for (std::size_t i = 1; i < r.head.size(); ++i) groups.unite(id[r.head[0].predicate], id[r.head[i].predicate]);

    std::vector<std::size_t> level(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (intensional[i]) level[groups.find(i)] = 1;

    // conditions 2 and 3 by relaxation; levels beyond n+1 imply a negative cycle
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : program.rules) {
            if (r.head.empty()) continue;
            std::size_t g = groups.find(id[r.head[0].predicate]);
            for (const auto& l : r.body) {
                if (l.is_builtin()) continue;
                std::size_t need = level[groups.find(id[l.atom().predicate])] + (l.negated ? 1 : 0);
                if (need > level[g]) {
                    level[g] = need;
                    if (level[g] > n + 1) return std::nullopt;
                    changed = true;
                }
            }
        }
    }

    Stratification out;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t l = level[groups.find(i)];
        out.level[names[i]] = l;
        if (out.strata.size() <= l) out.strata.resize(l + 1);
        out.strata[l].insert(names[i]);
    }
    return out;
}

bool is_hcf(const Program& program) {
    const Signature sig = program.signature();
    std::map<std::string, std::size_t> id;
    for (const auto& [name, arity] : sig) id.emplace(name, id.size());
    std::vector<std::set<std::size_t>> edges(id.size());
    for (const auto& r : program.rules)
        for (const auto& l : r.body)
            if (!l.is_builtin() && !l.negated)
                for (const auto& h : r.head) edges[id[l.atom().predicate]].insert(id[h.predicate]);
    auto scc = strongly_connected(edges);
    for (const auto& r : program.rules) {
        for (std::size_t i = 0; i < r.head.size(); ++i) {
            for (std::size_t j = i + 1; j < r.head.size(); ++j) {
                if (r.head[i] == r.head[j]) continue;
                auto a = id[r.head[i].predicate], b = id[r.head[j].predicate];
                if (scc.component[a] == scc.component[b] && scc.cyclic[scc.component[a]]) return false;
            }
        }
    }
    return true;
}

bool is_hcf(const GroundProgram& gp) {
    std::vector<std::set<std::size_t>> edges(gp.atoms.size());
    for (const auto& r : gp.rules)
        for (auto b : r.pos)
            for (auto h : r.head) edges[b].insert(h);
    auto scc = strongly_connected(edges);
    for (const auto& r : gp.rules)
        for (std::size_t i = 0; i < r.head.size(); ++i)
            for (std::size_t j = i + 1; j < r.head.size(); ++j)
                if (scc.component[r.head[i]] == scc.component[r.head[j]]) return false;
    return true;
}

}  // namespace cqa::asp
