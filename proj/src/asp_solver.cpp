#include <algorithm>
#include <functional>

#include "cqa/asp.hpp"
#include "cqa/error.hpp"

namespace cqa::asp {

std::set<AtomId> possibly_true_atoms(const GroundProgram& gp) {
    std::vector<char> derivable(gp.atoms.size(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : gp.rules) {
            if (!std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return derivable[a]; })) continue;
            for (auto h : r.head) {
                if (!derivable[h]) {
                    derivable[h] = 1;
                    changed = true;
                }
            }
        }
    }
    std::set<AtomId> out;
    for (AtomId a = 0; a < derivable.size(); ++a)
        if (derivable[a]) out.insert(a);
    return out;
}

namespace {

constexpr signed char kUnknown = -1;

/// Tiny DPLL used for the minimality test: is there a model of the clauses
/// at all? Literals are +(v+1) / -(v+1).
class ClauseSearch {
public:
    ClauseSearch(std::size_t vars, std::vector<std::vector<int>> clauses, std::size_t& nodes, std::size_t max_nodes)
        : value_(vars, kUnknown), clauses_(std::move(clauses)), nodes_(nodes), max_nodes_(max_nodes) {}

    bool satisfiable() { return search(); }

private:
    bool lit_true(int l) const {
        auto v = value_[std::abs(l) - 1];
        return v != kUnknown && (v == 1) == (l > 0);
    }
    bool lit_false(int l) const {
        auto v = value_[std::abs(l) - 1];
        return v != kUnknown && (v == 1) != (l > 0);
    }

    bool propagate(std::vector<std::size_t>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : clauses_) {
                int open = 0, last = 0;
                bool sat = false;
                for (int l : c) {
                    if (lit_true(l)) {
                        sat = true;
                        break;
                    }
                    if (!lit_false(l)) {
                        ++open;
                        last = l;
                    }
                }
                if (sat) continue;
                if (open == 0) return false;
                if (open == 1) {
                    std::size_t v = std::abs(last) - 1;
                    value_[v] = last > 0 ? 1 : 0;
                    trail.push_back(v);
                    changed = true;
                }
            }
        }
        return true;
    }

    bool search() {
        if (++nodes_ > max_nodes_) throw GuardExceeded("search exceeded " + std::to_string(max_nodes_) + " nodes");
        std::vector<std::size_t> trail;
        auto undo = [&] {
            for (auto v : trail) value_[v] = kUnknown;
        };
        if (!propagate(trail)) {
            undo();
            return false;
        }
        auto it = std::find(value_.begin(), value_.end(), kUnknown);
        if (it == value_.end()) {
            undo();
            return true;
        }
        std::size_t v = it - value_.begin();
        for (signed char choice : {0, 1}) {
            value_[v] = choice;
            if (search()) {
                value_[v] = kUnknown;
                undo();
                return true;
            }
        }
        value_[v] = kUnknown;
        undo();
        return false;
    }

    std::vector<signed char> value_;
    std::vector<std::vector<int>> clauses_;
    std::size_t& nodes_;
    std::size_t max_nodes_;
};

/// Enumerates the stable models of a ground program. Atoms outside
/// possibly_true_atoms are false in every stable model and are fixed up front;
/// the remaining ("undetermined") atoms are branched on with model and support
/// propagation, and every total candidate is checked for minimality of the
/// reduct.
class StableSearch {
public:
    StableSearch(const GroundProgram& gp, const Limits& limits) : gp_(gp), limits_(limits) {
        auto possible = possibly_true_atoms(gp);
        if (possible.size() > limits.max_undetermined_atoms) {
            throw GuardExceeded(std::to_string(possible.size()) + " undetermined atoms exceed the limit of " +
                                std::to_string(limits.max_undetermined_atoms));
        }
        // local ids in canonical atom order
        std::vector<AtomId> ordered(possible.begin(), possible.end());
        std::sort(ordered.begin(), ordered.end(),
                  [&](AtomId a, AtomId b) { return gp.atoms.atom(a) < gp.atoms.atom(b); });
        std::vector<int> local(gp.atoms.size(), -1);
        for (std::size_t i = 0; i < ordered.size(); ++i) local[ordered[i]] = static_cast<int>(i);
        global_ = ordered;

        for (const auto& r : gp.rules) {
            if (!std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return local[a] >= 0; })) continue;
            Rule rr;
            for (auto a : r.head)
                if (local[a] >= 0) rr.head.push_back(local[a]);
            for (auto a : r.pos) rr.pos.push_back(local[a]);
            for (auto a : r.neg)
                if (local[a] >= 0) rr.neg.push_back(local[a]);
            rules_.push_back(std::move(rr));
        }
        head_occ_.resize(global_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i)
            for (int h : rules_[i].head) head_occ_[h].push_back(i);
        value_.assign(global_.size(), kUnknown);
    }

    std::vector<Interpretation> run() {
        search();
        std::sort(models_.begin(), models_.end());
        return models_;
    }

private:
    struct Rule {
        std::vector<int> head, pos, neg;
    };

    bool is_true(int a) const { return value_[a] == 1; }
    bool is_false(int a) const { return value_[a] == 0; }

    bool body_false(const Rule& r) const {
        return std::any_of(r.pos.begin(), r.pos.end(), [&](int a) { return is_false(a); }) ||
               std::any_of(r.neg.begin(), r.neg.end(), [&](int a) { return is_true(a); });
    }
    bool body_true(const Rule& r) const {
        return std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return is_true(a); }) &&
               std::all_of(r.neg.begin(), r.neg.end(), [&](int a) { return is_false(a); });
    }

    void assign(int a, signed char v, std::vector<int>& trail) {
        value_[a] = v;
        trail.push_back(a);
    }

    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& r : rules_) {
                if (body_false(r)) continue;
                if (std::any_of(r.head.begin(), r.head.end(), [&](int a) { return is_true(a); })) continue;
                int open_heads = 0, last_head = -1;
                for (int h : r.head) {
                    if (!is_false(h)) {
                        ++open_heads;
                        last_head = h;
                    }
                }
                int open_body = 0, last_body = -1;
                bool last_is_pos = false;
                for (int a : r.pos) {
                    if (!is_true(a)) {
                        ++open_body;
                        last_body = a;
                        last_is_pos = true;
                    }
                }
                for (int a : r.neg) {
                    if (!is_false(a)) {
                        ++open_body;
                        last_body = a;
                        last_is_pos = false;
                    }
                }
                if (open_body == 0) {
                    if (open_heads == 0) return false;
                    if (open_heads == 1) {
                        assign(last_head, 1, trail);
                        changed = true;
                    }
                } else if (open_heads == 0 && open_body == 1) {
                    assign(last_body, last_is_pos ? 0 : 1, trail);
                    changed = true;
                }
            }
            // support: a true atom needs a rule with a non-false body whose
            // other head atoms are all false
            for (std::size_t a = 0; a < value_.size(); ++a) {
                if (is_false(static_cast<int>(a))) continue;
                bool supported = false;
                for (auto ri : head_occ_[a]) {
                    const auto& r = rules_[ri];
                    if (body_false(r)) continue;
                    if (std::any_of(r.head.begin(), r.head.end(),
                                    [&](int h) { return h != static_cast<int>(a) && is_true(h); }))
                        continue;
                    supported = true;
                    break;
                }
                if (supported) continue;
                if (is_true(static_cast<int>(a))) return false;
                assign(static_cast<int>(a), 0, trail);
                changed = true;
            }
        }
        return true;
    }

    void search() {
        if (++nodes_ > limits_.max_search_nodes) {
            throw GuardExceeded("search exceeded " + std::to_string(limits_.max_search_nodes) + " nodes");
        }
        std::vector<int> trail;
        if (propagate(trail)) {
            auto it = std::find(value_.begin(), value_.end(), kUnknown);
            if (it == value_.end()) {
                if (minimal()) {
                    Interpretation m;
                    for (std::size_t a = 0; a < value_.size(); ++a)
                        if (value_[a] == 1) m.insert(gp_.atoms.atom(global_[a]));
                    models_.push_back(std::move(m));
                }
            } else {
                int a = static_cast<int>(it - value_.begin());
                for (signed char choice : {1, 0}) {
                    std::vector<int> branch;
                    assign(a, choice, branch);
                    search();
                    for (int b : branch) value_[b] = kUnknown;
                }
            }
        }
        for (int a : trail) value_[a] = kUnknown;
    }

    /// Is the current total assignment a minimal model of its reduct? Looks
    /// for a model of the reduct strictly inside the true atoms.
    bool minimal() {
        std::vector<int> var_of(value_.size(), -1);
        int n = 0;
        for (std::size_t a = 0; a < value_.size(); ++a)
            if (value_[a] == 1) var_of[a] = n++;
        if (n == 0) return true;
        std::vector<std::vector<int>> clauses;
        for (const auto& r : rules_) {
            if (std::any_of(r.neg.begin(), r.neg.end(), [&](int a) { return is_true(a); })) continue;
            if (!std::all_of(r.pos.begin(), r.pos.end(), [&](int a) { return is_true(a); })) continue;
            std::vector<int> clause;
            for (int a : r.pos) clause.push_back(-(var_of[a] + 1));
            for (int h : r.head)
                if (is_true(h)) clause.push_back(var_of[h] + 1);
            clauses.push_back(std::move(clause));
        }
        std::vector<int> some_false;
        for (int v = 0; v < n; ++v) some_false.push_back(-(v + 1));
        clauses.push_back(std::move(some_false));
        return !ClauseSearch(n, std::move(clauses), nodes_, limits_.max_search_nodes).satisfiable();
    }

    const GroundProgram& gp_;
    const Limits& limits_;
    std::vector<AtomId> global_;
    std::vector<Rule> rules_;
    std::vector<std::vector<std::size_t>> head_occ_;
    std::vector<signed char> value_;
    std::vector<Interpretation> models_;
    std::size_t nodes_ = 0;
};

}  // namespace

std::vector<Interpretation> stable_models(const GroundProgram& gp, const Limits& limits) {
    return StableSearch(gp, limits).run();
}

std::vector<Interpretation> minimal_models(const GroundProgram& gp, const Limits& limits) {
    if (!gp.is_positive()) throw ValidationError("minimal_models expects a negation-free program");
    // for positive programs stable and minimal models coincide
    return StableSearch(gp, limits).run();
}

std::vector<Interpretation> stable_models(const Program& program, const Limits& limits) {
    return stable_models(ground(program, program.constants(), limits), limits);
}

std::set<Tuple> cautious_answers(const std::vector<Interpretation>& models, const std::string& query_pred) {
    if (models.empty()) throw InconsistentProgram();
    std::set<Tuple> out = extension(models.front(), query_pred);
    for (std::size_t i = 1; i < models.size() && !out.empty(); ++i) {
        auto ext = extension(models[i], query_pred);
        std::set<Tuple> kept;
        std::set_intersection(out.begin(), out.end(), ext.begin(), ext.end(), std::inserter(kept, kept.end()));
        out = std::move(kept);
    }
    return out;
}

std::set<Tuple> cautious_answers(const Program& program, const std::string& query_pred, const Limits& limits) {
    return cautious_answers(stable_models(program, limits), query_pred);
}

}  // namespace cqa::asp
