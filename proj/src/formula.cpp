#include "cqa/formula.hpp"

#include <algorithm>

#include "cqa/error.hpp"

namespace cqa::logic {

namespace {

Formula make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Formula nary(NodeKind kind, std::vector<Formula> fs, Formula empty) {
    if (fs.empty()) return empty;
    if (fs.size() == 1) return fs.front();
    Node n;
    n.kind = kind;
    n.children = std::move(fs);
    return make(std::move(n));
}

Formula quantified(NodeKind kind, std::vector<std::string> vars, Formula body) {
    if (vars.empty()) return body;
    Node n;
    n.kind = kind;
    n.vars = std::move(vars);
    n.children = {std::move(body)};
    return make(std::move(n));
}

}  // namespace

Formula atom(std::string predicate, std::vector<Term> args) {
    Node n;
    n.kind = NodeKind::Atom;
    n.predicate = std::move(predicate);
    n.args = std::move(args);
    return make(std::move(n));
}

Formula atom(const Atom& a) { return atom(a.predicate, a.args); }

Formula eq(Term lhs, Term rhs) {
    Node n;
    n.kind = NodeKind::Eq;
    n.args = {std::move(lhs), std::move(rhs)};
    return make(std::move(n));
}

Formula neq(Term lhs, Term rhs) {
    Node n;
    n.kind = NodeKind::Neq;
    n.args = {std::move(lhs), std::move(rhs)};
    return make(std::move(n));
}

Formula bot() {
    static const Formula f = make(Node{NodeKind::Bot, {}, {}, {}, {}, {}});
    return f;
}

Formula top() {
    static const Formula f = make(Node{NodeKind::Top, {}, {}, {}, {}, {}});
    return f;
}

Formula neg(Formula f) {
    Node n;
    n.kind = NodeKind::Not;
    n.children = {std::move(f)};
    return make(std::move(n));
}

Formula conj(std::vector<Formula> fs) { return nary(NodeKind::And, std::move(fs), top()); }
Formula disj(std::vector<Formula> fs) { return nary(NodeKind::Or, std::move(fs), bot()); }

Formula implies(Formula lhs, Formula rhs) {
    Node n;
    n.kind = NodeKind::Implies;
    n.children = {std::move(lhs), std::move(rhs)};
    return make(std::move(n));
}

Formula iff(Formula lhs, Formula rhs) {
    Node n;
    n.kind = NodeKind::Iff;
    n.children = {std::move(lhs), std::move(rhs)};
    return make(std::move(n));
}

Formula forall(std::vector<std::string> vars, Formula body) {
    return quantified(NodeKind::Forall, std::move(vars), std::move(body));
}

Formula exists(std::vector<std::string> vars, Formula body) {
    return quantified(NodeKind::Exists, std::move(vars), std::move(body));
}

Formula exists2(std::vector<PredVar> vars, Formula body) {
    if (vars.empty()) return body;
    Node n;
    n.kind = NodeKind::Exists2;
    n.pred_vars = std::move(vars);
    n.children = {std::move(body)};
    return make(std::move(n));
}

bool equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->predicate != b->predicate || a->args != b->args || a->vars != b->vars ||
        a->pred_vars != b->pred_vars || a->children.size() != b->children.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!equal(a->children[i], b->children[i])) return false;
    }
    return true;
}

std::vector<std::string> standard_variables(std::size_t n) {
    static const char* small[] = {"X", "Y", "Z", "W"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 4 ? std::string(small[i]) : "X" + std::to_string(i + 1));
    return out;
}

std::vector<Term> as_terms(const std::vector<std::string>& vars) {
    std::vector<Term> out;
    for (const auto& v : vars) out.push_back(Term::var(v));
    return out;
}

namespace {

void free_vars_into(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f->kind) {
    case NodeKind::Atom:
    case NodeKind::Eq:
    case NodeKind::Neq:
        for (const auto& t : f->args)
            if (t.is_variable() && !bound.count(t.name)) out.insert(t.name);
        return;
    case NodeKind::Forall:
    case NodeKind::Exists: {
        std::vector<std::string> added;
        for (const auto& v : f->vars)
            if (bound.insert(v).second) added.push_back(v);
        free_vars_into(f->children[0], bound, out);
        for (const auto& v : added) bound.erase(v);
        return;
    }
    default:
        for (const auto& c : f->children) free_vars_into(c, bound, out);
    }
}

void predicates_into(const Formula& f, std::set<std::string>& hidden, std::map<std::string, std::size_t>& out) {
    if (f->kind == NodeKind::Atom) {
        if (!hidden.count(f->predicate)) out.emplace(f->predicate, f->args.size());
        return;
    }
    if (f->kind == NodeKind::Exists2) {
        std::vector<std::string> added;
        for (const auto& pv : f->pred_vars) {
            if (hidden.insert(pv.name).second) added.push_back(pv.name);
            if (pv.bound && !hidden.count(*pv.bound)) out.emplace(*pv.bound, pv.arity);
        }
        predicates_into(f->children[0], hidden, out);
        for (const auto& v : added) hidden.erase(v);
        return;
    }
    for (const auto& c : f->children) predicates_into(c, hidden, out);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    free_vars_into(f, bound, out);
    return out;
}

std::map<std::string, std::size_t> predicates(const Formula& f) {
    std::set<std::string> hidden;
    std::map<std::string, std::size_t> out;
    predicates_into(f, hidden, out);
    return out;
}

FiniteStructure FiniteStructure::from_instance(const Instance& d, const ConstantSet& extra_domain) {
    FiniteStructure s;
    s.domain = active_domain(d, extra_domain);
    for (const auto& p : d.schema().predicates()) s.extensions[p.name];
    for (const auto& a : d) s.extensions[a.predicate].insert(a.args);
    return s;
}

bool FiniteStructure::holds(const std::string& predicate, const Tuple& t) const {
    auto it = extensions.find(predicate);
    if (it == extensions.end()) throw ValidationError("unknown predicate " + predicate);
    return it->second.count(t) > 0;
}

namespace {

class Evaluator {
public:
    Evaluator(const FiniteStructure& s, const Substitution& env, const EvalLimits& limits)
        : s_(s), env_(env), limits_(limits) {}

    bool run(const Formula& f) {
        switch (f->kind) {
        case NodeKind::Atom: {
            Tuple t;
            for (const auto& a : f->args) t.push_back(value(a));
            return extension(f->predicate).count(t) > 0;
        }
        case NodeKind::Eq:
            return value(f->args[0]) == value(f->args[1]);
        case NodeKind::Neq:
            return value(f->args[0]) != value(f->args[1]);
        case NodeKind::Bot:
            return false;
        case NodeKind::Top:
            return true;
        case NodeKind::Not:
            return !run(f->children[0]);
        case NodeKind::And:
            for (const auto& c : f->children)
                if (!run(c)) return false;
            return true;
        case NodeKind::Or:
            for (const auto& c : f->children)
                if (run(c)) return true;
            return false;
        case NodeKind::Implies:
            return !run(f->children[0]) || run(f->children[1]);
        case NodeKind::Iff:
            return run(f->children[0]) == run(f->children[1]);
        case NodeKind::Forall:
            return quantify(f, 0, true);
        case NodeKind::Exists:
            return quantify(f, 0, false);
        case NodeKind::Exists2:
            return second_order(f);
        }
        return false;
    }

private:
    const Constant& value(const Term& t) const {
        if (!t.is_variable()) return t.name;
        auto it = env_.find(t.name);
        if (it == env_.end()) throw ValidationError("unbound variable " + t.name);
        return it->second;
    }

    const std::set<Tuple>& extension(const std::string& predicate) const {
        auto pv = pred_env_.find(predicate);
        if (pv != pred_env_.end()) return *pv->second;
        auto it = s_.extensions.find(predicate);
        if (it == s_.extensions.end()) throw ValidationError("unknown predicate " + predicate);
        return it->second;
    }

    bool quantify(const Formula& f, std::size_t i, bool universal) {
        if (i == f->vars.size()) return run(f->children[0]);
        const auto& v = f->vars[i];
        auto saved = env_.find(v) == env_.end() ? std::nullopt : std::optional<Constant>(env_[v]);
        bool result = universal;
        for (const auto& c : s_.domain) {
            env_[v] = c;
            if (quantify(f, i + 1, universal) != universal) {
                result = !universal;
                break;
            }
        }
        if (saved) env_[v] = *saved;
        else env_.erase(v);
        return result;
    }

    bool second_order(const Formula& f) {
        struct Slot {
            std::string name;
            std::vector<Tuple> candidates;
            std::set<Tuple> value;
        };
        std::vector<Slot> slots;
        std::size_t bits = 0;
        for (const auto& pv : f->pred_vars) {
            if (!pv.bound) {
                throw ValidationError("unrestricted second-order quantification over " + pv.name +
                                      " is not supported; give it a bound predicate");
            }
            const auto& ext = extension(*pv.bound);
            for (const auto& t : ext) {
                if (t.size() != pv.arity) {
                    throw ValidationError("arity mismatch between " + pv.name + " and its bound " + *pv.bound);
                }
            }
            slots.push_back(Slot{pv.name, std::vector<Tuple>(ext.begin(), ext.end()), {}});
            bits += ext.size();
        }
        if (bits > limits_.max_so_bits) {
            throw GuardExceeded("second-order quantifier ranges over " + std::to_string(bits) + " bits, limit is " +
                                std::to_string(limits_.max_so_bits));
        }

        std::map<std::string, const std::set<Tuple>*> saved;
        for (auto& slot : slots) {
            auto it = pred_env_.find(slot.name);
            saved[slot.name] = it == pred_env_.end() ? nullptr : it->second;
            pred_env_[slot.name] = &slot.value;
        }
        bool found = false;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits) && !found; ++mask) {
            std::size_t bit = 0;
            for (auto& slot : slots) {
                slot.value.clear();
                for (const auto& t : slot.candidates) {
                    if ((mask >> bit++) & 1) slot.value.insert(t);
                }
            }
            found = run(f->children[0]);
        }
        for (const auto& [name, prev] : saved) {
            if (prev) pred_env_[name] = prev;
            else pred_env_.erase(name);
        }
        return found;
    }

    const FiniteStructure& s_;
    Substitution env_;
    std::map<std::string, const std::set<Tuple>*> pred_env_;
    EvalLimits limits_;
};

}  // namespace

bool eval(const FiniteStructure& s, const Formula& f, const Substitution& env, const EvalLimits& limits) {
    return Evaluator(s, env, limits).run(f);
}

}  // namespace cqa::logic
