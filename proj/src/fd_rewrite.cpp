#include "cqa/fd_rewrite.hpp"

#include <algorithm>

#include "cqa/error.hpp"

namespace cqa::rewrite {

namespace {

using logic::Formula;

std::string fresh(const std::string& base, std::set<std::string>& taken) {
    std::string name = base;
    for (std::size_t i = 1; taken.count(name); ++i) name = base + std::to_string(i);
    taken.insert(name);
    return name;
}

bool in_lhs(const FD& fd, std::size_t position) {
    return std::find(fd.lhs.begin(), fd.lhs.end(), position) != fd.lhs.end();
}

RewriteResult fallback(std::string reason) {
    RewriteResult r;
    r.reason = std::move(reason);
    return r;
}

}  // namespace

RewriteResult rewrite_atomic(const std::vector<FD>& fds, const Atom& query_atom,
                             const std::vector<std::string>& answer_vars) {
    std::set<std::string> seen;
    for (const auto& t : query_atom.args) {
        if (t.is_variable() && !seen.insert(t.name).second) {
            return fallback("variable " + t.name + " repeats in the query atom");
        }
    }
    std::set<std::string> answers(answer_vars.begin(), answer_vars.end());
    if (answers.size() != answer_vars.size()) return fallback("answer variables repeat");
    if (answers != seen) return fallback("query projects or uses unbound answer variables");

    RewriteResult r;
    r.applicable = true;
    r.free_variables = answer_vars;
    std::vector<Formula> parts{logic::atom(query_atom)};
    std::set<std::string> taken = seen;
    for (const auto& fd : fds) {
        if (fd.predicate.name != query_atom.predicate) continue;
        if (fd.predicate.arity != query_atom.args.size()) {
            throw ValidationError("query atom " + query_atom.str() + " does not match the arity of " + fd.str());
        }
        std::vector<std::string> bound;
        std::vector<Term> other;
        std::string z;
        for (std::size_t p = 1; p <= fd.predicate.arity; ++p) {
            if (in_lhs(fd, p)) {
                other.push_back(query_atom.args[p - 1]);
            } else {
                std::string v = fresh(p == fd.rhs ? "Z" : "W", taken);
                if (p == fd.rhs) z = v;
                bound.push_back(v);
                other.push_back(Term::var(v));
            }
        }
        Formula conflict = logic::neg(logic::exists(
            bound, logic::conj({logic::atom(query_atom.predicate, other),
                                logic::neq(Term::var(z), query_atom.args[fd.rhs - 1])})));
        r.explanation.push_back(logic::print(conflict) + "  from " + fd.str());
        parts.push_back(conflict);
    }
    r.rewritten = logic::conj(std::move(parts));
    return r;
}

RewriteResult rewrite_query(const repair::QuerySpec& q, const std::vector<FD>& fds) {
    if (q.rules.rules.size() != 1) return fallback("query has more than one rule");
    const auto& rule = q.rules.rules.front();
    if (rule.head.size() != 1 || rule.head.front().predicate != q.answer_pred) {
        return fallback("query rule does not define " + q.answer_pred);
    }
    if (rule.body.size() != 1 || rule.body.front().negated || rule.body.front().is_builtin()) {
        return fallback("query body is not a single positive atom");
    }
    std::vector<std::string> answer_vars;
    for (const auto& t : rule.head.front().args) {
        if (!t.is_variable()) return fallback("query head contains a constant");
        answer_vars.push_back(t.name);
    }
    return rewrite_atomic(fds, rule.body.front().atom(), answer_vars);
}

std::set<Tuple> answers_via_rewrite(const Instance& d, const std::vector<FD>& fds, const repair::QuerySpec& q) {
    auto r = rewrite_query(q, fds);
    if (!r.applicable) throw ValidationError("rewriting not applicable: " + r.reason);
    ConstantSet extra = q.rules.constants();
    auto s = logic::FiniteStructure::from_instance(d, extra);
    std::vector<Constant> dom(s.domain.begin(), s.domain.end());
    const std::size_t k = r.free_variables.size();
    std::set<Tuple> out;
    if (k > 0 && dom.empty()) return out;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        Substitution env;
        Tuple t;
        for (std::size_t i = 0; i < k; ++i) {
            env[r.free_variables[i]] = dom[idx[i]];
            t.push_back(dom[idx[i]]);
        }
        if (logic::eval(s, r.rewritten, env)) out.insert(t);
        std::size_t i = k;
        while (i > 0 && ++idx[i - 1] == dom.size()) idx[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

namespace {

struct ConflictShape {
    std::vector<std::string> v;   // first tuple
    std::vector<std::string> w;   // second tuple, sharing v on the lhs
    std::vector<std::string> w_only;
};

ConflictShape conflict_shape(const FD& fd, bool witness_names) {
    const std::size_t n = fd.predicate.arity;
    ConflictShape c;
    if (n <= 2) {
        c.v = witness_names ? std::vector<std::string>{"S", "T"} : logic::standard_variables(n);
        c.v.resize(n);
    } else {
        for (std::size_t i = 1; i <= n; ++i) c.v.push_back((witness_names ? "S" : "X") + std::to_string(i));
    }
    for (std::size_t p = 1; p <= n; ++p) {
        if (in_lhs(fd, p)) {
            c.w.push_back(c.v[p - 1]);
        } else {
            std::string name = p == fd.rhs ? "Z" : "W" + std::to_string(p);
            c.w.push_back(name);
            c.w_only.push_back(name);
        }
    }
    return c;
}

Formula kappa(const FD& fd, const ConflictShape& c) {
    const auto& p = fd.predicate.name;
    return logic::conj({logic::atom(p, logic::as_terms(c.v)), logic::atom(p, logic::as_terms(c.w)),
                        logic::neq(Term::var(c.v[fd.rhs - 1]), Term::var(c.w[fd.rhs - 1]))});
}

}  // namespace

logic::Theory prop4_theory(const std::vector<FD>& fds, const Instance& d) {
    std::set<std::string> seen;
    for (const auto& fd : fds) {
        if (!seen.insert(fd.predicate.name).second) {
            throw ValidationError("more than one FD on predicate " + fd.predicate.name);
        }
    }
    repair::AnnotationScheme names(d.schema());
    logic::Theory t;
    for (const auto& fd : fds) {
        const auto& p = fd.predicate;
        const auto& n = names.of(p.name);
        t.add("completion_" + p.name, "completion:" + p.name, logic::completion(p.name, p.arity, d.extension(p.name)));

        auto vars = logic::standard_variables(p.arity);
        auto args = logic::as_terms(vars);
        t.add("dstar_" + p.name, "completion:" + n.dstar,
              logic::forall(vars, logic::iff(logic::conj({logic::atom(p.name, args), logic::neg(logic::atom(n.f, args))}),
                                             logic::atom(n.dstar, args))));

        auto del = conflict_shape(fd, false);
        std::vector<std::string> all = del.v;
        all.insert(all.end(), del.w_only.begin(), del.w_only.end());
        t.add("delete_" + p.name, "conflict",
              logic::forall(all, logic::implies(kappa(fd, del), logic::disj({logic::atom(n.f, logic::as_terms(del.v)),
                                                                             logic::atom(n.f, logic::as_terms(del.w))}))));

        auto wit = conflict_shape(fd, true);
        t.add("witness_" + p.name, "witness",
              logic::forall(wit.v, logic::implies(logic::atom(n.f, logic::as_terms(wit.v)),
                                                  logic::exists(wit.w_only, logic::conj({kappa(fd, wit),
                                                                                         logic::neg(logic::atom(n.f, logic::as_terms(wit.w)))})))));
    }
    return t;
}

std::vector<logic::FiniteStructure> prop4_models(const std::vector<FD>& fds, const Instance& d,
                                                 const logic::BoundedModelLimits& limits) {
    auto theory = prop4_theory(fds, d);
    repair::AnnotationScheme names(d.schema());
    std::vector<GroundAtom> candidates;
    for (const auto& fd : fds)
        for (const auto& t : d.extension(fd.predicate.name)) candidates.push_back(GroundAtom{fd.predicate.name, t});
    if (candidates.size() > limits.max_free_atoms) {
        throw GuardExceeded(std::to_string(candidates.size()) + " candidate deletions, limit is " +
                            std::to_string(limits.max_free_atoms));
    }
    std::vector<logic::FiniteStructure> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
        auto s = logic::FiniteStructure::from_instance(d);
        for (const auto& fd : fds) {
            const auto& n = names.of(fd.predicate.name);
            s.declare(n.f);
            s.extensions[n.dstar] = d.extension(fd.predicate.name);
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (!((mask >> i) & 1)) continue;
            const auto& n = names.of(candidates[i].predicate);
            s.extensions[n.f].insert(candidates[i].args);
            s.extensions[n.dstar].erase(candidates[i].args);
        }
        bool model = std::all_of(theory.entries.begin(), theory.entries.end(), [&](const logic::TheoryEntry& e) {
            return logic::eval(s, e.formula, {}, logic::EvalLimits{limits.max_so_bits});
        });
        if (model) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace cqa::rewrite
