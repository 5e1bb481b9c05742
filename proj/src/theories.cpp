#include "cqa/theories.hpp"

#include <algorithm>

#include "cqa/error.hpp"
#include "cqa/lexer.hpp"
#include "cqa/repair_program.hpp"

namespace cqa::logic {

void Theory::add(std::string name, std::string tag, Formula f) {
    if (find(name)) throw ValidationError("duplicate theory entry " + name);
    entries.push_back(TheoryEntry{std::move(name), std::move(tag), std::move(f)});
}

void Theory::append(const Theory& other) {
    for (const auto& e : other.entries) add(e.name, e.tag, e.formula);
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

const TheoryEntry* Theory::find(std::string_view name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

Formula Theory::conjunction() const {
    std::vector<Formula> fs;
    for (const auto& e : entries) fs.push_back(e.formula);
    return conj(std::move(fs));
}

std::string emit_theory(const Theory& t, Notation notation) {
    std::string out;
    for (const auto& n : t.notes) out += "% " + n + "\n";
    for (const auto& e : t.entries) {
        out += e.name;
        if (!e.tag.empty()) out += " [" + e.tag + "]";
        out += " := " + print(e.formula, notation) + " .\n";
    }
    return out;
}

Theory parse_theory(std::string_view input) {
    // Entries are split at a '.' that ends a line (modulo spaces and comments)
    // so that formulas can be handed to the formula parser whole.
    Theory t;
    std::size_t line_no = 0;
    std::string pending;
    std::size_t pending_line = 0;
    std::size_t start = 0;
    while (start <= input.size()) {
        std::size_t end = input.find('\n', start);
        if (end == std::string_view::npos) end = input.size();
        std::string line(input.substr(start, end - start));
        ++line_no;
        start = end + 1;
        if (auto pct = line.find('%'); pct != std::string::npos) {
            std::string note = line.substr(pct + 1);
            if (pending.empty() && line.find_first_not_of(" \t") == pct) {
                if (!note.empty() && note.front() == ' ') note.erase(0, 1);
                t.notes.push_back(note);
            }
            line.erase(pct);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        if (line.empty()) {
            if (end == input.size()) break;
            continue;
        }
        if (pending.empty()) pending_line = line_no;
        pending += line + "\n";
        if (line.back() != '.') {
            if (end == input.size()) throw ParseError("theory entry missing final '.'", pending_line, 1);
            continue;
        }
        pending.pop_back();
        pending.pop_back();

        auto assign = pending.find(":=");
        if (assign == std::string::npos) throw ParseError("expected 'name [tag] := formula .'", pending_line, 1);
        text::TokenStream head(std::string_view(pending).substr(0, assign));
        std::string name = head.expect_identifier().text;
        std::string tag;
        if (head.accept("[")) {
            while (!head.peek().is("]")) {
                if (head.at_end()) head.fail("unterminated tag");
                tag += head.next().text;
            }
            head.next();
        }
        if (!head.at_end()) throw ParseError("unexpected text before ':='", pending_line, 1);
        try {
            t.add(name, tag, parse_formula(std::string_view(pending).substr(assign + 2)));
        } catch (const ParseError& e) {
            throw ParseError(std::string("in entry ") + name + ": " + e.what(), pending_line, 1);
        }
        pending.clear();
        if (end == input.size()) break;
    }
    if (!pending.empty()) throw ParseError("theory entry missing final '.'", pending_line, 1);
    return t;
}

Formula completion(const std::string& predicate, std::size_t arity, const std::set<Tuple>& tuples) {
    auto vars = standard_variables(arity);
    std::vector<Formula> cases;
    for (const auto& t : tuples) {
        std::vector<Formula> eqs;
        for (std::size_t i = 0; i < arity; ++i) eqs.push_back(eq(Term::var(vars[i]), Term::constant(t[i])));
        cases.push_back(conj(std::move(eqs)));
    }
    return forall(vars, iff(atom(predicate, as_terms(vars)), disj(std::move(cases))));
}

Theory reiter_theory(const Instance& d) {
    Theory t;
    ConstantSet domain = active_domain(d, d.schema().declared_constants());
    std::vector<Formula> closure;
    for (const auto& c : domain) closure.push_back(eq(Term::var("X"), Term::constant(c)));
    t.add("dca", "DCA", forall({"X"}, disj(std::move(closure))));
    std::vector<Formula> distinct;
    for (auto a = domain.begin(); a != domain.end(); ++a)
        for (auto b = std::next(a); b != domain.end(); ++b)
            distinct.push_back(neq(Term::constant(*a), Term::constant(*b)));
    if (!distinct.empty()) t.add("una", "UNA", conj(std::move(distinct)));
    for (const auto& p : d.schema().predicates()) {
        t.add("completion_" + p.name, "completion:" + p.name, completion(p.name, p.arity, d.extension(p.name)));
    }
    return t;
}

namespace {

Formula literal_formula(const asp::Literal& l) {
    if (l.is_builtin()) {
        const auto& b = l.as_builtin();
        return b.op == BuiltinOp::Eq ? eq(b.lhs, b.rhs) : neq(b.lhs, b.rhs);
    }
    return l.negated ? neg(atom(l.atom())) : atom(l.atom());
}

}  // namespace

Formula psi_of_rule(const asp::Rule& rule) {
    std::vector<Formula> head;
    for (const auto& a : rule.head) head.push_back(atom(a));
    Formula h = disj(std::move(head));
    if (rule.body.empty()) return forall(rule.variables(), h);
    std::vector<Formula> body;
    for (const auto& l : rule.body) body.push_back(literal_formula(l));
    return forall(rule.variables(), implies(conj(std::move(body)), h));
}

Formula psi_of_program(const asp::Program& program) {
    std::vector<Formula> parts;
    for (const auto& r : program.rules) parts.push_back(psi_of_rule(r));
    return conj(std::move(parts));
}

namespace {

Formula with_children(const Formula& f, std::vector<Formula> children) {
    Node n = *f;
    n.children = std::move(children);
    return std::make_shared<const Node>(std::move(n));
}

}  // namespace

Formula rename_predicates(const Formula& f, const std::map<std::string, std::string>& renaming) {
    if (f->kind == NodeKind::Atom) {
        auto it = renaming.find(f->predicate);
        return it == renaming.end() ? f : atom(it->second, f->args);
    }
    if (f->children.empty()) return f;
    std::vector<Formula> children;
    for (const auto& c : f->children) children.push_back(rename_predicates(c, renaming));
    return with_children(f, std::move(children));
}

Formula circle_transform(const Formula& f, const std::map<std::string, std::string>& varmap,
                         bool simplify_negative) {
    auto rec = [&](const Formula& g) { return circle_transform(g, varmap, simplify_negative); };
    switch (f->kind) {
    case NodeKind::Atom: {
        auto it = varmap.find(f->predicate);
        return it == varmap.end() ? f : atom(it->second, f->args);
    }
    case NodeKind::Eq:
    case NodeKind::Neq:
    case NodeKind::Bot:
    case NodeKind::Top:
        return f;
    case NodeKind::Not: {
        if (simplify_negative) return f;
        const auto& chi = f->children[0];
        return conj({implies(rec(chi), bot()), implies(chi, bot())});
    }
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Forall:
    case NodeKind::Exists: {
        std::vector<Formula> children;
        for (const auto& c : f->children) children.push_back(rec(c));
        return with_children(f, std::move(children));
    }
    case NodeKind::Implies: {
        if (simplify_negative && f->children[1]->kind == NodeKind::Bot) return f;
        return conj({implies(rec(f->children[0]), rec(f->children[1])), f});
    }
    case NodeKind::Iff:
        return rec(conj({implies(f->children[0], f->children[1]), implies(f->children[1], f->children[0])}));
    case NodeKind::Exists2:
        throw ValidationError("circle transform of a second-order formula");
    }
    return f;
}

namespace {

std::string fresh_name(std::string base, const std::map<std::string, std::size_t>& taken) {
    while (taken.count(base)) base = "_" + base;
    return base;
}

/// forall x (X(x) -> P(x)) for each pair.
Formula below(const std::vector<std::pair<std::string, PredicateSig>>& pairs) {
    std::vector<Formula> parts;
    for (const auto& [x, p] : pairs) {
        auto vars = standard_variables(p.arity);
        parts.push_back(forall(vars, implies(atom(x, as_terms(vars)), atom(p.name, as_terms(vars)))));
    }
    return conj(std::move(parts));
}

/// Some P has a tuple outside X.
Formula strictly_below_somewhere(const std::vector<std::pair<std::string, PredicateSig>>& pairs) {
    std::vector<Formula> parts;
    for (const auto& [x, p] : pairs) {
        auto vars = standard_variables(p.arity);
        parts.push_back(exists(vars, conj({atom(p.name, as_terms(vars)), neg(atom(x, as_terms(vars)))})));
    }
    return disj(std::move(parts));
}

}  // namespace

Formula phi_stable(const asp::Program& program, const PhiOptions& options) {
    asp::Program rules, constraints;
    for (const auto& r : program.rules) (r.is_constraint() ? constraints : rules).rules.push_back(r);
    const auto signature = program.signature();

    std::vector<std::string> circ;
    if (options.circumscribed) {
        circ = *options.circumscribed;
    } else {
        for (const auto& [p, n] : signature) circ.push_back(p);
    }

    std::map<std::string, std::string> varmap;
    std::vector<std::pair<std::string, PredicateSig>> pairs;
    std::vector<PredVar> pvars;
    for (const auto& p : circ) {
        auto it = signature.find(p);
        if (it == signature.end()) throw ValidationError("cannot circumscribe unknown predicate " + p);
        std::string x = fresh_name("X_" + p, signature);
        varmap[p] = x;
        pairs.emplace_back(x, PredicateSig{p, it->second});
        pvars.push_back(PredVar{x, it->second, p});
    }

    Formula psi = psi_of_program(rules);
    Formula inner = conj({below(pairs), strictly_below_somewhere(pairs),
                          circle_transform(psi, varmap, options.simplify_negative)});
    std::vector<Formula> parts{psi};
    if (!constraints.rules.empty()) parts.push_back(psi_of_program(constraints));
    parts.push_back(neg(exists2(std::move(pvars), inner)));
    return conj(std::move(parts));
}

bool check_stable_so(const asp::Program& program, const asp::Interpretation& candidate, const SoCheckLimits& limits) {
    if (candidate.size() > limits.max_atoms) {
        throw GuardExceeded("candidate has " + std::to_string(candidate.size()) + " atoms, limit is " +
                            std::to_string(limits.max_atoms));
    }
    const auto signature = program.signature();
    FiniteStructure s;
    s.domain = program.constants();
    for (const auto& [p, n] : signature) s.declare(p);
    for (const auto& a : candidate) {
        auto it = signature.find(a.predicate);
        if (it == signature.end() || it->second != a.args.size()) return false;
        for (const auto& c : a.args)
            if (!s.domain.count(c)) return false;
        s.extensions[a.predicate].insert(a.args);
    }
    return eval(s, phi_stable(program), {}, EvalLimits{limits.max_atoms});
}

Formula circumscribe(const Formula& sigma, const std::vector<PredicateSig>& minimized,
                     const std::vector<PredicateSig>& varying, Preorder preorder,
                     const std::map<std::string, std::string>& varying_bounds) {
    for (const auto& m : minimized)
        for (const auto& v : varying)
            if (m.name == v.name) throw ValidationError("predicate " + m.name + " is both minimized and varying");
    if (minimized.empty()) return sigma;

    auto taken = predicates(sigma);
    for (const auto& p : minimized) taken.emplace(p.name, p.arity);
    for (const auto& p : varying) taken.emplace(p.name, p.arity);

    std::map<std::string, std::string> renaming;
    std::vector<std::pair<std::string, PredicateSig>> pairs;
    std::vector<PredVar> pvars;
    for (std::size_t i = 0; i < minimized.size(); ++i) {
        const auto& p = minimized[i];
        std::string u = fresh_name("U_" + p.name, taken);
        renaming[p.name] = u;
        pairs.emplace_back(u, p);
        bool bounded = preorder == Preorder::Parallel || i == 0;
        pvars.push_back(PredVar{u, p.arity, bounded ? std::optional<std::string>(p.name) : std::nullopt});
    }
    for (const auto& q : varying) {
        std::string v = fresh_name("V_" + q.name, taken);
        renaming[q.name] = v;
        auto b = varying_bounds.find(q.name);
        pvars.push_back(PredVar{v, q.arity, b == varying_bounds.end() ? std::nullopt : std::optional(b->second)});
    }

    Formula order, differs;
    if (preorder == Preorder::Parallel) {
        order = below(pairs);
        differs = strictly_below_somewhere(pairs);
    } else {
        std::vector<Formula> levels, changes;
        std::vector<Formula> same_before;
        for (const auto& pair : pairs) {
            const auto& [u, p] = pair;
            levels.push_back(same_before.empty() ? below({pair}) : implies(conj(same_before), below({pair})));
            auto vars = standard_variables(p.arity);
            Formula same = forall(vars, iff(atom(u, as_terms(vars)), atom(p.name, as_terms(vars))));
            same_before.push_back(same);
            changes.push_back(neg(same));
        }
        order = conj(std::move(levels));
        differs = disj(std::move(changes));
    }
    return conj({sigma, neg(exists2(std::move(pvars), conj({order, differs, rename_predicates(sigma, renaming)})))});
}

namespace {

Formula annotated_completion(const std::string& lhs_pred, std::size_t arity,
                             const std::function<Formula(const std::vector<Term>&)>& rhs) {
    auto vars = standard_variables(arity);
    return forall(vars, iff(rhs(as_terms(vars)), atom(lhs_pred, as_terms(vars))));
}

}  // namespace

Theory prop2_closure(const std::vector<Constraint>& ics, const Instance& d, const ClosureOptions& options) {
    const Schema& schema = d.schema();
    repair::AnnotationScheme names(schema);
    auto rp = repair::gen_repair_program_general(to_universal(ics), schema, names,
                                                 repair::GeneratorOptions{.faithful_appendix = true});

    Theory t;
    t.notes.push_back("DCA and UNA are implicit unless requested; structures are Herbrand.");
    t.notes.push_back("Theta: database facts, star-annotation rules and repair rules.");
    for (const auto& e : reiter_theory(d).entries) {
        if (options.explicit_una || e.tag.rfind("completion", 0) == 0) t.add(e.name, e.tag, e.formula);
    }

    std::vector<PredicateSig> minimized, varying;
    std::map<std::string, std::string> bounds;
    for (const auto& p : schema.predicates()) {
        const auto& n = names.of(p.name);
        t.add("star_" + p.name, "completion:" + n.star, annotated_completion(n.star, p.arity, [&](auto args) {
                  return disj({atom(p.name, args), atom(n.t, args)});
              }));
        t.add("dstar_" + p.name, "completion:" + n.dstar, annotated_completion(n.dstar, p.arity, [&](auto args) {
                  return conj({atom(n.star, args), neg(atom(n.f, args))});
              }));
        auto vars = standard_variables(p.arity);
        t.add("coherent_" + p.name, "coherence",
              forall(vars, neg(conj({atom(n.t, as_terms(vars)), atom(n.f, as_terms(vars))}))));
        minimized.push_back({n.t, p.arity});
        minimized.push_back({n.f, p.arity});
        varying.push_back({n.star, p.arity});
        bounds[n.star] = n.star;
    }

    asp::Program theta = asp::facts_program(d);
    theta.append(rp.annotation_rules);
    theta.append(rp.repair_rules);
    t.add("circ", "circ", circumscribe(psi_of_program(theta), minimized, varying, Preorder::Parallel, bounds));
    return t;
}

std::vector<FiniteStructure> prop2_models(const std::vector<Constraint>& ics, const Instance& d,
                                          const BoundedModelLimits& limits) {
    const Schema& schema = d.schema();
    repair::AnnotationScheme names(schema);
    auto rp = repair::gen_repair_program_general(to_universal(ics), schema, names,
                                                 repair::GeneratorOptions{.faithful_appendix = true});
    asp::Program program = asp::facts_program(d);
    program.append(rp.all());

    ConstantSet domain = active_domain(d, constraint_constants(ics));
    domain.insert(schema.declared_constants().begin(), schema.declared_constants().end());
    auto gp = asp::ground(program, domain);

    std::set<std::string> changeable;
    for (const auto& p : schema.predicates()) {
        changeable.insert(names.of(p.name).t);
        changeable.insert(names.of(p.name).f);
    }
    std::vector<GroundAtom> free_atoms;
    for (auto id : asp::possibly_true_atoms(gp)) {
        const auto& a = gp.atoms.atom(id);
        if (changeable.count(a.predicate)) free_atoms.push_back(a);
    }
    std::sort(free_atoms.begin(), free_atoms.end());
    if (free_atoms.size() > limits.max_free_atoms) {
        throw GuardExceeded(std::to_string(free_atoms.size()) + " candidate annotation atoms, limit is " +
                            std::to_string(limits.max_free_atoms));
    }

    Theory theory = prop2_closure(ics, d);
    std::vector<FiniteStructure> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_atoms.size()); ++mask) {
        FiniteStructure s = FiniteStructure::from_instance(d, domain);
        for (const auto& p : schema.predicates()) {
            for (const auto& name : {names.of(p.name).t, names.of(p.name).f, names.of(p.name).star,
                                     names.of(p.name).dstar}) {
                s.declare(name);
            }
        }
        for (std::size_t i = 0; i < free_atoms.size(); ++i) {
            if ((mask >> i) & 1) s.extensions[free_atoms[i].predicate].insert(free_atoms[i].args);
        }
        for (const auto& p : schema.predicates()) {
            const auto& n = names.of(p.name);
            auto& star = s.extensions[n.star];
            star = s.extensions[p.name];
            star.insert(s.extensions[n.t].begin(), s.extensions[n.t].end());
            auto& dstar = s.extensions[n.dstar];
            for (const auto& tup : star)
                if (!s.extensions[n.f].count(tup)) dstar.insert(tup);
        }
        bool model = std::all_of(theory.entries.begin(), theory.entries.end(), [&](const TheoryEntry& e) {
            return eval(s, e.formula, {}, EvalLimits{limits.max_so_bits});
        });
        if (model) out.push_back(std::move(s));
    }
    return out;
}

Instance dstar_instance(const FiniteStructure& s, const Schema& schema) {
    repair::AnnotationScheme names(schema);
    Instance out(schema);
    for (const auto& p : schema.predicates()) {
        auto it = s.extensions.find(names.of(p.name).dstar);
        if (it == s.extensions.end()) continue;
        for (const auto& t : it->second) out.insert(GroundAtom{p.name, t});
    }
    return out;
}

}  // namespace cqa::logic
