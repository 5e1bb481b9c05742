#include "cqa/repair_program.hpp"

#include <algorithm>
#include <functional>

#include "cqa/error.hpp"

namespace cqa::repair {

AnnotationScheme::AnnotationScheme(const Schema& schema, const std::set<std::string>& reserved) {
    std::set<std::string> taken = reserved;
    for (const auto& p : schema.predicates()) taken.insert(p.name);
    auto fresh = [&](const std::string& base) {
        std::string name = base;
        while (taken.count(name)) name = "__" + name;
        taken.insert(name);
        return name;
    };
    for (const auto& p : schema.predicates()) {
        names_[p.name] = AnnotatedNames{fresh(p.name + "_t"), fresh(p.name + "_f"), fresh(p.name + "_s"),
                                        fresh(p.name + "_ds")};
    }
}

const AnnotatedNames& AnnotationScheme::of(std::string_view base) const {
    auto it = names_.find(base);
    if (it == names_.end()) throw ValidationError("no annotation names for predicate " + std::string(base));
    return it->second;
}

bool AnnotationScheme::is_generated(std::string_view predicate) const {
    for (const auto& [base, n] : names_)
        if (n.t == predicate || n.f == predicate || n.star == predicate || n.dstar == predicate) return true;
    return false;
}

std::optional<std::string> AnnotationScheme::base_of_dstar(std::string_view predicate) const {
    for (const auto& [base, n] : names_)
        if (n.dstar == predicate) return base;
    return std::nullopt;
}

std::set<std::string> AnnotationScheme::dstar_predicates() const {
    std::set<std::string> out;
    for (const auto& [base, n] : names_) out.insert(n.dstar);
    return out;
}

std::set<std::string> AnnotationScheme::generated() const {
    std::set<std::string> out;
    for (const auto& [base, n] : names_) out.insert({n.t, n.f, n.star, n.dstar});
    return out;
}

void validate_query(const QuerySpec& q, const Schema& schema) {
    const auto sig = q.rules.signature();
    const auto defined = q.intensional();
    if (!defined.count(q.answer_pred)) {
        throw ValidationError("query defines no answer predicate " + q.answer_pred);
    }
    for (const auto& r : q.rules.rules) {
        if (r.head.empty()) throw ValidationError("query programs may not contain constraints");
        if (r.head.size() > 1) throw ValidationError("query rules must be normal (one head atom)");
        for (const auto& h : r.head) {
            if (schema.contains(h.predicate)) {
                throw ValidationError("query rule redefines database predicate " + h.predicate);
            }
        }
        for (const auto& l : r.body) {
            if (l.is_builtin()) continue;
            const auto& p = l.atom().predicate;
            if (p == q.answer_pred) throw ValidationError("answer predicate " + p + " occurs in a rule body");
            if (!defined.count(p)) {
                if (!schema.contains(p)) throw ValidationError("query uses unknown predicate " + p);
                if (schema.arity(p) != l.atom().args.size()) throw ValidationError("arity mismatch for " + p);
            }
        }
    }
    // non-recursive: the dependency graph among defined predicates is acyclic
    std::map<std::string, std::set<std::string>> deps;
    for (const auto& r : q.rules.rules)
        for (const auto& l : r.body)
            if (!l.is_builtin() && defined.count(l.atom().predicate))
                deps[r.head[0].predicate].insert(l.atom().predicate);
    std::map<std::string, int> state;
    std::function<void(const std::string&)> visit = [&](const std::string& p) {
        if (state[p] == 2) return;
        if (state[p] == 1) throw ValidationError("query is recursive through " + p);
        state[p] = 1;
        for (const auto& d : deps[p]) visit(d);
        state[p] = 2;
    };
    for (const auto& p : defined) visit(p);
    (void)sig;
}

QuerySpec parse_query(std::string_view text, const Schema& schema, const std::string& answer_pred) {
    QuerySpec q;
    q.rules = asp::parse_program(text);
    q.answer_pred = answer_pred;
    validate_query(q, schema);
    q.arity = q.rules.signature().at(answer_pred);
    return q;
}

asp::Program RepairProgram::all() const {
    asp::Program p = without_constraints();
    p.append(program_constraints);
    return p;
}

asp::Program RepairProgram::without_constraints() const {
    asp::Program p = repair_rules;
    p.append(annotation_rules);
    p.append(interpretation_rules);
    return p;
}

std::string RepairProgram::str(asp::Dialect dialect) const {
    std::string out = "% repair program for:\n";
    for (const auto& s : sources) out += "%   " + s + "\n";
    auto section = [&](const char* title, const asp::Program& p) {
        if (p.rules.empty()) return;
        out += std::string("\n% ") + title + "\n" + p.str(dialect);
    };
    section("repair rules", repair_rules);
    section("annotation rules", annotation_rules);
    section("interpretation rules", interpretation_rules);
    section("program constraints", program_constraints);
    return out;
}

namespace {

Atom renamed(const Atom& a, const std::string& predicate) { return Atom{predicate, a.args}; }

Atom generic_atom(const std::string& predicate, std::size_t arity) {
    Atom a{predicate, {}};
    for (std::size_t i = 1; i <= arity; ++i) a.args.push_back(Term::var("X" + std::to_string(i)));
    return a;
}

void add_annotation_sections(RepairProgram& out, const Schema& schema, const AnnotationScheme& names,
                             bool with_insertions, bool fd_shape) {
    for (const auto& p : schema.predicates()) {
        const auto& n = names.of(p.name);
        Atom base = generic_atom(p.name, p.arity);
        if (!fd_shape) {
            out.annotation_rules.rules.push_back({{renamed(base, n.star)}, {asp::Literal::pos(base)}});
            if (with_insertions) {
                out.annotation_rules.rules.push_back(
                    {{renamed(base, n.star)}, {asp::Literal::pos(renamed(base, n.t))}});
            }
        }
        const Atom& source = fd_shape ? base : renamed(base, n.star);
        out.interpretation_rules.rules.push_back(
            {{renamed(base, n.dstar)}, {asp::Literal::pos(source), asp::Literal::neg(renamed(base, n.f))}});
        if (with_insertions) {
            out.program_constraints.rules.push_back(
                {{}, {asp::Literal::pos(renamed(base, n.t)), asp::Literal::pos(renamed(base, n.f))}});
        }
    }
}

}  // namespace

RepairProgram gen_repair_program_general(const std::vector<UniversalConstraint>& ics, const Schema& schema,
                                         const AnnotationScheme& names, const GeneratorOptions& options) {
    RepairProgram out;
    bool all_denials = true;
    for (const auto& ic : ics) {
        out.sources.push_back(ic.str());
        all_denials = all_denials && ic.is_denial();
        for (const auto& a : ic.body)
            if (!schema.contains(a.predicate)) throw ValidationError("unknown predicate " + a.predicate);
        for (const auto& a : ic.head_atoms)
            if (!schema.contains(a.predicate)) throw ValidationError("unknown predicate " + a.predicate);

        std::vector<Atom> head;
        for (const auto& a : ic.body) {
            Atom f = renamed(a, names.of(a.predicate).f);
            if (std::find(head.begin(), head.end(), f) == head.end()) head.push_back(f);
        }
        for (const auto& q : ic.head_atoms) {
            Atom t = renamed(q, names.of(q.predicate).t);
            if (std::find(head.begin(), head.end(), t) == head.end()) head.push_back(t);
        }
        const std::size_t n = ic.head_atoms.size();
        if (n >= 20) throw GuardExceeded("constraint with " + std::to_string(n) + " head atoms");
        // bit j set: Q_j is absent (not Q_j); clear: Q_j is deleted (Q_j_f)
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            asp::Rule r;
            r.head = head;
            for (const auto& a : ic.body) r.body.push_back(asp::Literal::pos(renamed(a, names.of(a.predicate).star)));
            for (std::size_t j = 0; j < n; ++j) {
                const auto& q = ic.head_atoms[j];
                if (mask & (std::size_t{1} << j)) {
                    r.body.push_back(asp::Literal::neg(q));
                } else {
                    r.body.push_back(asp::Literal::pos(renamed(q, names.of(q.predicate).f)));
                }
            }
            for (const auto& b : ic.head_builtin) r.body.push_back(asp::Literal::builtin(b.negated()));
            asp::check_safety(r);
            out.repair_rules.rules.push_back(std::move(r));
        }
    }
    add_annotation_sections(out, schema, names, options.faithful_appendix || !all_denials, false);
    return out;
}

RepairProgram gen_repair_program_fd(const std::vector<FD>& fds, const Schema& schema, const AnnotationScheme& names,
                                    const GeneratorOptions& options) {
    std::map<std::string, int> per_predicate;
    for (const auto& fd : fds) ++per_predicate[fd.predicate.name];
    if (std::any_of(per_predicate.begin(), per_predicate.end(), [](const auto& e) { return e.second > 1; })) {
        std::vector<UniversalConstraint> denials;
        for (const auto& fd : fds) denials.push_back(fd_to_constraint(fd));
        return gen_repair_program_general(denials, schema, names, options);
    }
    RepairProgram out;
    for (const auto& fd : fds) {
        out.sources.push_back(fd.str());
        if (!schema.contains(fd.predicate.name)) throw ValidationError("unknown predicate " + fd.predicate.name);
        Atom first{fd.predicate.name, {}}, second{fd.predicate.name, {}};
        const bool single = fd.lhs.size() == 1;
        for (std::size_t p = 1; p <= fd.predicate.arity; ++p) {
            auto it = std::find(fd.lhs.begin(), fd.lhs.end(), p);
            if (it != fd.lhs.end()) {
                auto v = Term::var(single ? "X" : "X" + std::to_string(1 + (it - fd.lhs.begin())));
                first.args.push_back(v);
                second.args.push_back(v);
            } else if (p == fd.rhs) {
                first.args.push_back(Term::var("Y"));
                second.args.push_back(Term::var("Z"));
            } else {
                first.args.push_back(Term::var("U" + std::to_string(p)));
                second.args.push_back(Term::var("V" + std::to_string(p)));
            }
        }
        const auto& f = names.of(fd.predicate.name).f;
        asp::Rule r;
        r.head = {renamed(first, f), renamed(second, f)};
        r.body = {asp::Literal::pos(first), asp::Literal::pos(second),
                  asp::Literal::builtin(Builtin{BuiltinOp::Neq, Term::var("Y"), Term::var("Z")})};
        out.repair_rules.rules.push_back(std::move(r));
    }
    add_annotation_sections(out, schema, names, false, true);
    return out;
}

RepairProgram gen_repair_program(const std::vector<Constraint>& ics, const Schema& schema,
                                 const AnnotationScheme& names, const GeneratorOptions& options) {
    if (auto fds = as_fds(ics); fds && !options.faithful_appendix) {
        return gen_repair_program_fd(*fds, schema, names, options);
    }
    return gen_repair_program_general(to_universal(ics), schema, names, options);
}

QuerySpec star_query(const QuerySpec& q, const Schema& schema, const AnnotationScheme& names) {
    QuerySpec out = q;
    const auto defined = q.intensional();
    for (auto& r : out.rules.rules) {
        for (auto& l : r.body) {
            if (l.is_builtin()) continue;
            auto& a = std::get<Atom>(l.content);
            if (!defined.count(a.predicate) && schema.contains(a.predicate)) a.predicate = names.of(a.predicate).dstar;
        }
    }
    return out;
}

asp::Program assemble_cqa_program(const Instance& d, const asp::Program& repair, const QuerySpec& starred,
                                  const AnnotationScheme& names) {
    for (const auto& p : starred.intensional()) {
        if (names.is_generated(p) || d.schema().contains(p)) {
            throw ValidationError("query predicate " + p + " collides with a repair-program predicate");
        }
    }
    asp::Program out = asp::facts_program(d);
    out.append(repair);
    out.append(starred.rules);
    for (const auto& r : out.rules) asp::check_safety(r);
    out.signature();
    return out;
}

Instance repair_of_model(const asp::Interpretation& model, const Schema& schema, const AnnotationScheme& names) {
    Instance out(schema);
    for (const auto& p : schema.predicates())
        for (const auto& t : asp::extension(model, names.of(p.name).dstar)) out.insert({p.name, t});
    return out;
}

}  // namespace cqa::repair
