#include "cqa/asp.hpp"

#include <algorithm>

#include "cqa/error.hpp"
#include "cqa/lexer.hpp"

namespace cqa::asp {

std::string Literal::str() const {
    if (is_builtin()) return as_builtin().str();
    return (negated ? "not " : "") + atom().str();
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> out;
    for (const auto& l : body) {
        if (l.is_builtin()) {
            collect_variables(l.as_builtin(), out);
        } else {
            collect_variables(l.atom(), out);
        }
    }
    for (const auto& h : head) collect_variables(h, out);
    return out;
}

std::string Rule::str(Dialect dialect) const {
    std::string out;
    const char* sep = dialect == Dialect::Dlv ? " v " : " | ";
    for (std::size_t i = 0; i < head.size(); ++i) {
        if (i) out += sep;
        out += head[i].str();
    }
    if (!body.empty()) {
        out += head.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) out += ", ";
            out += body[i].str();
        }
    }
    return out + ".";
}

ConstantSet Program::constants() const {
    ConstantSet out;
    for (const auto& r : rules) {
        for (const auto& h : r.head) collect_constants(h, out);
        for (const auto& l : r.body) {
            if (l.is_builtin()) {
                collect_constants(l.as_builtin(), out);
            } else {
                collect_constants(l.atom(), out);
            }
        }
    }
    return out;
}

Signature Program::signature() const {
    Signature sig;
    auto add = [&](const Atom& a) {
        auto [it, inserted] = sig.emplace(a.predicate, a.args.size());
        if (!inserted && it->second != a.args.size()) {
            throw ValidationError("predicate " + a.predicate + " used with arities " + std::to_string(it->second) +
                                  " and " + std::to_string(a.args.size()));
        }
    };
    for (const auto& r : rules) {
        for (const auto& h : r.head) add(h);
        for (const auto& l : r.body)
            if (!l.is_builtin()) add(l.atom());
    }
    return sig;
}

std::set<std::string> Program::head_predicates() const {
    std::set<std::string> out;
    for (const auto& r : rules)
        for (const auto& h : r.head) out.insert(h.predicate);
    return out;
}

std::string Program::str(Dialect dialect) const {
    std::string out;
    for (const auto& r : rules) out += r.str(dialect) + "\n";
    return out;
}

void check_safety(const Rule& rule) {
    std::vector<std::string> positive;
    for (const auto& l : rule.body)
        if (!l.is_builtin() && !l.negated) collect_variables(l.atom(), positive);
    auto require = [&](const std::vector<std::string>& vars) {
        for (const auto& v : vars) {
            if (std::find(positive.begin(), positive.end(), v) == positive.end()) {
                throw ValidationError("unsafe rule '" + rule.str() + "': variable " + v +
                                      " does not occur in a positive body atom");
            }
        }
    };
    std::vector<std::string> others;
    for (const auto& h : rule.head) collect_variables(h, others);
    for (const auto& l : rule.body) {
        if (l.is_builtin()) {
            collect_variables(l.as_builtin(), others);
        } else if (l.negated) {
            collect_variables(l.atom(), others);
        }
    }
    require(others);
}

namespace {

bool head_separator(const text::TokenStream& ts) {
    if (ts.peek().is("|") || ts.peek().is(";")) return true;
    // `v` separates disjuncts when another atom follows
    return ts.peek().is_word("v") && ts.peek(1).kind == text::TokenKind::Identifier;
}

Literal parse_literal(text::TokenStream& ts) {
    bool negated = false;
    if (ts.peek().is_word("not") && ts.peek(1).kind != text::TokenKind::Symbol) {
        ts.next();
        negated = true;
    }
    if (text::at_builtin(ts)) {
        Builtin b = text::parse_builtin(ts);
        return Literal::builtin(negated ? b.negated() : b);
    }
    if (ts.peek().kind != text::TokenKind::Identifier) ts.fail("expected literal");
    Atom a = text::parse_atom(ts);
    return negated ? Literal::neg(std::move(a)) : Literal::pos(std::move(a));
}

}  // namespace

Program parse_program(std::string_view source) {
    text::TokenStream ts(source);
    Program p;
    while (!ts.at_end()) {
        const auto start = ts.peek();
        Rule r;
        if (!ts.peek().is(":-")) {
            r.head.push_back(text::parse_atom(ts));
            while (head_separator(ts)) {
                ts.next();
                r.head.push_back(text::parse_atom(ts));
            }
        }
        if (ts.accept(":-")) {
            r.body.push_back(parse_literal(ts));
            while (ts.accept(",")) r.body.push_back(parse_literal(ts));
        }
        ts.expect(".");
        if (r.head.empty() && r.body.empty()) text::TokenStream::fail_at(start, "empty rule");
        try {
            check_safety(r);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), start.line, start.column);
        }
        p.rules.push_back(std::move(r));
    }
    p.signature();
    return p;
}

Program facts_program(const Instance& instance) {
    Program p;
    for (const auto& g : instance) {
        Atom a{g.predicate, {}};
        for (const auto& c : g.args) a.args.push_back(Term::constant(c));
        p.rules.push_back(Rule{{a}, {}});
    }
    return p;
}

AtomId AtomTable::intern(const GroundAtom& atom) {
    auto it = index_.find(atom);
    if (it != index_.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(atom);
    index_.emplace(atom, id);
    return id;
}

std::optional<AtomId> AtomTable::find(const GroundAtom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool GroundProgram::is_positive() const {
    return std::all_of(rules.begin(), rules.end(), [](const GroundRule& r) { return r.neg.empty(); });
}

AtomSet GroundProgram::herbrand_base() const {
    AtomSet out;
    std::vector<Constant> dom(domain.begin(), domain.end());
    for (const auto& [pred, arity] : signature) {
        if (arity > 0 && dom.empty()) continue;
        std::vector<std::size_t> idx(arity, 0);
        while (true) {
            GroundAtom a{pred, {}};
            for (auto i : idx) a.args.push_back(dom[i]);
            out.insert(std::move(a));
            std::size_t k = arity;
            while (k > 0 && ++idx[k - 1] == dom.size()) idx[--k] = 0;
            if (k == 0) break;
        }
    }
    return out;
}

std::string GroundProgram::str(const GroundRule& r, Dialect dialect) const {
    Rule out;
    auto to_atom = [&](AtomId id) {
        const auto& g = atoms.atom(id);
        Atom a{g.predicate, {}};
        for (const auto& c : g.args) a.args.push_back(Term::constant(c));
        return a;
    };
    for (auto h : r.head) out.head.push_back(to_atom(h));
    for (auto b : r.pos) out.body.push_back(Literal::pos(to_atom(b)));
    for (auto b : r.neg) out.body.push_back(Literal::neg(to_atom(b)));
    return out.str(dialect);
}

std::string GroundProgram::str(Dialect dialect) const {
    std::vector<std::string> lines;
    for (const auto& r : rules) lines.push_back(str(r, dialect));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

GroundProgram ground(const Program& program, const ConstantSet& domain, const Limits& limits) {
    GroundProgram gp;
    gp.signature = program.signature();
    gp.domain = domain;
    for (const auto& c : program.constants()) {
        if (!domain.count(c)) throw ValidationError("grounding domain lacks program constant " + c);
    }
    const std::vector<Constant> dom(domain.begin(), domain.end());

    std::size_t budget = 0;
    for (const auto& r : program.rules) {
        check_safety(r);
        std::size_t count = 1;
        for (std::size_t i = 0; i < r.variables().size(); ++i) {
            if (dom.empty()) {
                count = 0;
                break;
            }
            if (count > limits.max_ground_rules / dom.size() + 1) {
                throw GuardExceeded("grounding exceeds " + std::to_string(limits.max_ground_rules) + " rules");
            }
            count *= dom.size();
        }
        budget += count;
        if (budget > limits.max_ground_rules) {
            throw GuardExceeded("grounding exceeds " + std::to_string(limits.max_ground_rules) + " rules");
        }
    }

    std::set<GroundRule> seen;
    for (const auto& r : program.rules) {
        const auto vars = r.variables();
        if (!vars.empty() && dom.empty()) continue;
        std::vector<std::size_t> idx(vars.size(), 0);
        while (true) {
            Substitution s;
            for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = dom[idx[i]];
            bool keep = true;
            for (const auto& l : r.body) {
                if (l.is_builtin() && !evaluate_builtin(l.as_builtin(), s)) {
                    keep = false;
                    break;
                }
            }
            if (keep) {
                GroundRule g;
                for (const auto& h : r.head) g.head.push_back(gp.atoms.intern(ground_atom(h, s)));
                for (const auto& l : r.body) {
                    if (l.is_builtin()) continue;
                    auto id = gp.atoms.intern(ground_atom(l.atom(), s));
                    (l.negated ? g.neg : g.pos).push_back(id);
                }
                for (auto* v : {&g.head, &g.pos, &g.neg}) {
                    std::sort(v->begin(), v->end());
                    v->erase(std::unique(v->begin(), v->end()), v->end());
                }
                if (seen.insert(g).second) gp.rules.push_back(std::move(g));
            }
            std::size_t k = vars.size();
            while (k > 0 && ++idx[k - 1] == dom.size()) idx[--k] = 0;
            if (k == 0) break;
        }
    }
    return gp;
}

namespace {

bool holds(const GroundProgram& gp, AtomId id, const Interpretation& m) { return m.count(gp.atoms.atom(id)) != 0; }

}  // namespace

bool is_model(const GroundProgram& gp, const Interpretation& m) {
    for (const auto& r : gp.rules) {
        bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return holds(gp, a, m); }) &&
                    std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return holds(gp, a, m); });
        if (!body) continue;
        if (std::none_of(r.head.begin(), r.head.end(), [&](AtomId a) { return holds(gp, a, m); })) return false;
    }
    return true;
}

GroundProgram reduct(const GroundProgram& gp, const Interpretation& s) {
    GroundProgram out;
    out.atoms = gp.atoms;
    out.domain = gp.domain;
    out.signature = gp.signature;
    for (const auto& r : gp.rules) {
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return holds(gp, a, s); })) continue;
        out.rules.push_back(GroundRule{r.head, r.pos, {}});
    }
    return out;
}

std::set<Tuple> extension(const Interpretation& m, std::string_view predicate) {
    std::set<Tuple> out;
    for (auto it = m.lower_bound(GroundAtom{std::string(predicate), {}}); it != m.end() && it->predicate == predicate;
         ++it)
        out.insert(it->args);
    return out;
}

Interpretation project(const Interpretation& m, const std::set<std::string>& predicates) {
    Interpretation out;
    for (const auto& a : m)
        if (predicates.count(a.predicate)) out.insert(a);
    return out;
}

std::string format_interpretation(const Interpretation& m) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : m) {
        if (!first) out += ", ";
        first = false;
        out += a.str();
    }
    return out + "}";
}

}  // namespace cqa::asp
