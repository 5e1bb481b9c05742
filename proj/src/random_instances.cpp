#include "cqa/random_instances.hpp"

#include <algorithm>

namespace cqa::gen {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

GroundAtom random_atom(Rng& rng, const PredicateSig& p, const std::vector<Constant>& dom) {
    GroundAtom a{p.name, {}};
    for (std::size_t i = 0; i < p.arity; ++i) a.args.push_back(dom[uniform(rng, 0, dom.size() - 1)]);
    return a;
}

std::string vars_text(std::size_t n) {
    static const char* names[] = {"X", "Y", "Z"};
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += std::string(i ? "," : "") + names[i];
    return out;
}

}  // namespace

std::vector<Constant> constants(std::size_t count) {
    std::vector<Constant> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i));
    }
    return out;
}

Scenario random_fd_scenario(Rng& rng, const FdScenarioConfig& config) {
    static const char* names[] = {"P", "R", "S"};
    Schema schema;
    std::vector<FD> fds;
    const std::size_t npred = uniform(rng, 1, std::min<std::size_t>(config.max_predicates, 3));
    for (std::size_t i = 0; i < npred; ++i) {
        PredicateSig p{names[i], uniform(rng, 2, 3)};
        schema.add(p);
        FD fd{p, {}, 0};
        if (p.arity == 2) {
            fd.lhs = {1};
            fd.rhs = 2;
        } else {
            fd.lhs = coin(rng, 0.5) ? std::vector<std::size_t>{1} : std::vector<std::size_t>{1, 2};
            fd.rhs = fd.lhs.size() == 2 ? 3 : uniform(rng, 2, 3);
        }
        fds.push_back(fd);
    }

    auto dom = constants(uniform(rng, 1, config.max_domain));
    Instance d(schema);
    const auto preds = schema.predicates();
    const std::size_t target = uniform(rng, 0, config.max_atoms);
    for (std::size_t i = 0; i < target; ++i) d.insert(random_atom(rng, preds[uniform(rng, 0, preds.size() - 1)], dom));

    Scenario s{d, {}, {}};
    for (const auto& fd : fds) s.ics.emplace_back(fd);
    for (const auto& p : preds) {
        std::string vars = vars_text(p.arity);
        s.queries.push_back(repair::parse_query("Ans(" + vars + ") :- " + p.name + "(" + vars + ").", schema));
        // one position fixed to a constant
        std::size_t fixed = uniform(rng, 0, p.arity - 1);
        std::string head, body;
        static const char* names_v[] = {"X", "Y", "Z"};
        for (std::size_t i = 0; i < p.arity; ++i) {
            body += std::string(i ? "," : "") + (i == fixed ? dom[uniform(rng, 0, dom.size() - 1)] : names_v[i]);
            if (i != fixed) head += std::string(head.empty() ? "" : ",") + names_v[i];
        }
        s.queries.push_back(repair::parse_query("Ans(" + head + ") :- " + p.name + "(" + body + ").", schema));
    }
    return s;
}

Scenario random_inclusion_scenario(Rng& rng, std::size_t max_herbrand) {
    const bool binary = coin(rng, 0.5) && max_herbrand >= 8;
    const std::size_t arity = binary ? 2 : 1;
    std::size_t max_dom = 1;
    while (2 * ((max_dom + 1) * (arity == 2 ? max_dom + 1 : 1)) <= max_herbrand) ++max_dom;
    auto dom = constants(uniform(rng, 1, max_dom));

    Schema schema{{"P", arity}, {"Q", arity}};
    Instance d(schema);
    const std::size_t per_pred = arity == 2 ? dom.size() * dom.size() : dom.size();
    for (const auto& p : schema.predicates()) {
        const std::size_t n = uniform(rng, 0, per_pred);
        for (std::size_t i = 0; i < n; ++i) d.insert(random_atom(rng, p, dom));
    }

    std::string v = vars_text(arity);
    Scenario s{d, parse_constraints("ic P(" + v + ") -> Q(" + v + ").", schema), {}};
    s.queries.push_back(repair::parse_query("Ans(" + v + ") :- Q(" + v + ").", schema));
    s.queries.push_back(repair::parse_query("Ans(" + v + ") :- P(" + v + ").", schema));
    if (arity == 2) {
        s.queries.push_back(repair::parse_query("Ans(X) :- P(X,Y), not Q(X,Y).\nAns(X) :- Q(X,Y), P(X,Y).", schema));
        s.queries.push_back(repair::parse_query("Ans(X) :- Q(X,Y).", schema));
    } else {
        s.queries.push_back(repair::parse_query("Ans(X) :- Q(X), not P(X).", schema));
    }
    return s;
}

asp::Program random_program(Rng& rng, const ProgramConfig& config) {
    // Ground atoms: p(a), p(b), q(a), q(b), r, s, t, w.
    static const char* unary[] = {"p", "q"};
    static const char* props[] = {"r", "s", "t", "w"};
    static const char* consts[] = {"a", "b"};

    auto random_atom_text = [&](bool allow_var) -> std::string {
        std::size_t pick = uniform(rng, 0, 5);
        if (pick < 2) {
            std::string arg = allow_var && coin(rng, 0.5) ? "X" : consts[uniform(rng, 0, 1)];
            return std::string(unary[pick]) + "(" + arg + ")";
        }
        return props[pick - 2];
    };

    std::string text = "p(a).\n";
    const std::size_t nrules = uniform(rng, 2, config.max_rules);
    for (std::size_t r = 0; r < nrules; ++r) {
        std::vector<std::string> head, body;
        std::size_t nhead = uniform(rng, 0, config.max_head);
        if (nhead == 0 && coin(rng, 0.6)) nhead = 1;
        for (std::size_t i = 0; i < nhead; ++i) head.push_back(random_atom_text(true));
        const std::size_t nbody = uniform(rng, nhead == 0 ? 1 : 0, config.max_body);
        for (std::size_t i = 0; i < nbody; ++i) body.push_back((coin(rng, 0.35) ? "not " : "") + random_atom_text(true));

        bool uses_x = false, bound_x = false;
        for (const auto& h : head) uses_x |= h.find("(X)") != std::string::npos;
        for (const auto& b : body) {
            if (b.find("(X)") == std::string::npos) continue;
            uses_x = true;
            bound_x |= b.rfind("not ", 0) != 0;
        }
        if (uses_x && !bound_x) body.push_back(std::string(unary[uniform(rng, 0, 1)]) + "(X)");

        std::string rule;
        for (std::size_t i = 0; i < head.size(); ++i) rule += (i ? " v " : "") + head[i];
        if (!body.empty()) {
            rule += head.empty() ? ":- " : " :- ";
            for (std::size_t i = 0; i < body.size(); ++i) rule += (i ? ", " : "") + body[i];
        }
        text += rule + ".\n";
    }
    return asp::parse_program(text);
}

}  // namespace cqa::gen
