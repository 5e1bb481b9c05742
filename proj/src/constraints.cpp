#include "cqa/constraints.hpp"

#include <algorithm>
#include <functional>

#include "cqa/error.hpp"
#include "cqa/lexer.hpp"

namespace cqa {

namespace {

std::string join_atoms(const std::vector<Atom>& atoms, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += sep;
        out += atoms[i].str();
    }
    return out;
}

std::string join_positions(const std::vector<std::size_t>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ps[i]);
    }
    return out;
}

}  // namespace

std::vector<std::string> UniversalConstraint::variables() const {
    std::vector<std::string> out;
    for (const auto& a : body) collect_variables(a, out);
    return out;
}

ConstantSet UniversalConstraint::constants() const {
    ConstantSet out;
    for (const auto& a : body) collect_constants(a, out);
    for (const auto& a : head_atoms) collect_constants(a, out);
    for (const auto& b : head_builtin) collect_constants(b, out);
    return out;
}

std::string UniversalConstraint::str() const {
    if (is_denial()) {
        std::string out = "denial " + join_atoms(body, ", ");
        for (const auto& b : head_builtin) out += ", " + b.negated().str();
        return out + ".";
    }
    std::string out = "ic " + join_atoms(body, ", ") + " -> " + join_atoms(head_atoms, " | ");
    for (const auto& b : head_builtin) out += " | " + b.str();
    return out + ".";
}

std::string FD::str() const {
    return "fd " + predicate.name + " : " + join_positions(lhs) + " -> " + std::to_string(rhs) + ".";
}

std::string KeyConstraint::str() const { return "key " + predicate.name + " : " + join_positions(key) + "."; }

std::vector<FD> KeyConstraint::expand() const {
    std::vector<FD> out;
    for (std::size_t p = 1; p <= predicate.arity; ++p) {
        if (!std::binary_search(key.begin(), key.end(), p)) out.push_back({predicate, key, p});
    }
    return out;
}

std::string constraint_str(const Constraint& c) {
    return std::visit([](const auto& v) { return v.str(); }, c);
}

namespace {

class ConstraintParser {
public:
    ConstraintParser(std::string_view text, Schema& schema, bool extend)
        : ts_(text), schema_(schema), extend_(extend) {}

    std::vector<Constraint> run() {
        std::vector<Constraint> out;
        while (!ts_.at_end()) {
            const auto kw = ts_.peek();
            if (ts_.accept_word("fd")) {
                out.push_back(parse_fd());
            } else if (ts_.accept_word("key")) {
                out.push_back(parse_key());
            } else if (ts_.accept_word("ic")) {
                out.push_back(parse_ic(kw));
            } else if (ts_.accept_word("denial")) {
                out.push_back(parse_denial(kw));
            } else {
                ts_.fail("expected 'fd', 'key', 'ic' or 'denial'");
            }
        }
        return out;
    }

private:
    PredicateSig known_predicate() {
        auto tok = ts_.expect_identifier();
        if (!schema_.contains(tok.text)) text::TokenStream::fail_at(tok, "unknown predicate " + tok.text);
        return {tok.text, schema_.arity(tok.text)};
    }

    std::vector<std::size_t> positions(const PredicateSig& p) {
        std::vector<std::size_t> out;
        do {
            const auto tok = ts_.peek();
            if (tok.kind != text::TokenKind::Number) ts_.fail("expected position");
            ts_.next();
            std::size_t pos = std::stoul(tok.text);
            if (pos < 1 || pos > p.arity) {
                text::TokenStream::fail_at(tok, "position " + tok.text + " out of range for " + p.name + "/" +
                                                    std::to_string(p.arity));
            }
            out.push_back(pos);
        } while (ts_.accept(","));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    FD parse_fd() {
        FD fd;
        fd.predicate = known_predicate();
        ts_.expect(":");
        fd.lhs = positions(fd.predicate);
        ts_.expect("->");
        const auto tok = ts_.peek();
        auto rhs = positions(fd.predicate);
        if (rhs.size() != 1) {
            text::TokenStream::fail_at(tok, "an fd has a single right-hand position; declare several fds");
        }
        fd.rhs = rhs.front();
        if (std::binary_search(fd.lhs.begin(), fd.lhs.end(), fd.rhs)) {
            text::TokenStream::fail_at(tok, "right-hand position also occurs on the left");
        }
        ts_.expect(".");
        return fd;
    }

    KeyConstraint parse_key() {
        KeyConstraint k;
        k.predicate = known_predicate();
        ts_.expect(":");
        k.key = positions(k.predicate);
        ts_.expect(".");
        return k;
    }

    Atom checked_atom() {
        const auto tok = ts_.peek();
        Atom a = text::parse_atom(ts_);
        if (!schema_.contains(a.predicate)) {
            if (!extend_) text::TokenStream::fail_at(tok, "unknown predicate " + a.predicate);
            schema_.add({a.predicate, a.args.size()});
        }
        if (schema_.arity(a.predicate) != a.args.size()) {
            text::TokenStream::fail_at(tok, "arity mismatch for " + a.predicate);
        }
        return a;
    }

    void parse_body(UniversalConstraint& c, bool allow_builtins) {
        do {
            if (text::at_builtin(ts_)) {
                if (!allow_builtins) ts_.fail("built-in not allowed here");
                c.head_builtin.push_back(text::parse_builtin(ts_).negated());
            } else {
                c.body.push_back(checked_atom());
            }
        } while (ts_.accept(","));
    }

    void check_ranged(const UniversalConstraint& c, const text::Token& at) {
        if (c.body.empty()) text::TokenStream::fail_at(at, "constraint body needs a database atom");
        auto ranged = c.variables();
        std::vector<std::string> used;
        for (const auto& a : c.head_atoms) collect_variables(a, used);
        for (const auto& b : c.head_builtin) collect_variables(b, used);
        for (const auto& v : used) {
            if (std::find(ranged.begin(), ranged.end(), v) == ranged.end()) {
                text::TokenStream::fail_at(at, "unranged head variable " + v);
            }
        }
    }

    UniversalConstraint parse_ic(const text::Token& at) {
        UniversalConstraint c;
        parse_body(c, true);
        ts_.expect("->");
        do {
            if (text::at_builtin(ts_)) {
                c.head_builtin.push_back(text::parse_builtin(ts_));
            } else {
                c.head_atoms.push_back(checked_atom());
            }
        } while (ts_.accept("|"));
        ts_.expect(".");
        check_ranged(c, at);
        return c;
    }

    UniversalConstraint parse_denial(const text::Token& at) {
        UniversalConstraint c;
        parse_body(c, true);
        ts_.expect(".");
        check_ranged(c, at);
        return c;
    }

    text::TokenStream ts_;
    Schema& schema_;
    bool extend_;
};

}  // namespace

std::vector<Constraint> parse_constraints(std::string_view text, const Schema& schema) {
    Schema copy = schema;
    return ConstraintParser(text, copy, false).run();
}

std::vector<Constraint> parse_constraints_extending(std::string_view text, Schema& schema) {
    return ConstraintParser(text, schema, true).run();
}

UniversalConstraint fd_to_constraint(const FD& fd) {
    Atom first{fd.predicate.name, {}}, second{fd.predicate.name, {}};
    for (std::size_t p = 1; p <= fd.predicate.arity; ++p) {
        auto lhs_it = std::find(fd.lhs.begin(), fd.lhs.end(), p);
        if (lhs_it != fd.lhs.end()) {
            std::string name =
                fd.lhs.size() == 1 ? "X" : "X" + std::to_string(1 + (lhs_it - fd.lhs.begin()));
            first.args.push_back(Term::var(name));
            second.args.push_back(Term::var(name));
        } else if (p == fd.rhs) {
            first.args.push_back(Term::var("Y1"));
            second.args.push_back(Term::var("Y2"));
        } else {
            first.args.push_back(Term::var("U" + std::to_string(p)));
            second.args.push_back(Term::var("V" + std::to_string(p)));
        }
    }
    UniversalConstraint c;
    c.body = {first, second};
    c.head_builtin = {Builtin{BuiltinOp::Eq, Term::var("Y1"), Term::var("Y2")}};
    return c;
}

std::vector<UniversalConstraint> to_universal(const Constraint& c) {
    struct Visitor {
        std::vector<UniversalConstraint> operator()(const UniversalConstraint& u) const { return {u}; }
        std::vector<UniversalConstraint> operator()(const FD& fd) const { return {fd_to_constraint(fd)}; }
        std::vector<UniversalConstraint> operator()(const KeyConstraint& k) const {
            std::vector<UniversalConstraint> out;
            for (const auto& fd : k.expand()) out.push_back(fd_to_constraint(fd));
            return out;
        }
    };
    return std::visit(Visitor{}, c);
}

std::vector<UniversalConstraint> to_universal(const std::vector<Constraint>& cs) {
    std::vector<UniversalConstraint> out;
    for (const auto& c : cs) {
        auto part = to_universal(c);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::optional<std::vector<FD>> as_fds(const std::vector<Constraint>& cs) {
    std::vector<FD> out;
    for (const auto& c : cs) {
        if (const auto* fd = std::get_if<FD>(&c)) {
            out.push_back(*fd);
        } else if (const auto* key = std::get_if<KeyConstraint>(&c)) {
            auto part = key->expand();
            out.insert(out.end(), part.begin(), part.end());
        } else {
            return std::nullopt;
        }
    }
    return out;
}

bool denial_only(const std::vector<Constraint>& cs) {
    for (const auto& u : to_universal(cs))
        if (!u.is_denial()) return false;
    return true;
}

ConstantSet constraint_constants(const std::vector<Constraint>& cs) {
    ConstantSet out;
    for (const auto& u : to_universal(cs)) {
        auto part = u.constants();
        out.insert(part.begin(), part.end());
    }
    return out;
}

std::set<Substitution> violations(const Instance& instance, const UniversalConstraint& c) {
    std::set<Substitution> out;
    std::vector<std::vector<GroundAtom>> candidates;
    for (const auto& a : c.body) {
        std::vector<GroundAtom> facts;
        for (const auto& t : instance.extension(a.predicate)) facts.push_back({a.predicate, t});
        candidates.push_back(std::move(facts));
    }
    Substitution s;
    std::function<void(std::size_t)> join = [&](std::size_t i) {
        if (i == c.body.size()) {
            for (const auto& h : c.head_atoms)
                if (instance.contains(ground_atom(h, s))) return;
            for (const auto& b : c.head_builtin)
                if (evaluate_builtin(b, s)) return;
            out.insert(s);
            return;
        }
        for (const auto& fact : candidates[i]) {
            Substitution saved = s;
            if (match_atom(c.body[i], fact, s)) join(i + 1);
            s = std::move(saved);
        }
    };
    join(0);
    return out;
}

bool satisfies(const Instance& instance, const std::vector<UniversalConstraint>& cs) {
    for (const auto& c : cs)
        if (!violations(instance, c).empty()) return false;
    return true;
}

}  // namespace cqa
