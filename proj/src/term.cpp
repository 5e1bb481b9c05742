#include "cqa/term.hpp"

#include <algorithm>

#include "cqa/error.hpp"

namespace cqa {

std::string Term::str() const { return is_variable() ? name : text::quote_constant(name); }

std::string Atom::str() const {
    if (args.empty()) return predicate;
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += args[i].str();
    }
    return out + ")";
}

std::string Builtin::str() const { return lhs.str() + (op == BuiltinOp::Eq ? " = " : " != ") + rhs.str(); }

Constant ground_term(const Term& t, const Substitution& s) {
    if (!t.is_variable()) return t.name;
    auto it = s.find(t.name);
    if (it == s.end()) throw ValidationError("unbound variable " + t.name);
    return it->second;
}

GroundAtom ground_atom(const Atom& a, const Substitution& s) {
    GroundAtom g{a.predicate, {}};
    g.args.reserve(a.args.size());
    for (const auto& t : a.args) g.args.push_back(ground_term(t, s));
    return g;
}

bool evaluate_builtin(const Builtin& b, const Substitution& s) {
    bool equal = ground_term(b.lhs, s) == ground_term(b.rhs, s);
    return b.op == BuiltinOp::Eq ? equal : !equal;
}

bool match_atom(const Atom& pattern, const GroundAtom& fact, Substitution& s) {
    if (pattern.predicate != fact.predicate || pattern.args.size() != fact.args.size()) return false;
    std::vector<std::string> bound_here;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& t = pattern.args[i];
        if (!t.is_variable()) {
            if (t.name != fact.args[i]) goto fail;
            continue;
        }
        if (auto it = s.find(t.name); it != s.end()) {
            if (it->second != fact.args[i]) goto fail;
        } else {
            s.emplace(t.name, fact.args[i]);
            bound_here.push_back(t.name);
        }
    }
    return true;
fail:
    for (const auto& v : bound_here) s.erase(v);
    return false;
}

namespace {
void add_var(const Term& t, std::vector<std::string>& out) {
    if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
}
}  // namespace

void collect_variables(const Atom& a, std::vector<std::string>& out) {
    for (const auto& t : a.args) add_var(t, out);
}

void collect_variables(const Builtin& b, std::vector<std::string>& out) {
    add_var(b.lhs, out);
    add_var(b.rhs, out);
}

void collect_constants(const Atom& a, ConstantSet& out) {
    for (const auto& t : a.args)
        if (!t.is_variable()) out.insert(t.name);
}

void collect_constants(const Builtin& b, ConstantSet& out) {
    if (!b.lhs.is_variable()) out.insert(b.lhs.name);
    if (!b.rhs.is_variable()) out.insert(b.rhs.name);
}

std::string format_substitution(const Substitution& s) {
    std::string out = "(";
    bool first = true;
    for (const auto& [k, v] : s) {
        if (!first) out += ",";
        first = false;
        out += k + "=" + text::quote_constant(v);
    }
    return out + ")";
}

namespace text {

Term parse_term(TokenStream& ts) {
    const Token& tok = ts.peek();
    switch (tok.kind) {
        case TokenKind::Identifier:
            if (is_variable_name(tok.text)) return Term::var(ts.next().text);
            return Term::constant(ts.next().text);
        case TokenKind::Number:
        case TokenKind::String:
            return Term::constant(ts.next().text);
        default:
            ts.fail("expected term");
    }
}

Atom parse_atom(TokenStream& ts) {
    Atom a{ts.expect_identifier().text, {}};
    if (ts.accept("(")) {
        a.args.push_back(parse_term(ts));
        while (ts.accept(",")) a.args.push_back(parse_term(ts));
        ts.expect(")");
    }
    return a;
}

bool at_builtin(const TokenStream& ts) {
    const Token& first = ts.peek();
    if (first.kind == TokenKind::End || first.kind == TokenKind::Symbol) return false;
    const Token& op = ts.peek(1);
    return op.is("=") || op.is("!=");
}

Builtin parse_builtin(TokenStream& ts) {
    Builtin b;
    b.lhs = parse_term(ts);
    if (ts.accept("=")) {
        b.op = BuiltinOp::Eq;
    } else if (ts.accept("!=")) {
        b.op = BuiltinOp::Neq;
    } else {
        ts.fail("expected '=' or '!='");
    }
    b.rhs = parse_term(ts);
    return b;
}

}  // namespace text

}  // namespace cqa
