#include "cqa/error.hpp"
#include "cqa/formula.hpp"
#include "cqa/lexer.hpp"

namespace cqa::logic {

namespace {

struct Symbols {
    const char* conj;
    const char* disj;
    const char* implies;
    const char* iff;
    const char* neg;
    const char* forall;
    const char* exists;
    const char* exists2;
    const char* bot;
    const char* top;
    const char* neq;
    const char* leq;
};

constexpr Symbols kAscii{" & ", " | ", " -> ", " <-> ", "~", "forall ", "exists ", "exists2 ", "bot", "top", " != ", " <= "};
constexpr Symbols kUnicode{" ∧ ", " ∨ ", " → ", " ↔ ", "¬", "∀", "∃", "∃²", "⊥", "⊤", " ≠ ", " ≤ "};

int precedence(const Formula& f) {
    switch (f->kind) {
    case NodeKind::Iff:
        return 1;
    case NodeKind::Implies:
        return 2;
    case NodeKind::Or:
        return 3;
    case NodeKind::And:
        return 4;
    default:
        return 5;
    }
}

std::string term_text(const Term& t) { return t.is_variable() ? t.name : text::quote_constant(t.name); }

class Printer {
public:
    explicit Printer(const Symbols& sym) : sym_(sym) {}

    std::string print(const Formula& f) {
        switch (f->kind) {
        case NodeKind::Atom: {
            std::string out = f->predicate;
            if (!f->args.empty()) {
                out += "(";
                for (std::size_t i = 0; i < f->args.size(); ++i) out += (i ? "," : "") + term_text(f->args[i]);
                out += ")";
            }
            return out;
        }
        case NodeKind::Eq:
            return term_text(f->args[0]) + " = " + term_text(f->args[1]);
        case NodeKind::Neq:
            return term_text(f->args[0]) + sym_.neq + term_text(f->args[1]);
        case NodeKind::Bot:
            return sym_.bot;
        case NodeKind::Top:
            return sym_.top;
        case NodeKind::Not:
            return sym_.neg + operand(f->children[0], 4);
        case NodeKind::And:
            return join(f, sym_.conj, 4);
        case NodeKind::Or:
            return join(f, sym_.disj, 3);
        case NodeKind::Implies:
            return join(f, sym_.implies, 2);
        case NodeKind::Iff:
            return join(f, sym_.iff, 1);
        case NodeKind::Forall:
        case NodeKind::Exists: {
            std::string out = f->kind == NodeKind::Forall ? sym_.forall : sym_.exists;
            for (std::size_t i = 0; i < f->vars.size(); ++i) out += (i ? "," : "") + f->vars[i];
            return out + " (" + print(f->children[0]) + ")";
        }
        case NodeKind::Exists2: {
            std::string out = sym_.exists2;
            for (std::size_t i = 0; i < f->pred_vars.size(); ++i) {
                const auto& pv = f->pred_vars[i];
                out += (i ? ", " : "") + pv.name + "/" + std::to_string(pv.arity);
                if (pv.bound) out += sym_.leq + *pv.bound;
            }
            return out + " (" + print(f->children[0]) + ")";
        }
        }
        return {};
    }

private:
    std::string operand(const Formula& f, int parent) {
        return precedence(f) <= parent ? "(" + print(f) + ")" : print(f);
    }

    std::string join(const Formula& f, const char* op, int level) {
        std::string out;
        for (std::size_t i = 0; i < f->children.size(); ++i) {
            if (i) out += op;
            out += operand(f->children[i], level);
        }
        return out;
    }

    const Symbols& sym_;
};

class Parser {
public:
    explicit Parser(std::string_view input) : ts_(input) {}

    Formula parse_all() {
        Formula f = formula();
        if (!ts_.at_end()) ts_.fail("unexpected token after formula");
        return f;
    }

    Formula formula() {
        Formula lhs = implication();
        if (ts_.accept("<->")) return iff(lhs, implication());
        return lhs;
    }

    text::TokenStream& stream() { return ts_; }

private:
    Formula implication() {
        Formula lhs = disjunction();
        if (ts_.accept("->")) return implies(lhs, implication());
        return lhs;
    }

    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (ts_.accept("|")) parts.push_back(conjunction());
        return parts.size() == 1 ? parts.front() : disj(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (ts_.accept("&")) parts.push_back(unary());
        return parts.size() == 1 ? parts.front() : conj(std::move(parts));
    }

    Formula unary() {
        if (ts_.accept("~")) return neg(unary());
        if (ts_.accept("(")) {
            Formula f = formula();
            ts_.expect(")");
            return f;
        }
        const auto& tok = ts_.peek();
        const bool quantifier_follows = ts_.peek(1).kind == text::TokenKind::Identifier;
        if (quantifier_follows && (tok.is_word("forall") || tok.is_word("exists"))) {
            NodeKind kind = ts_.next().is_word("forall") ? NodeKind::Forall : NodeKind::Exists;
            std::vector<std::string> vars;
            do {
                auto v = ts_.expect_identifier();
                if (!text::is_variable_name(v.text)) text::TokenStream::fail_at(v, "quantified name must be a variable");
                vars.push_back(v.text);
            } while (ts_.accept(","));
            Formula body = parenthesized();
            return kind == NodeKind::Forall ? forall(std::move(vars), body) : exists(std::move(vars), body);
        }
        if (quantifier_follows && tok.is_word("exists2")) {
            ts_.next();
            std::vector<PredVar> vars;
            do {
                PredVar pv;
                pv.name = ts_.expect_identifier().text;
                ts_.expect("/");
                auto n = ts_.next();
                if (n.kind != text::TokenKind::Number) text::TokenStream::fail_at(n, "expected arity");
                pv.arity = std::stoul(n.text);
                if (ts_.accept("<=")) pv.bound = ts_.expect_identifier().text;
                vars.push_back(std::move(pv));
            } while (ts_.accept(","));
            return exists2(std::move(vars), parenthesized());
        }
        if (text::at_builtin(ts_)) {
            auto b = text::parse_builtin(ts_);
            return b.op == BuiltinOp::Eq ? eq(b.lhs, b.rhs) : neq(b.lhs, b.rhs);
        }
        if (tok.is_word("bot") && !ts_.peek(1).is("(")) {
            ts_.next();
            return bot();
        }
        if (tok.is_word("top") && !ts_.peek(1).is("(")) {
            ts_.next();
            return top();
        }
        if (tok.kind != text::TokenKind::Identifier) ts_.fail("expected formula");
        return atom(text::parse_atom(ts_));
    }

    Formula parenthesized() {
        ts_.expect("(");
        Formula f = formula();
        ts_.expect(")");
        return f;
    }

    text::TokenStream ts_;
};

}  // namespace

std::string print(const Formula& f, Notation notation) {
    return Printer(notation == Notation::Unicode ? kUnicode : kAscii).print(f);
}

Formula parse_formula(std::string_view input) { return Parser(input).parse_all(); }

}  // namespace cqa::logic
