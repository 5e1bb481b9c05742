#include <catch_amalgamated.hpp>

#include <random>

#include "cqa/error.hpp"
#include "cqa/formula.hpp"

using namespace cqa;
using namespace cqa::logic;

namespace {

FiniteStructure structure() {
    FiniteStructure s;
    s.domain = {"a", "b", "c"};
    s.extensions["P"] = {{"a"}, {"b"}};
    s.extensions["Q"] = {{"a"}};
    s.extensions["R"] = {{"a", "b"}, {"b", "c"}};
    return s;
}

bool holds(const std::string& text) { return eval(structure(), parse_formula(text)); }

Formula random_formula(std::mt19937& rng, int depth, std::vector<std::string>& scope) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    auto term = [&]() {
        if (!scope.empty() && pick(3) > 0) return Term::var(scope[pick(static_cast<int>(scope.size()))]);
        return Term::constant(std::string(1, static_cast<char>('a' + pick(3))));
    };
    if (depth == 0) {
        switch (pick(5)) {
            case 0: return atom("P", {term()});
            case 1: return atom("R", {term(), term()});
            case 2: return eq(term(), term());
            case 3: return neq(term(), term());
            default: return pick(2) ? top() : bot();
        }
    }
    switch (pick(7)) {
        case 0: return neg(random_formula(rng, depth - 1, scope));
        case 1: return conj({random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope)});
        case 2: return disj({random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope)});
        case 3: return implies(random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope));
        case 4: return iff(random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope));
        default: {
            std::string v = "V" + std::to_string(scope.size());
            scope.push_back(v);
            auto body = random_formula(rng, depth - 1, scope);
            scope.pop_back();
            return pick(2) ? forall({v}, body) : exists({v}, body);
        }
    }
}

}  // namespace

TEST_CASE("connective precedence and associativity") {
    auto f = parse_formula("p | q & r");
    REQUIRE(f->kind == NodeKind::Or);
    CHECK(f->children[1]->kind == NodeKind::And);
    auto g = parse_formula("p -> q -> r");
    REQUIRE(g->kind == NodeKind::Implies);
    CHECK(g->children[1]->kind == NodeKind::Implies);
    CHECK(equal(parse_formula("~p & q"), conj({neg(atom("p", {})), atom("q", {})})));
    CHECK(print(parse_formula("(p | q) & r")) == "(p | q) & r");
}

TEST_CASE("quantifiers, equality and free variables") {
    auto f = parse_formula("forall X (P(X) -> exists Y (R(X,Y) & Y != X))");
    CHECK(free_variables(f).empty());
    CHECK(free_variables(parse_formula("exists Y (R(X,Y))")) == std::set<std::string>{"X"});
    CHECK(predicates(f) == std::map<std::string, std::size_t>{{"P", 1}, {"R", 2}});
    CHECK(print(f, Notation::Unicode).find("∀") != std::string::npos);
}

TEST_CASE("truth in a finite structure") {
    CHECK(holds("forall X (Q(X) -> P(X))"));
    CHECK_FALSE(holds("forall X (P(X) -> Q(X))"));
    CHECK(holds("exists X,Y (R(X,Y) & P(Y))"));
    CHECK_FALSE(holds("exists X (R(X,X))"));
    CHECK(holds("a != b & b = b"));
    CHECK(holds("forall X (X = a | X = b | X = c)"));
    CHECK(holds("top & ~bot"));
    CHECK(eval(structure(), parse_formula("P(X)"), Substitution{{"X", "b"}}));
}

TEST_CASE("second-order quantification ranges over subsets of the bound") {
    CHECK(holds("exists2 U/1 <= P (U(a) & ~U(b))"));
    CHECK_FALSE(holds("exists2 U/1 <= Q (U(b))"));
    // some subset of P is a singleton
    CHECK(holds("exists2 U/1 <= P (exists X (U(X)) & forall X,Y (U(X) & U(Y) -> X = Y))"));
    CHECK(holds("exists2 U/2 <= R, V/1 <= P (U(a,b) & ~V(a) & V(b))"));
}

TEST_CASE("evaluation errors and guards") {
    CHECK_THROWS_AS(holds("P(X)"), ValidationError);
    CHECK_THROWS_AS(holds("S(a)"), ValidationError);
    CHECK_THROWS_AS(holds("exists2 U/1 (U(a))"), ValidationError);
    auto s = structure();
    for (int i = 0; i < 30; ++i) s.extensions["Big"].insert({"x" + std::to_string(i)});
    CHECK_THROWS_AS(eval(s, parse_formula("exists2 U/1 <= Big (bot)")), GuardExceeded);
    CHECK_THROWS_AS(parse_formula("forall X (P(X)"), ParseError);
}

TEST_CASE("printed formulas re-parse to the same tree and truth value") {
    std::mt19937 rng(11);
    auto s = structure();
    for (int i = 0; i < 300; ++i) {
        std::vector<std::string> scope;
        auto f = random_formula(rng, 4, scope);
        auto text = print(f);
        INFO(text);
        auto g = parse_formula(text);
        CHECK(print(g) == text);
        CHECK(eval(s, f) == eval(s, g));
    }
}
