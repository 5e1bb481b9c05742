#include <catch_amalgamated.hpp>

#include "cqa/constraints.hpp"
#include "cqa/error.hpp"

using namespace cqa;

namespace {
const Schema kSchema{{"P", 2}, {"Q", 2}, {"R", 3}};
}

TEST_CASE("constraint DSL covers fds, keys, universal constraints and denials") {
    auto cs = parse_constraints(
        "fd P : 1 -> 2.\n"
        "key R : 1.\n"
        "ic P(X,Y) -> Q(X,Y).\n"
        "denial Q(X,Y), Q(Y,X), X != Y.\n",
        kSchema);
    REQUIRE(cs.size() == 4);
    CHECK(std::holds_alternative<FD>(cs[0]));
    CHECK(std::get<KeyConstraint>(cs[1]).expand().size() == 2);
    CHECK_FALSE(std::get<UniversalConstraint>(cs[2]).is_denial());
    const auto& denial = std::get<UniversalConstraint>(cs[3]);
    CHECK(denial.is_denial());
    // the body builtin moves to the head, negated
    REQUIRE(denial.head_builtin.size() == 1);
    CHECK(denial.head_builtin[0].op == BuiltinOp::Eq);
    CHECK_FALSE(denial_only(cs));
    CHECK(to_universal(cs).size() == 5);
}

TEST_CASE("constraint DSL validation") {
    CHECK_THROWS_AS(parse_constraints("fd P : 1 -> 1.", kSchema), ParseError);
    CHECK_THROWS_AS(parse_constraints("fd P : 1 -> 3.", kSchema), ParseError);
    CHECK_THROWS_AS(parse_constraints("ic P(X,Y) -> Q(X,Z).", kSchema), ParseError);
    CHECK_THROWS_AS(parse_constraints("ic S(X) -> P(X,X).", kSchema), ParseError);
    Schema open;
    auto cs = parse_constraints_extending("ic S(X) -> T(X).", open);
    CHECK(open.arity("T") == 1);
    CHECK(cs.size() == 1);
}

TEST_CASE("FDs become denials with an equality head") {
    FD fd{{"P", 2}, {1}, 2};
    auto u = fd_to_constraint(fd);
    CHECK(u.is_denial());
    CHECK(u.body.size() == 2);
    CHECK(u.head_builtin.size() == 1);
    auto fds = as_fds({fd, KeyConstraint{{"R", 3}, {1, 2}}});
    REQUIRE(fds);
    CHECK(fds->size() == 2);
    CHECK_FALSE(as_fds({UniversalConstraint{}}).has_value());
}

TEST_CASE("violations of the FD on Example 1") {
    auto d = parse_fact_file("P(a,b). P(a,c). P(d,e).");
    auto u = fd_to_constraint(FD{{"P", 2}, {1}, 2});
    auto vs = violations(d, u);
    // both orientations of the conflicting pair
    CHECK(vs.size() == 2);
    CHECK_FALSE(satisfies(d, {u}));
    Instance repaired(d.schema(), {GroundAtom{"P", {"a", "b"}}, GroundAtom{"P", {"d", "e"}}});
    CHECK(satisfies(repaired, {u}));
}

TEST_CASE("violations of an inclusion constraint on Example 3") {
    auto d = parse_fact_file("P(c,l). P(d,m). Q(d,m). Q(e,k).");
    auto cs = parse_constraints("ic P(X,Y) -> Q(X,Y).", d.schema());
    auto vs = violations(d, std::get<UniversalConstraint>(cs[0]));
    REQUIRE(vs.size() == 1);
    CHECK(vs.begin()->at("X") == "c");
    CHECK(vs.begin()->at("Y") == "l");
}

TEST_CASE("constraint constants are collected") {
    auto cs = parse_constraints("denial P(X,a), Q(X,b).", kSchema);
    CHECK(constraint_constants(cs) == ConstantSet{"a", "b"});
    CHECK(denial_only(cs));
}
