#include <catch_amalgamated.hpp>

#include "cqa/error.hpp"
#include "cqa/relational.hpp"

using namespace cqa;

TEST_CASE("fact files parse into an instance with an inferred schema") {
    auto d = parse_fact_file("P(a,b).\nP(a,c). % comment\nP(d,e).\nR(\"New York\", 3).");
    CHECK(d.size() == 4);
    CHECK(d.schema().arity("P") == 2);
    CHECK(d.contains(GroundAtom{"R", {"New York", "3"}}));
    CHECK(d.extension("P") == std::set<Tuple>{{"a", "b"}, {"a", "c"}, {"d", "e"}});
}

TEST_CASE("printing round-trips, including declared constants") {
    auto d = parse_fact_file("domain f, g.\nP(a,b).\nQ(\"x y\").");
    CHECK(d.schema().declared_constants() == ConstantSet{"f", "g"});
    auto again = parse_fact_file(print_instance(d));
    CHECK(again == d);
    CHECK(again.schema() == d.schema());
}

TEST_CASE("fact file errors carry positions") {
    try {
        parse_fact_file("P(a,b).\nP(a).");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
    }
    CHECK_THROWS_AS(parse_fact_file("P(X,b)."), ParseError);
    CHECK_THROWS_AS(parse_fact_file("P(a,b)"), ParseError);
    CHECK_THROWS_AS(parse_fact_file("Q(a).", Schema{{"P", 1}}), ParseError);
}

TEST_CASE("instances reject atoms outside the schema") {
    Instance d(Schema{{"P", 2}});
    CHECK_THROWS_AS(d.insert(GroundAtom{"P", {"a"}}), ValidationError);
    CHECK_THROWS_AS(d.insert(GroundAtom{"Q", {"a"}}), ValidationError);
    Schema s{{"P", 2}};
    CHECK_THROWS_AS(s.add({"P", 3}), ValidationError);
}

TEST_CASE("CSV relations follow RFC 4180 quoting") {
    auto rows = read_csv_relation("name,city\n\"Smith, J\",\"say \"\"hi\"\"\"\nLee,Paris\n", "R", true);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].args == Tuple{"Smith, J", "say \"hi\""});
    CHECK(rows[1].args == Tuple{"Lee", "Paris"});
    CHECK_THROWS(read_csv_relation("a,b\nc\n", "R", false));
}

TEST_CASE("active domain and symmetric difference") {
    auto d = parse_fact_file("P(a,b). P(a,c). P(d,e).");
    CHECK(active_domain(d) == ConstantSet{"a", "b", "c", "d", "e"});
    CHECK(active_domain(d, {"z"}).count("z") == 1);

    Instance r(d.schema(), {GroundAtom{"P", {"a", "b"}}, GroundAtom{"P", {"d", "e"}}, GroundAtom{"P", {"x", "y"}}});
    auto delta = instance_delta(d, r);
    CHECK(delta.deleted == AtomSet{GroundAtom{"P", {"a", "c"}}});
    CHECK(delta.inserted == AtomSet{GroundAtom{"P", {"x", "y"}}});
    CHECK(delta.symmetric().size() == 2);
    CHECK_THROWS_AS(instance_delta(d, Instance(Schema{{"Q", 1}})), ValidationError);
}
