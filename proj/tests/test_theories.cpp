#include <catch_amalgamated.hpp>

#include "cqa/error.hpp"
#include "cqa/random_instances.hpp"
#include "cqa/repair_oracle.hpp"
#include "cqa/theories.hpp"
#include "support/brute_force.hpp"

using namespace cqa;
using namespace cqa::logic;

namespace {

const Schema kP{{"P", 2}};

Instance example1() { return Instance(kP, {{"P", {"a", "b"}}, {"P", {"a", "c"}}, {"P", {"d", "e"}}}); }

const char* kExample1Program =
    "P(a,b). P(a,c). P(d,e).\n"
    "P_f(X,Y) v P_f(X,Z) :- P(X,Y), P(X,Z), Y != Z.\n"
    "P_ds(X,Y) :- P(X,Y), not P_f(X,Y).\n"
    "Ans(X,Y) :- P_ds(X,Y).\n";

FiniteStructure structure_of(const asp::Interpretation& m, const ConstantSet& domain,
                             const std::map<std::string, std::size_t>& preds) {
    FiniteStructure s;
    s.domain = domain;
    for (const auto& [p, _] : preds) s.declare(p);
    for (const auto& a : m) s.extensions[a.predicate].insert(a.args);
    return s;
}

std::set<AtomSet> oracle_instances(const Instance& d, const std::vector<Constraint>& ics) {
    std::set<AtomSet> out;
    for (const auto& r : oracle::repairs_bruteforce(d, ics)) out.insert(r.instance.atoms());
    return out;
}

}  // namespace

TEST_CASE("reconstruction theory pins the instance down") {
    auto d = example1();
    auto t = reiter_theory(d);
    REQUIRE(t.find("dca"));
    REQUIRE(t.find("una"));
    REQUIRE(t.find("completion_P"));
    auto s = FiniteStructure::from_instance(d);
    CHECK(eval(s, t.conjunction()));
    // adding or removing any single atom breaks the completion
    for (const auto& x : s.domain)
        for (const auto& y : s.domain) {
            auto s2 = s;
            auto& ext = s2.extensions["P"];
            if (!ext.erase({x, y})) ext.insert({x, y});
            CHECK_FALSE(eval(s2, t.find("completion_P")->formula));
        }
}

TEST_CASE("theories print and re-parse") {
    auto t = prop2_closure(parse_constraints("fd P : 1 -> 2.", kP), example1());
    auto text = emit_theory(t);
    auto back = parse_theory(text);
    REQUIRE(back.entries.size() == t.entries.size());
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        CHECK(back.entries[i].name == t.entries[i].name);
        CHECK(back.entries[i].tag == t.entries[i].tag);
        CHECK(equal(back.entries[i].formula, t.entries[i].formula));
    }
    CHECK(emit_theory(back) == text);
    Theory dup;
    dup.add("x", "", top());
    CHECK_THROWS_AS(dup.add("x", "", bot()), ValidationError);
}

TEST_CASE("program sentence holds in its stable models") {
    auto p = asp::parse_program(kExample1Program);
    auto psi = psi_of_program(p);
    auto preds = predicates(psi);
    auto models = asp::stable_models(p);
    REQUIRE(models.size() == 2);
    for (const auto& m : models) CHECK(eval(structure_of(m, p.constants(), preds), psi));
}

TEST_CASE("circle transform") {
    std::map<std::string, std::string> vm{{"p", "Xp"}};
    auto f = parse_formula("~p & (q -> p)");
    auto simplified = circle_transform(f, vm, true);
    CHECK(print(simplified) == "~p & ((q -> Xp) & (q -> p))");
    auto full = circle_transform(f, vm, false);
    CHECK(print(full) == "((Xp -> bot) & (p -> bot)) & ((q -> Xp) & (q -> p))");
}

TEST_CASE("stable sentence accepts exactly the stable models of the example program") {
    auto p = asp::parse_program(kExample1Program);
    for (const auto& m : asp::stable_models(p)) CHECK(check_stable_so(p, m));
    // deleting both conflicting tuples gives a model that is not minimal
    auto gp = asp::ground(p, p.constants());
    asp::Interpretation both{{"P", {"a", "b"}}, {"P", {"a", "c"}}, {"P", {"d", "e"}}, {"P_f", {"a", "b"}},
                             {"P_f", {"a", "c"}}, {"P_ds", {"d", "e"}}, {"Ans", {"d", "e"}}};
    CHECK(asp::is_model(gp, both));
    CHECK_FALSE(check_stable_so(p, both));
}

TEST_CASE("stable sentence agrees with the solver on random programs") {
    gen::Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        auto p = gen::random_program(rng);
        auto gp = asp::ground(p, p.constants());
        auto atoms = bf::all_atoms(gp);
        std::set<AtomSet> expected;
        for (const auto& m : asp::stable_models(gp)) expected.insert(m);
        std::set<AtomSet> got;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
            auto candidate = bf::to_atoms(gp, bf::from_mask(atoms, mask));
            if (check_stable_so(p, candidate)) got.insert(candidate);
        }
        INFO(p.str());
        CHECK(got == expected);
    }
}

TEST_CASE("parallel and prioritized circumscription") {
    auto sigma = parse_formula("P(a) | P(b)");
    auto circ = circumscribe(sigma, {{"P", 1}}, {});
    std::set<std::set<Tuple>> models;
    for (int mask = 0; mask < 4; ++mask) {
        FiniteStructure s;
        s.domain = {"a", "b"};
        s.declare("P");
        if (mask & 1) s.extensions["P"].insert({"a"});
        if (mask & 2) s.extensions["P"].insert({"b"});
        if (eval(s, circ)) models.insert(s.extensions["P"]);
    }
    CHECK(models == std::set<std::set<Tuple>>{{{"a"}}, {{"b"}}});
    CHECK_THROWS_AS(circumscribe(sigma, {{"P", 1}}, {{"P", 1}}), ValidationError);
    CHECK(equal(circumscribe(sigma, {}, {}), sigma));
    auto prio = circumscribe(parse_formula("P(a) | Q(a)"), {{"P", 1}, {"Q", 1}}, {}, Preorder::Prioritized);
    FiniteStructure s;
    s.domain = {"a"};
    s.extensions["P"] = {};
    s.extensions["Q"] = {{"a"}};
    CHECK_THROWS_AS(eval(s, prio), ValidationError);
}

TEST_CASE("closure models correspond to repairs") {
    for (const auto& [d, ics_text] :
         std::vector<std::pair<Instance, std::string>>{{example1(), "fd P : 1 -> 2."},
                                                       {Instance(Schema{{"P", 2}, {"Q", 2}},
                                                                 {{"P", {"c", "l"}}, {"P", {"d", "m"}},
                                                                  {"Q", {"d", "m"}}, {"Q", {"e", "k"}}}),
                                                        "ic P(X,Y) -> Q(X,Y)."}}) {
        auto ics = parse_constraints(ics_text, d.schema());
        std::set<AtomSet> got;
        auto models = prop2_models(ics, d);
        for (const auto& m : models) got.insert(dstar_instance(m, d.schema()).atoms());
        CHECK(models.size() == got.size());
        CHECK(got == oracle_instances(d, ics));
    }
}
