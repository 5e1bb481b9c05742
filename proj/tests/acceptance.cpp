// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cqa/asp.hpp"
#include "cqa/cross_check.hpp"
#include "cqa/fd_rewrite.hpp"
#include "cqa/random_instances.hpp"
#include "cqa/repair_oracle.hpp"
#include "cqa/repair_program.hpp"
#include "cqa/theories.hpp"
#include "support/brute_force.hpp"

using namespace cqa;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

const Schema kP{{"P", 2}};
const Schema kPQ{{"P", 2}, {"Q", 2}};

Instance example1() { return Instance(kP, {{"P", {"a", "b"}}, {"P", {"a", "c"}}, {"P", {"d", "e"}}}); }

Instance example3() {
    return Instance(kPQ, {{"P", {"c", "l"}}, {"P", {"d", "m"}}, {"Q", {"d", "m"}}, {"Q", {"e", "k"}}});
}

std::set<AtomSet> repair_set(const std::vector<oracle::Repair>& rs) {
    std::set<AtomSet> out;
    for (const auto& r : rs) out.insert(r.instance.atoms());
    return out;
}

AtomSet delta_of(const oracle::Repair& r) {
    AtomSet out = r.deleted;
    out.insert(r.inserted.begin(), r.inserted.end());
    return out;
}

bool strictly_included(const AtomSet& a, const AtomSet& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Repairs read off the stable models of the generated program.
std::pair<std::set<AtomSet>, std::size_t> program_repairs(const Instance& d, const std::vector<Constraint>& ics,
                                                          const repair::GeneratorOptions& opts = {}) {
    repair::AnnotationScheme names(d.schema());
    auto rp = repair::gen_repair_program(ics, d.schema(), names, opts);
    auto program = asp::facts_program(d);
    program.append(rp.all());
    auto models = asp::stable_models(program);
    std::set<AtomSet> out;
    for (const auto& m : models) out.insert(repair::repair_of_model(m, d.schema(), names).atoms());
    return {out, models.size()};
}

Outcome criterion1() {
    auto t0 = Clock::now();
    auto d = example1();
    auto ics = parse_constraints("fd P : 1 -> 2.", kP);
    auto rs = oracle::repairs_bruteforce(d, ics);
    std::set<AtomSet> expected{{{"P", {"a", "b"}}, {"P", {"d", "e"}}}, {{"P", {"a", "c"}}, {"P", {"d", "e"}}}};
    bool ok = repair_set(rs) == expected;
    std::vector<std::pair<std::string, std::set<Tuple>>> queries{{"Ans(Y) :- P(X,Y).", {{"e"}}},
                                                                 {"Ans(X) :- P(X,Y).", {{"a"}, {"d"}}},
                                                                 {"Ans(X,Y) :- P(X,Y).", {{"d", "e"}}}};
    for (const auto& [text, answers] : queries) {
        auto q = repair::parse_query(text, kP);
        ok = ok && oracle::consistent_answers_over(rs, q) == answers;
        ok = ok && check::answers_via_program(d, ics, q).first == answers;
    }
    double s = seconds_since(t0);
    return {ok && s < 1.0, "2 repairs, 3 queries, " + fmt_seconds(s)};
}

Outcome criterion2() {
    auto d = example1();
    auto ics = parse_constraints("fd P : 1 -> 2.", kP);
    auto [got, models] = program_repairs(d, ics);
    bool ok = models == 2 && got == repair_set(oracle::repairs_bruteforce(d, ics));
    return {ok, std::to_string(models) + " stable models"};
}

Outcome criterion3() {
    auto d = example3();
    auto ics = parse_constraints("ic P(X,Y) -> Q(X,Y).", kPQ);
    AtomSet without = d.atoms();
    without.erase({"P", {"c", "l"}});
    AtomSet with = d.atoms();
    with.insert({"Q", {"c", "l"}});
    std::set<AtomSet> expected{without, with};
    auto oracle_rs = repair_set(oracle::repairs_bruteforce(d, ics));
    bool ok = oracle_rs == expected;
    for (bool faithful : {false, true}) {
        auto [got, models] = program_repairs(d, ics, {.faithful_appendix = faithful});
        ok = ok && models == 2 && got == expected;
    }
    return {ok, "2 stable models, both generator modes"};
}

Outcome criterion4() {
    auto t0 = Clock::now();
    std::size_t queries = 0, three_way = 0, disagreements = 0;
    for (int seed = 0; seed < 200; ++seed) {
        gen::Rng rng(seed);
        auto sc = gen::random_fd_scenario(rng);
        for (const auto& q : sc.queries) {
            auto report = check::cross_check(sc.instance, sc.ics, q);
            ++queries;
            bool all_ran = std::all_of(report.results.begin(), report.results.end(),
                                       [](const check::MethodResult& r) { return r.ran; });
            if (all_ran) ++three_way;
            if (!report.agreement) ++disagreements;
        }
    }
    double s = seconds_since(t0);
    std::ostringstream os;
    os << queries << " queries (" << three_way << " by all three methods), " << disagreements
       << " disagreements, " << fmt_seconds(s);
    return {disagreements == 0 && three_way > 0 && s < 60.0, os.str()};
}

Outcome criterion5() {
    std::size_t queries = 0, disagreements = 0;
    check::CrossCheckOptions opts;
    opts.methods = {check::Method::Enumerate, check::Method::Asp};
    for (int seed = 0; seed < 100; ++seed) {
        gen::Rng rng(seed);
        auto sc = gen::random_inclusion_scenario(rng, 16);
        for (const auto& q : sc.queries) {
            ++queries;
            if (!check::cross_check(sc.instance, sc.ics, q, opts).agreement) ++disagreements;
        }
    }
    return {disagreements == 0, std::to_string(queries) + " queries, " + std::to_string(disagreements) +
                                    " disagreements"};
}

Outcome criterion6() {
    gen::Rng rng(6);
    std::size_t candidates = 0, mismatches = 0, max_atoms = 0;
    for (int i = 0; i < 50; ++i) {
        auto p = gen::random_program(rng);
        auto gp = asp::ground(p, p.constants());
        auto atoms = bf::all_atoms(gp);
        max_atoms = std::max(max_atoms, atoms.size());
        if (atoms.size() > 12) return {false, "program with more than 12 ground atoms"};
        std::set<AtomSet> stable;
        for (const auto& m : asp::stable_models(gp)) stable.insert(m);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
            auto c = bf::to_atoms(gp, bf::from_mask(atoms, mask));
            ++candidates;
            if (logic::check_stable_so(p, c) != (stable.count(c) > 0)) ++mismatches;
        }
    }
    return {mismatches == 0, "50 programs, " + std::to_string(candidates) + " candidates, at most " +
                                 std::to_string(max_atoms) + " atoms, " + std::to_string(mismatches) +
                                 " mismatches"};
}

bool closure_bijection(const Instance& d, const std::vector<Constraint>& ics) {
    auto models = logic::prop2_models(ics, d);
    std::set<AtomSet> got;
    for (const auto& m : models) got.insert(logic::dstar_instance(m, d.schema()).atoms());
    return models.size() == got.size() && got == repair_set(oracle::repairs_bruteforce(d, ics));
}

Outcome criterion7() {
    std::size_t failures = closure_bijection(example1(), parse_constraints("fd P : 1 -> 2.", kP)) ? 0 : 1;
    gen::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        auto sc = gen::random_fd_scenario(rng);
        if (!closure_bijection(sc.instance, sc.ics)) ++failures;
    }
    return {failures == 0, "51 instances, " + std::to_string(failures) + " failures"};
}

bool witness_theory_ok(const Instance& d, const std::vector<FD>& fds) {
    auto models = rewrite::prop4_models(fds, d);
    const auto& fd = fds.front();
    std::set<AtomSet> got;
    for (const auto& m : models) {
        got.insert(logic::dstar_instance(m, d.schema()).atoms());
        const auto& deleted = m.extensions.at(fd.predicate.name + "_f");
        const auto& kept = m.extensions.at(fd.predicate.name + "_ds");
        for (const auto& t : deleted) {
            bool witnessed = std::any_of(kept.begin(), kept.end(), [&](const Tuple& k) {
                for (auto p : fd.lhs)
                    if (k[p - 1] != t[p - 1]) return false;
                return k[fd.rhs - 1] != t[fd.rhs - 1];
            });
            if (!witnessed) return false;
        }
    }
    std::vector<Constraint> ics(fds.begin(), fds.end());
    return models.size() == got.size() && got == repair_set(oracle::repairs_bruteforce(d, ics));
}

Outcome criterion8() {
    std::size_t failures = witness_theory_ok(example1(), *as_fds(parse_constraints("fd P : 1 -> 2.", kP))) ? 0 : 1;
    gen::Rng rng(8);
    gen::FdScenarioConfig cfg;
    cfg.max_predicates = 1;
    for (int i = 0; i < 50; ++i) {
        auto sc = gen::random_fd_scenario(rng, cfg);
        if (!witness_theory_ok(sc.instance, *as_fds(sc.ics))) ++failures;
    }
    return {failures == 0, "51 instances, " + std::to_string(failures) + " failures"};
}

bool layered(const Instance& d, const std::vector<Constraint>& ics, bool faithful, bool expect_hcf) {
    repair::AnnotationScheme names(d.schema());
    auto rp = repair::gen_repair_program(ics, d.schema(), names, {.faithful_appendix = faithful});
    std::set<std::string> base;
    for (const auto& p : d.schema().predicates()) base.insert(p.name);
    auto strat = asp::stratification(rp.without_constraints(), base);
    if (!strat) return false;
    for (const auto& [pred, level] : strat->level) {
        std::size_t expected = 0;
        if (!base.count(pred)) {
            if (!names.is_generated(pred)) return false;
            expected = names.base_of_dstar(pred) ? 2 : 1;
        }
        if (level != expected) return false;
    }
    return !expect_hcf || asp::is_hcf(rp.all());
}

Outcome criterion9() {
    std::size_t programs = 0, failures = 0;
    auto run = [&](const Instance& d, const std::vector<Constraint>& ics, bool fd) {
        for (bool faithful : {false, true}) {
            ++programs;
            if (!layered(d, ics, faithful, fd)) ++failures;
        }
    };
    run(example1(), parse_constraints("fd P : 1 -> 2.", kP), true);
    run(example3(), parse_constraints("ic P(X,Y) -> Q(X,Y).", kPQ), false);
    gen::Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        auto sc = gen::random_fd_scenario(rng);
        run(sc.instance, sc.ics, true);
        auto inc = gen::random_inclusion_scenario(rng);
        run(inc.instance, inc.ics, false);
    }
    return {failures == 0, std::to_string(programs) + " programs, " + std::to_string(failures) + " failures"};
}

/// Reduct, minimal models and stable models against the subset-enumeration oracle.
bool definitions_agree(const asp::GroundProgram& gp, std::mt19937_64& rng) {
    auto atoms = bf::all_atoms(gp);
    std::set<AtomSet> expected;
    for (const auto& ids : bf::stable_models(gp)) expected.insert(bf::to_atoms(gp, ids));
    auto models = asp::stable_models(gp);
    if (std::set<AtomSet>(models.begin(), models.end()) != expected) return false;
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t j = 0; j < models.size(); ++j)
            if (i != j && strictly_included(models[i], models[j])) return false;
    const std::uint64_t total = std::uint64_t{1} << atoms.size();
    for (int k = 0; k < 16; ++k) {
        auto ids = bf::from_mask(atoms, rng() % total);
        auto s = bf::to_atoms(gp, ids);
        auto red = asp::reduct(gp, s);
        auto red_bf = bf::reduct(gp, ids);
        if (std::set<asp::GroundRule>(red.rules.begin(), red.rules.end()) !=
            std::set<asp::GroundRule>(red_bf.begin(), red_bf.end()))
            return false;
        if (asp::is_model(gp, s) != bf::is_model(gp.rules, ids)) return false;
        std::set<AtomSet> mins;
        for (const auto& m : asp::minimal_models(red)) mins.insert(m);
        std::set<AtomSet> mins_bf;
        for (const auto& m : bf::minimal_models(red_bf, atoms)) mins_bf.insert(bf::to_atoms(gp, m));
        if (mins != mins_bf) return false;
    }
    return true;
}

Outcome criterion10() {
    std::size_t checked = 0, failures = 0, repair_sets = 0;
    std::mt19937_64 pick(10);
    gen::Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        auto p = gen::random_program(rng);
        auto gp = asp::ground(p, p.constants());
        if (gp.atoms.size() > 14) continue;
        ++checked;
        if (!definitions_agree(gp, pick)) ++failures;
    }
    for (int i = 0; i < 100; ++i) {
        auto sc = i % 2 ? gen::random_fd_scenario(rng) : gen::random_inclusion_scenario(rng);
        auto rs = oracle::repairs_bruteforce(sc.instance, sc.ics);
        ++repair_sets;
        for (std::size_t a = 0; a < rs.size(); ++a)
            for (std::size_t b = 0; b < rs.size(); ++b)
                if (a != b && strictly_included(delta_of(rs[a]), delta_of(rs[b]))) ++failures;
        repair::AnnotationScheme names(sc.instance.schema());
        auto program = asp::facts_program(sc.instance);
        program.append(repair::gen_repair_program(sc.ics, sc.instance.schema(), names).all());
        auto gp = asp::ground(program, program.constants());
        if (gp.atoms.size() > 14) continue;
        ++checked;
        if (!definitions_agree(gp, pick)) ++failures;
    }
    return {failures == 0, std::to_string(checked) + " ground programs of at most 14 atoms, " +
                               std::to_string(repair_sets) + " repair sets, " + std::to_string(failures) +
                               " failures"};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"three-tuple instance: repairs and consistent answers", criterion1},
        {"fd repair program models match the repairs", criterion2},
        {"inclusion repair program models match the oracle", criterion3},
        {"random fd instances: enumerate = asp = rewrite", criterion4},
        {"random inclusion instances: enumerate = asp", criterion5},
        {"second-order stable sentence = stable models", criterion6},
        {"closure models in bijection with repairs", criterion7},
        {"witness theory models and invariant", criterion8},
        {"repair programs layered and head-cycle free", criterion9},
        {"property suite", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
