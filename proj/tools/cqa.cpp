#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cqa/asp.hpp"
#include "cqa/constraints.hpp"
#include "cqa/cross_check.hpp"
#include "cqa/error.hpp"
#include "cqa/fd_rewrite.hpp"
#include "cqa/random_instances.hpp"
#include "cqa/relational.hpp"
#include "cqa/repair_oracle.hpp"
#include "cqa/repair_program.hpp"
#include "cqa/theories.hpp"

namespace {

using namespace cqa;
using json = nlohmann::ordered_json;

enum Exit { Ok = 0, Usage = 1, Disagreement = 2, Guard = 3, Inconsistent = 4 };

struct Options {
    std::string db, ic, query, program;
    std::vector<std::string> csv;
    bool csv_header = false;
    std::string dialect = "dlv";
    bool as_json = false;
    std::optional<std::uint64_t> seed;
    std::size_t max_ground_rules = asp::Limits{}.max_ground_rules;
    std::size_t max_undetermined = asp::Limits{}.max_undetermined_atoms;
    std::size_t max_search_nodes = asp::Limits{}.max_search_nodes;
    std::size_t max_herbrand = oracle::OracleLimits{}.max_herbrand_atoms;
    std::size_t max_deletion = oracle::OracleLimits{}.max_deletion_candidates;
    bool faithful_appendix = false;
    bool explicit_una = false;
    bool timing = false;

    // subcommand options
    bool count = false;
    std::string repair_method = "bruteforce";
    std::vector<std::string> project;
    std::string cautious;
    std::string method = "asp";
    bool explain = false;
    std::string kind = "reiter";
    std::string preorder = "parallel";
    bool unicode = false;
    bool with_query = false;
    std::vector<std::string> methods{"enumerate", "asp", "rewrite"};

    asp::Limits asp_limits() const { return {max_ground_rules, max_undetermined, max_search_nodes}; }
    oracle::OracleLimits oracle_limits() const { return {max_deletion, max_herbrand}; }
    asp::Dialect asp_dialect() const { return dialect == "clingo" ? asp::Dialect::Clingo : asp::Dialect::Dlv; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Inputs {
    Instance d;
    std::vector<Constraint> ics;
    std::optional<repair::QuerySpec> query;
};

Inputs load(const Options& o, bool need_db = true) {
    Schema schema;
    AtomSet atoms;
    if (!o.db.empty()) {
        auto d = parse_fact_file(read_file(o.db));
        schema = d.schema();
        atoms = d.atoms();
    }
    for (const auto& spec : o.csv) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationError("--csv expects PRED=path, got " + spec);
        std::string pred = spec.substr(0, eq);
        for (auto& a : read_csv_relation(read_file(spec.substr(eq + 1)), pred, o.csv_header)) {
            schema.add({a.predicate, a.args.size()});
            atoms.insert(std::move(a));
        }
    }
    if (need_db && o.db.empty() && o.csv.empty()) throw ValidationError("an instance is required (--db or --csv)");

    Inputs in;
    if (!o.ic.empty()) in.ics = parse_constraints_extending(read_file(o.ic), schema);
    in.d = Instance(schema, atoms);
    if (!o.query.empty()) in.query = repair::parse_query(read_file(o.query), schema);
    return in;
}

repair::QuerySpec require_query(const Inputs& in) {
    if (!in.query) throw ValidationError("--query is required");
    return *in.query;
}

json tuples_json(const std::set<Tuple>& ts) {
    auto out = json::array();
    for (const auto& t : ts) out.push_back(t);
    return out;
}

json atoms_json(const AtomSet& atoms) {
    auto out = json::array();
    for (const auto& a : atoms) out.push_back(a.str());
    return out;
}

std::string atoms_text(const AtomSet& atoms) {
    if (atoms.empty()) return "(none)";
    std::string out;
    for (const auto& a : atoms) out += (out.empty() ? "" : " ") + a.str();
    return out;
}

void print_answers(const std::set<Tuple>& answers) {
    for (const auto& t : answers) std::cout << format_tuple(t) << "\n";
}

int cmd_repairs(const Options& o) {
    auto in = load(o);
    std::vector<oracle::Repair> repairs;
    if (o.repair_method == "conflict") {
        auto fds = as_fds(in.ics);
        if (!fds) throw ValidationError("--method conflict needs FD or key constraints only");
        repairs = oracle::repairs_fd_conflicts(in.d, *fds);
    } else {
        repairs = oracle::repairs_bruteforce(in.d, in.ics, o.oracle_limits());
    }
    if (o.as_json) {
        json j;
        j["count"] = repairs.size();
        if (!o.count) {
            auto list = json::array();
            for (const auto& r : repairs) {
                list.push_back({{"instance", atoms_json(r.instance.atoms())},
                                {"deleted", atoms_json(r.deleted)},
                                {"inserted", atoms_json(r.inserted)}});
            }
            j["repairs"] = list;
        }
        std::cout << j.dump(2) << "\n";
        return Ok;
    }
    if (o.count) {
        std::cout << repairs.size() << "\n";
        return Ok;
    }
    for (std::size_t i = 0; i < repairs.size(); ++i) {
        std::cout << "% repair " << i + 1 << "\n" << print_instance(repairs[i].instance);
        std::cout << "% deleted: " << atoms_text(repairs[i].deleted) << "\n";
        std::cout << "% inserted: " << atoms_text(repairs[i].inserted) << "\n\n";
    }
    return Ok;
}

/// Repair program for the inputs; the schema comes from the instance when
/// present and from the constraints otherwise.
struct GeneratedProgram {
    repair::AnnotationScheme names;
    repair::RepairProgram program;
    std::optional<repair::QuerySpec> starred;
};

GeneratedProgram generate(const Inputs& in, const Options& o) {
    std::set<std::string> reserved;
    if (in.query) reserved = in.query->intensional();
    GeneratedProgram g{repair::AnnotationScheme(in.d.schema(), reserved), {}, std::nullopt};
    g.program = repair::gen_repair_program(in.ics, in.d.schema(), g.names,
                                           repair::GeneratorOptions{o.faithful_appendix});
    if (in.query) g.starred = repair::star_query(*in.query, in.d.schema(), g.names);
    return g;
}

int cmd_gen_program(const Options& o) {
    auto in = load(o, false);
    auto g = generate(in, o);
    std::cout << g.program.str(o.asp_dialect());
    if (o.with_query || g.starred) {
        if (g.starred) std::cout << "\n% query\n" << g.starred->rules.str(o.asp_dialect());
    }
    if (!in.d.empty()) std::cout << "\n% database facts\n" << asp::facts_program(in.d).str(o.asp_dialect());
    return Ok;
}

int cmd_solve(const Options& o) {
    asp::Program program;
    std::optional<repair::AnnotationScheme> names;
    if (!o.program.empty()) {
        program = asp::parse_program(read_file(o.program));
    } else {
        auto in = load(o);
        auto g = generate(in, o);
        program = asp::facts_program(in.d);
        program.append(g.program.all());
        if (g.starred) program.append(g.starred->rules);
    }
    auto models = asp::stable_models(program, o.asp_limits());
    std::set<std::string> projection(o.project.begin(), o.project.end());
    if (!o.cautious.empty()) {
        auto answers = asp::cautious_answers(models, o.cautious);
        if (o.as_json) {
            std::cout << json{{"models", models.size()}, {"cautious", tuples_json(answers)}}.dump(2) << "\n";
        } else {
            print_answers(answers);
        }
        return Ok;
    }
    if (o.count) {
        if (o.as_json) std::cout << json{{"models", models.size()}}.dump(2) << "\n";
        else std::cout << models.size() << "\n";
        return Ok;
    }
    if (o.as_json) {
        auto list = json::array();
        for (const auto& m : models) list.push_back(atoms_json(projection.empty() ? m : asp::project(m, projection)));
        std::cout << json{{"models", list}}.dump(2) << "\n";
        return Ok;
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto shown = projection.empty() ? models[i] : asp::project(models[i], projection);
        std::cout << "Answer " << i + 1 << ": " << asp::format_interpretation(shown) << "\n";
    }
    if (models.empty()) std::cout << "no stable models\n";
    return Ok;
}

int cmd_answer(const Options& o) {
    auto in = load(o);
    auto q = require_query(in);
    auto method = check::parse_method(o.method);
    if (!method) throw ValidationError("unknown method " + o.method);
    std::set<Tuple> answers;
    json j;
    switch (*method) {
    case check::Method::Enumerate:
        answers = oracle::consistent_answers_enum(in.d, in.ics, q, o.oracle_limits(), o.asp_limits());
        break;
    case check::Method::Asp:
        answers = check::answers_via_program(in.d, in.ics, q, o.asp_limits()).first;
        break;
    case check::Method::Rewrite: {
        auto fds = as_fds(in.ics);
        if (!fds) throw ValidationError("rewrite not applicable: some constraint is not an FD or key");
        auto r = rewrite::rewrite_query(q, *fds);
        if (!r.applicable) throw ValidationError("rewrite not applicable: " + r.reason);
        answers = rewrite::answers_via_rewrite(in.d, *fds, q);
        if (o.as_json) {
            j["rewritten"] = logic::print(r.rewritten);
            if (o.explain) j["explanation"] = r.explanation;
        } else {
            std::cout << "% rewritten: " << logic::print(r.rewritten) << "\n";
            if (o.explain)
                for (const auto& line : r.explanation) std::cout << "% " << line << "\n";
        }
        break;
    }
    }
    if (o.as_json) {
        j["method"] = o.method;
        j["answers"] = tuples_json(answers);
        std::cout << j.dump(2) << "\n";
    } else {
        print_answers(answers);
    }
    return Ok;
}

int cmd_emit_theory(const Options& o) {
    const auto notation = o.unicode ? logic::Notation::Unicode : logic::Notation::Ascii;
    logic::Theory t;
    auto repair_program = [&](const Inputs& in) {
        auto g = generate(in, o);
        asp::Program p = asp::facts_program(in.d);
        p.append(g.program.all());
        if (g.starred) p.append(g.starred->rules);
        return p;
    };
    if (o.kind == "reiter") {
        auto in = load(o);
        t = logic::reiter_theory(in.d);
    } else if (o.kind == "psi" || o.kind == "phi") {
        asp::Program p;
        if (!o.program.empty()) p = asp::parse_program(read_file(o.program));
        else p = repair_program(load(o));
        if (o.kind == "psi") t.add("psi", "psi", logic::psi_of_program(p));
        else t.add("phi", "stable", logic::phi_stable(p));
    } else if (o.kind == "circ") {
        auto in = load(o);
        auto g = generate(in, o);
        asp::Program sigma = asp::facts_program(in.d);
        sigma.append(g.program.repair_rules);
        const auto sig = sigma.signature();
        std::vector<PredicateSig> minimized;
        for (const auto& p : in.d.schema().predicates()) {
            for (const auto& name : {g.names.of(p.name).f, g.names.of(p.name).t}) {
                if (sig.count(name)) minimized.push_back({name, p.arity});
            }
        }
        auto preorder = o.preorder == "prioritized" ? logic::Preorder::Prioritized : logic::Preorder::Parallel;
        t.add("circ", "circ", logic::circumscribe(logic::psi_of_program(sigma), minimized, {}, preorder));
    } else if (o.kind == "prop2") {
        auto in = load(o);
        t = logic::prop2_closure(in.ics, in.d, logic::ClosureOptions{o.explicit_una});
    } else if (o.kind == "prop4") {
        auto in = load(o);
        auto fds = as_fds(in.ics);
        if (!fds) throw ValidationError("prop4 needs FD or key constraints only");
        t = rewrite::prop4_theory(*fds, in.d);
    } else {
        throw ValidationError("unknown theory kind " + o.kind);
    }
    if (o.explicit_una && (o.kind == "psi" || o.kind == "phi" || o.kind == "circ" || o.kind == "prop4")) {
        auto in = load(o);
        logic::Theory with_una;
        for (const auto& e : logic::reiter_theory(in.d).entries)
            if (e.tag == "DCA" || e.tag == "UNA") with_una.add(e.name, e.tag, e.formula);
        with_una.append(t);
        t = with_una;
    }
    if (o.as_json) {
        auto list = json::array();
        for (const auto& e : t.entries) {
            list.push_back({{"name", e.name}, {"tag", e.tag}, {"formula", logic::print(e.formula, notation)}});
        }
        std::cout << json{{"notes", t.notes}, {"entries", list}}.dump(2) << "\n";
    } else {
        std::cout << logic::emit_theory(t, notation);
    }
    return Ok;
}

int cmd_analyze(const Options& o) {
    asp::Program program;
    std::optional<std::set<std::string>> extensional;
    if (!o.program.empty()) {
        program = asp::parse_program(read_file(o.program));
    } else {
        auto in = load(o, false);
        auto g = generate(in, o);
        program = g.program.without_constraints();
        if (g.starred) program.append(g.starred->rules);
        std::set<std::string> base;
        for (const auto& p : in.d.schema().predicates()) base.insert(p.name);
        extensional = base;
    }
    auto strat = asp::stratification(program, extensional);
    const bool hcf = asp::is_hcf(program);
    if (o.as_json) {
        json j;
        j["stratified"] = strat.has_value();
        if (strat) {
            auto strata = json::array();
            for (const auto& s : strat->strata) strata.push_back(s);
            j["strata"] = strata;
        }
        j["hcf"] = hcf;
        std::cout << j.dump(2) << "\n";
        return Ok;
    }
    std::cout << "stratified: " << (strat ? "yes" : "no") << "\n";
    if (strat) {
        for (std::size_t i = 0; i < strat->strata.size(); ++i) {
            std::cout << "  stratum " << i << ":";
            for (const auto& p : strat->strata[i]) std::cout << " " << p;
            std::cout << "\n";
        }
    }
    std::cout << "head-cycle free: " << (hcf ? "yes" : "no") << "\n";
    return Ok;
}

int cmd_check(const Options& o) {
    Inputs in;
    if (o.db.empty() && o.csv.empty()) {
        if (!o.seed) throw ValidationError("check needs --db/--csv or --seed");
        gen::Rng rng(*o.seed);
        auto s = gen::random_fd_scenario(rng);
        in.d = s.instance;
        in.ics = s.ics;
        in.query = s.queries.front();
        if (!o.as_json) {
            std::cout << "% generated instance (seed " << *o.seed << ")\n" << print_instance(in.d);
            for (const auto& c : in.ics) std::cout << "% " << constraint_str(c) << "\n";
            std::cout << "% " << in.query->rules.str();
        }
    } else {
        in = load(o);
    }
    auto q = require_query(in);
    check::CrossCheckOptions opts;
    opts.methods.clear();
    for (const auto& name : o.methods) {
        auto m = check::parse_method(name);
        if (!m) throw ValidationError("unknown method " + name);
        opts.methods.insert(*m);
    }
    opts.oracle_limits = o.oracle_limits();
    opts.asp_limits = o.asp_limits();
    auto report = check::cross_check(in.d, in.ics, q, opts);
    if (o.as_json) std::cout << report.json(o.timing).dump(2) << "\n";
    else std::cout << report.text(o.timing);
    return report.agreement ? Ok : Disagreement;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Consistent query answering: repairs, repair programs, theories and rewritings"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_option("--db", o.db, "Fact file with the database instance");
    app.add_option("--ic", o.ic, "Integrity constraint file");
    app.add_option("--query", o.query, "Datalog query with answer predicate Ans");
    app.add_option("--csv", o.csv, "Relation from CSV, as PRED=path (repeatable)");
    app.add_flag("--csv-header", o.csv_header, "CSV files start with a header row");
    app.add_option("--dialect", o.dialect, "Program output dialect")->check(CLI::IsMember({"dlv", "clingo"}));
    app.add_flag("--json", o.as_json, "Machine-readable output");
    app.add_option("--seed", o.seed, "Seed for generated instances");
    app.add_option("--max-ground-rules", o.max_ground_rules, "Grounding guard");
    app.add_option("--max-undetermined", o.max_undetermined, "Guard on atoms the solver may branch on");
    app.add_option("--max-search-nodes", o.max_search_nodes, "Guard on solver search nodes");
    app.add_option("--max-herbrand", o.max_herbrand, "Guard on the Herbrand base for insertion repairs");
    app.add_option("--max-deletion-atoms", o.max_deletion, "Guard on instance size for deletion repairs");
    app.add_flag("--faithful-appendix", o.faithful_appendix,
                 "Generate t-annotation rules and program constraints even for denials");
    app.add_flag("--explicit-una", o.explicit_una, "Add domain closure and unique names to emitted theories");
    app.add_flag("--timing", o.timing, "Include per-method timings in reports");

    auto* repairs = app.add_subcommand("repairs", "Enumerate repairs by definition");
    repairs->add_flag("--count", o.count, "Print only the number of repairs");
    repairs->add_option("--method", o.repair_method, "bruteforce or conflict (FDs only)")
        ->check(CLI::IsMember({"bruteforce", "conflict"}));

    auto* gen_program = app.add_subcommand("gen-program", "Print the repair program");
    gen_program->add_flag("--with-query", o.with_query, "Append the starred query rules");

    auto* solve = app.add_subcommand("solve", "Stable models of a program or of the repair program");
    solve->add_option("--program", o.program, "Program file instead of --db/--ic");
    solve->add_option("--project", o.project, "Show only these predicates")->delimiter(',');
    solve->add_option("--cautious", o.cautious, "Print tuples of this predicate true in every model");
    solve->add_flag("--count", o.count, "Print only the number of models");

    auto* answer = app.add_subcommand("answer", "Consistent answers by one method");
    answer->add_option("--method", o.method, "enumerate, asp or rewrite")
        ->check(CLI::IsMember({"enumerate", "asp", "rewrite"}));
    answer->add_flag("--explain", o.explain, "Name the FD behind each negative conjunct");

    auto* emit = app.add_subcommand("emit-theory", "Print a classical theory");
    emit->add_option("--kind", o.kind, "reiter, psi, phi, circ, prop2 or prop4")
        ->check(CLI::IsMember({"reiter", "psi", "phi", "circ", "prop2", "prop4"}));
    emit->add_option("--program", o.program, "Program for psi/phi instead of the repair program");
    emit->add_option("--preorder", o.preorder, "parallel or prioritized (circ)")
        ->check(CLI::IsMember({"parallel", "prioritized"}));
    emit->add_flag("--unicode", o.unicode, "Use logical symbols");

    auto* analyze = app.add_subcommand("analyze", "Stratification and head-cycle-freeness");
    analyze->add_option("--program", o.program, "Program file instead of the repair program");

    auto* check = app.add_subcommand("check", "Cross-check the methods");
    check->add_option("--methods", o.methods, "Subset of enumerate,asp,rewrite")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Usage;
    }

    try {
        if (*repairs) return cmd_repairs(o);
        if (*gen_program) return cmd_gen_program(o);
        if (*solve) return cmd_solve(o);
        if (*answer) return cmd_answer(o);
        if (*emit) return cmd_emit_theory(o);
        if (*analyze) return cmd_analyze(o);
        if (*check) return cmd_check(o);
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return Guard;
    } catch (const InconsistentProgram& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Inconsistent;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    }
    return Usage;
}
