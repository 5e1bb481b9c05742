#include "cqa/cross_check.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "cqa/fd_rewrite.hpp"
#include "cqa/formula.hpp"

namespace cqa::check {

std::string method_name(Method m) {
    switch (m) {
    case Method::Enumerate:
        return "enumerate";
    case Method::Asp:
        return "asp";
    case Method::Rewrite:
        return "rewrite";
    }
    return {};
}

std::optional<Method> parse_method(const std::string& name) {
    for (auto m : {Method::Enumerate, Method::Asp, Method::Rewrite})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

std::pair<std::set<Tuple>, std::size_t> answers_via_program(const Instance& d, const std::vector<Constraint>& ics,
                                                            const repair::QuerySpec& q, const asp::Limits& limits) {
    repair::AnnotationScheme names(d.schema(), q.intensional());
    auto rp = repair::gen_repair_program(ics, d.schema(), names);
    auto starred = repair::star_query(q, d.schema(), names);
    auto program = repair::assemble_cqa_program(d, rp.all(), starred, names);
    auto models = asp::stable_models(program, limits);
    return {asp::cautious_answers(models, q.answer_pred), models.size()};
}

CrossCheckReport cross_check(const Instance& d, const std::vector<Constraint>& ics, const repair::QuerySpec& q,
                             const CrossCheckOptions& options) {
    using clock = std::chrono::steady_clock;
    CrossCheckReport report;
    for (auto m : options.methods) {
        MethodResult r;
        r.method = m;
        auto start = clock::now();
        switch (m) {
        case Method::Enumerate: {
            auto repairs = oracle::repairs_bruteforce(d, ics, options.oracle_limits);
            report.repairs = repairs.size();
            r.answers = oracle::consistent_answers_over(repairs, q, options.asp_limits);
            r.ran = true;
            break;
        }
        case Method::Asp: {
            auto [answers, models] = answers_via_program(d, ics, q, options.asp_limits);
            r.answers = std::move(answers);
            report.stable_models = models;
            r.ran = true;
            break;
        }
        case Method::Rewrite: {
            auto fds = as_fds(ics);
            if (!fds) {
                r.note = "not applicable: some constraint is not an FD or key";
                break;
            }
            auto rw = rewrite::rewrite_query(q, *fds);
            if (!rw.applicable) {
                r.note = "not applicable: " + rw.reason;
                break;
            }
            report.rewritten = logic::print(rw.rewritten);
            r.answers = rewrite::answers_via_rewrite(d, *fds, q);
            r.ran = true;
            break;
        }
        }
        r.seconds = std::chrono::duration<double>(clock::now() - start).count();
        report.results.push_back(std::move(r));
    }
    const MethodResult* first = nullptr;
    for (const auto& r : report.results) {
        if (!r.ran) continue;
        if (!first) first = &r;
        else if (r.answers != first->answers) report.agreement = false;
    }
    return report;
}

namespace {

std::string answers_text(const std::set<Tuple>& answers) {
    std::string out = "{";
    bool firstp = true;
    for (const auto& t : answers) {
        out += (firstp ? "" : ", ") + format_tuple(t);
        firstp = false;
    }
    return out + "}";
}

}  // namespace

std::string CrossCheckReport::text(bool timing) const {
    std::ostringstream out;
    for (const auto& r : results) {
        out << method_name(r.method) << ": ";
        if (r.ran) out << answers_text(r.answers);
        else out << "skipped";
        if (!r.note.empty()) out << " (" << r.note << ")";
        if (timing) out << " [" << std::fixed << std::setprecision(6) << r.seconds << " s]";
        out << "\n";
    }
    if (rewritten) out << "rewritten: " << *rewritten << "\n";
    if (repairs) out << "repairs: " << *repairs << "\n";
    if (stable_models) out << "stable models: " << *stable_models << "\n";
    out << "agreement: " << (agreement ? "true" : "false") << "\n";
    return out.str();
}

nlohmann::ordered_json CrossCheckReport::json(bool timing) const {
    nlohmann::ordered_json j;
    j["agreement"] = agreement;
    auto methods = nlohmann::ordered_json::object();
    for (const auto& r : results) {
        nlohmann::ordered_json m;
        m["ran"] = r.ran;
        auto tuples = nlohmann::ordered_json::array();
        for (const auto& t : r.answers) tuples.push_back(t);
        m["answers"] = tuples;
        if (!r.note.empty()) m["note"] = r.note;
        if (timing) m["seconds"] = r.seconds;
        methods[method_name(r.method)] = m;
    }
    j["methods"] = methods;
    if (rewritten) j["rewritten"] = *rewritten;
    if (repairs) j["repairs"] = *repairs;
    if (stable_models) j["stable_models"] = *stable_models;
    return j;
}

}  // namespace cqa::check
