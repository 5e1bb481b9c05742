#include "cqa/relational.hpp"

#include <algorithm>
#include <sstream>

#include "cqa/error.hpp"
#include "cqa/lexer.hpp"

namespace cqa {

Schema::Schema(std::initializer_list<PredicateSig> preds) {
    for (const auto& p : preds) add(p);
}

void Schema::add(const PredicateSig& sig) {
    auto it = arities_.find(sig.name);
    if (it == arities_.end()) {
        arities_.emplace(sig.name, sig.arity);
    } else if (it->second != sig.arity) {
        throw ValidationError("predicate " + sig.name + " used with arity " + std::to_string(sig.arity) +
                              " but declared with arity " + std::to_string(it->second));
    }
}

bool Schema::contains(std::string_view name) const { return arities_.find(name) != arities_.end(); }

std::size_t Schema::arity(std::string_view name) const {
    auto it = arities_.find(name);
    if (it == arities_.end()) throw ValidationError("unknown predicate " + std::string(name));
    return it->second;
}

std::vector<PredicateSig> Schema::predicates() const {
    std::vector<PredicateSig> out;
    for (const auto& [name, arity] : arities_) out.push_back({name, arity});
    return out;
}

std::string format_tuple(const Tuple& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += text::quote_constant(t[i]);
    }
    return out + ")";
}

std::string GroundAtom::str() const {
    if (args.empty()) return predicate;
    return predicate + format_tuple(args);
}

Instance::Instance(Schema schema, const AtomSet& atoms) : schema_(std::move(schema)) {
    for (const auto& a : atoms) insert(a);
}

void Instance::insert(const GroundAtom& atom) {
    if (schema_.arity(atom.predicate) != atom.args.size()) {
        throw ValidationError("arity mismatch for " + atom.str() + ": expected " +
                              std::to_string(schema_.arity(atom.predicate)));
    }
    atoms_.insert(atom);
}

std::set<Tuple> Instance::extension(std::string_view predicate) const {
    std::set<Tuple> out;
    auto it = atoms_.lower_bound(GroundAtom{std::string(predicate), {}});
    for (; it != atoms_.end() && it->predicate == predicate; ++it) out.insert(it->args);
    return out;
}

namespace {

Constant parse_constant(text::TokenStream& ts) {
    const auto& tok = ts.peek();
    switch (tok.kind) {
        case text::TokenKind::Number:
        case text::TokenKind::String:
            return ts.next().text;
        case text::TokenKind::Identifier:
            if (text::is_variable_name(tok.text)) {
                ts.fail("variable '" + tok.text + "' not allowed in a fact");
            }
            return ts.next().text;
        default:
            ts.fail("expected constant");
    }
}

}  // namespace

Instance parse_fact_file(std::string_view text, const std::optional<Schema>& schema) {
    text::TokenStream ts(text);
    std::vector<std::pair<GroundAtom, text::Token>> facts;
    ConstantSet declared;
    while (!ts.at_end()) {
        if (ts.peek().is_word("domain") && !ts.peek(1).is("(")) {
            ts.next();
            declared.insert(parse_constant(ts));
            while (ts.accept(",")) declared.insert(parse_constant(ts));
            ts.expect(".");
            continue;
        }
        auto name = ts.expect_identifier();
        GroundAtom atom{name.text, {}};
        ts.expect("(");
        atom.args.push_back(parse_constant(ts));
        while (ts.accept(",")) atom.args.push_back(parse_constant(ts));
        ts.expect(")");
        ts.expect(".");
        facts.emplace_back(std::move(atom), name);
    }
    Schema effective = schema.value_or(Schema{});
    for (const auto& c : declared) effective.declare_constant(c);
    for (const auto& [atom, tok] : facts) {
        if (schema) {
            if (!effective.contains(atom.predicate)) {
                throw ParseError("unknown predicate " + atom.predicate, tok.line, tok.column);
            }
            if (effective.arity(atom.predicate) != atom.args.size()) {
                throw ParseError("arity mismatch for " + atom.predicate + ": expected " +
                                     std::to_string(effective.arity(atom.predicate)) + ", got " +
                                     std::to_string(atom.args.size()),
                                 tok.line, tok.column);
            }
        } else {
            try {
                effective.add({atom.predicate, atom.args.size()});
            } catch (const ValidationError& e) {
                throw ParseError(e.what(), tok.line, tok.column);
            }
        }
    }
    Instance out(effective);
    for (const auto& [atom, tok] : facts) out.insert(atom);
    return out;
}

std::string print_instance(const Instance& instance) {
    std::string out;
    const auto& declared = instance.schema().declared_constants();
    if (!declared.empty()) {
        out += "domain ";
        bool first = true;
        for (const auto& c : declared) {
            out += (first ? "" : ", ") + text::quote_constant(c);
            first = false;
        }
        out += ".\n";
    }
    for (const auto& a : instance) out += a.str() + ".\n";
    return out;
}

std::vector<GroundAtom> read_csv_relation(std::string_view text, const std::string& predicate, bool has_header) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false, field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        if (!(row.size() == 1 && row[0].empty())) rows.push_back(row);
        row.clear();
    };
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_row();
        } else if (c == '\r') {
            // CRLF line ending
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw ValidationError("unterminated quoted CSV field");
    if (field_started || !row.empty()) end_row();

    std::vector<GroundAtom> out;
    std::size_t width = 0;
    for (std::size_t r = has_header ? 1 : 0; r < rows.size(); ++r) {
        if (width == 0) width = rows[r].size();
        if (rows[r].size() != width) {
            throw ValidationError("CSV row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                                  " columns, expected " + std::to_string(width));
        }
        out.push_back({predicate, rows[r]});
    }
    return out;
}

ConstantSet active_domain(const Instance& instance, const ConstantSet& extra) {
    ConstantSet out = extra;
    for (const auto& a : instance) out.insert(a.args.begin(), a.args.end());
    return out;
}

AtomSet InstanceDelta::symmetric() const {
    AtomSet out = deleted;
    out.insert(inserted.begin(), inserted.end());
    return out;
}

InstanceDelta instance_delta(const Instance& d, const Instance& d_prime) {
    if (!(d.schema() == d_prime.schema())) throw ValidationError("instance_delta: schema mismatch");
    InstanceDelta delta;
    std::set_difference(d.begin(), d.end(), d_prime.begin(), d_prime.end(),
                        std::inserter(delta.deleted, delta.deleted.end()));
    std::set_difference(d_prime.begin(), d_prime.end(), d.begin(), d.end(),
                        std::inserter(delta.inserted, delta.inserted.end()));
    return delta;
}

}  // namespace cqa
