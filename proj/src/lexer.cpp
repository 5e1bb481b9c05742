#include "cqa/lexer.hpp"

#include <array>
#include <cctype>

#include "cqa/error.hpp"

namespace cqa::text {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Longest match first.
constexpr std::array<std::string_view, 19> kSymbols = {
    "<->", ":-", ":=", "->", "!=", "<=", "(", ")", ",", ".", ":", "|", "&", "~", "=", "/", "[", "]", ";"};

}  // namespace

std::vector<Token> tokenize(std::string_view input) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (input[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < input.size()) {
        char c = input[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < input.size() && input[i] != '\n') advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < input.size() && ident_char(input[j])) ++j;
            tok.kind = TokenKind::Identifier;
            tok.text = std::string(input.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < input.size() && ident_char(input[j])) ++j;
            tok.kind = TokenKind::Number;
            tok.text = std::string(input.substr(i, j - i));
            advance(j - i);
        } else if (c == '"') {
            std::string value;
            advance(1);
            bool closed = false;
            while (i < input.size()) {
                char d = input[i];
                if (d == '\\' && i + 1 < input.size()) {
                    value += input[i + 1];
                    advance(2);
                    continue;
                }
                if (d == '"') {
                    closed = true;
                    advance(1);
                    break;
                }
                if (d == '\n') break;
                value += d;
                advance(1);
            }
            if (!closed) throw ParseError("unterminated string", tok.line, tok.column);
            tok.kind = TokenKind::String;
            tok.text = std::move(value);
        } else {
            bool matched = false;
            for (auto sym : kSymbols) {
                if (input.substr(i, sym.size()) == sym) {
                    tok.kind = TokenKind::Symbol;
                    tok.text = std::string(sym);
                    advance(sym.size());
                    matched = true;
                    break;
                }
            }
            if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

TokenStream::TokenStream(std::string_view input) : tokens_(tokenize(input)) {}

const Token& TokenStream::peek(std::size_t ahead) const {
    std::size_t idx = pos_ + ahead;
    return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
}

Token TokenStream::next() {
    Token t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
}

bool TokenStream::accept(std::string_view symbol) {
    if (peek().is(symbol)) {
        next();
        return true;
    }
    return false;
}

bool TokenStream::accept_word(std::string_view word) {
    if (peek().is_word(word)) {
        next();
        return true;
    }
    return false;
}

Token TokenStream::expect(std::string_view symbol) {
    if (!peek().is(symbol)) fail("expected '" + std::string(symbol) + "'");
    return next();
}

Token TokenStream::expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail("expected identifier");
    return next();
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& token, const std::string& message) {
    std::string found = token.kind == TokenKind::End ? "end of input" : "'" + token.text + "'";
    throw ParseError(message + " (found " + found + ")", token.line, token.column);
}

bool is_variable_name(std::string_view name) {
    return !name.empty() && (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_');
}

std::string quote_constant(std::string_view lexeme) {
    bool plain = !lexeme.empty();
    if (plain) {
        unsigned char c0 = static_cast<unsigned char>(lexeme[0]);
        plain = std::islower(c0) || std::isdigit(c0);
        for (char c : lexeme) plain = plain && ident_char(c);
    }
    if (plain) return std::string(lexeme);
    std::string out = "\"";
    for (char c : lexeme) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace cqa::text
