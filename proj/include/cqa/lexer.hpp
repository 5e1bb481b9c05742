#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cqa::text {

enum class TokenKind { Identifier, Number, String, Symbol, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;  // String tokens hold the unquoted value
    std::size_t line = 1;
    std::size_t column = 1;

    bool is(std::string_view symbol) const { return kind == TokenKind::Symbol && text == symbol; }
    bool is_word(std::string_view word) const { return kind == TokenKind::Identifier && text == word; }
};

/// Splits text into tokens; `%` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view input);

/// Cursor over a token vector with error reporting at the current position.
class TokenStream {
public:
    explicit TokenStream(std::string_view input);

    const Token& peek(std::size_t ahead = 0) const;
    Token next();
    bool at_end() const { return peek().kind == TokenKind::End; }
    bool accept(std::string_view symbol);
    bool accept_word(std::string_view word);
    Token expect(std::string_view symbol);
    Token expect_identifier();
    [[noreturn]] void fail(const std::string& message) const;
    [[noreturn]] static void fail_at(const Token& token, const std::string& message);

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

bool is_variable_name(std::string_view name);

/// Renders a constant so that it re-lexes to the same symbol.
std::string quote_constant(std::string_view lexeme);

}  // namespace cqa::text
