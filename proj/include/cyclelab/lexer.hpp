#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cyclelab {

enum class TokenKind { Identifier, Integer, Symbol, End };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t offset;  // byte offset in the source
};

/// Tokenizer shared by the polynomial, sentence and input-file grammars.
/// Symbols: ( ) [ ] { } , ; : . + - * / ^ = != -> | & ~ ! < > and "..".
/// '#' starts a comment that runs to end of line.
std::vector<Token> tokenize(std::string_view text);

/// 1-based line and column of a byte offset.
struct SourcePos {
    std::size_t line;
    std::size_t column;
};
SourcePos source_position(std::string_view text, std::size_t offset);

/// Throws ParseError, naming line/column relative to `text`.
[[noreturn]] void parse_error(std::string_view text, std::size_t offset, const std::string& message);

class TokenStream {
public:
    TokenStream(std::string_view source, std::vector<Token> tokens) : source_(source), tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    const Token& next();
    bool at_end() const { return peek().kind == TokenKind::End; }
    bool accept(std::string_view symbol);
    const Token& expect(std::string_view symbol);
    const Token& expect_identifier();
    bool is(std::string_view symbol, std::size_t ahead = 0) const;
    std::size_t position() const { return pos_; }
    void reset(std::size_t pos) { pos_ = pos; }

    [[noreturn]] void fail(const std::string& message) const;
    std::string_view source() const { return source_; }

private:
    std::string_view source_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace cyclelab
