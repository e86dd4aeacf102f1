#include "cyclelab/lexer.hpp"

#include <cctype>

#include "cyclelab/error.hpp"

namespace cyclelab {

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
                ++i;
            out.push_back({TokenKind::Identifier, std::string(text.substr(start, i - start)), start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back({TokenKind::Integer, std::string(text.substr(start, i - start)), start});
            continue;
        }
        auto two = text.substr(i, 2);
        if (two == "!=" || two == "->" || two == "..") {
            out.push_back({TokenKind::Symbol, std::string(two), start});
            i += 2;
            continue;
        }
        static const std::string_view singles = "()[]{},;:.+-*/^=|&~!<>";
        if (singles.find(c) != std::string_view::npos) {
            out.push_back({TokenKind::Symbol, std::string(1, c), start});
            ++i;
            continue;
        }
        parse_error(text, start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({TokenKind::End, "", text.size()});
    return out;
}

SourcePos source_position(std::string_view text, std::size_t offset)
{
    SourcePos pos{1, 1};
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

void parse_error(std::string_view text, std::size_t offset, const std::string& message)
{
    SourcePos pos = source_position(text, offset);
    raise(ErrorCode::ParseError,
          "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + message);
}

const Token& TokenStream::peek(std::size_t ahead) const
{
    std::size_t k = pos_ + ahead;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

const Token& TokenStream::next()
{
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
}

bool TokenStream::is(std::string_view symbol, std::size_t ahead) const
{
    const Token& t = peek(ahead);
    return (t.kind == TokenKind::Symbol || t.kind == TokenKind::Identifier) && t.text == symbol;
}

bool TokenStream::accept(std::string_view symbol)
{
    if (!is(symbol)) return false;
    next();
    return true;
}

const Token& TokenStream::expect(std::string_view symbol)
{
    if (!is(symbol)) {
        const Token& t = peek();
        fail("expected '" + std::string(symbol) + "' but found " +
             (t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'"));
    }
    return next();
}

const Token& TokenStream::expect_identifier()
{
    if (peek().kind != TokenKind::Identifier) {
        const Token& t = peek();
        fail("expected identifier but found " + (t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'"));
    }
    return next();
}

void TokenStream::fail(const std::string& message) const
{
    const Token& t = peek();
    parse_error(source_, t.offset, message + (t.kind == TokenKind::End ? "" : " (at '" + t.text + "')"));
}

}  // namespace cyclelab
