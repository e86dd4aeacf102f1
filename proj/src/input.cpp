#include "cyclelab/input.hpp"

#include <fstream>
#include <sstream>

#include "cyclelab/error.hpp"
#include "cyclelab/parse.hpp"

namespace cyclelab {

namespace {

class InputParser {
public:
    explicit InputParser(const std::string& text) : text_(text), ts_(text_, tokenize(text_)) {}

    InputFile run()
    {
        while (!ts_.at_end()) statement();
        return std::move(out_);
    }

private:
    std::string text_;
    TokenStream ts_;
    InputFile out_;

    RingPtr ring_spec()
    {
        const Token& f = ts_.expect_identifier();
        Field field = Field::rationals();
        if (f.text == "Q") {
        } else if (f.text.size() > 1 && f.text[0] == 'F' && f.text.find_first_not_of("0123456789", 1) == std::string::npos) {
            std::uint64_t p = std::stoull(f.text.substr(1));
            if (!is_prime(p)) raise(ErrorCode::ValidationError, "field F" + std::to_string(p) + ": characteristic must be prime");
            field = Field::prime(p);
        } else {
            ts_.reset(ts_.position() - 1);
            ts_.fail("expected a field (Q or Fp, e.g. F101)");
        }
        ts_.expect("[");
        std::vector<std::string> vars{ts_.expect_identifier().text};
        while (ts_.accept(",")) vars.push_back(ts_.expect_identifier().text);
        ts_.expect("]");
        return make_ring(field, vars);
    }

    std::vector<Poly> poly_list(const RingPtr& ring)
    {
        ts_.expect("(");
        std::vector<Poly> gens;
        if (!ts_.is(")")) {
            gens.push_back(parse_poly(ts_, ring));
            while (ts_.accept(",")) gens.push_back(parse_poly(ts_, ring));
        }
        ts_.expect(")");
        return gens;
    }

    void statement()
    {
        const Token& kw = ts_.expect_identifier();
        std::string word = kw.text;
        if (word == "ring" || word == "projective") {
            RingPtr r = ring_spec();
            out_.ambient = word == "ring" ? Ambient::affine(r) : Ambient::projective(r);
        } else if (word == "ideal") {
            if (!out_.ambient) ts_.fail("ideal before any ring declaration");
            std::string name = ts_.peek().kind == TokenKind::Identifier ? ts_.next().text : "I" + std::to_string(out_.ideals.size() + 1);
            Ideal ideal(out_.ambient->ring, poly_list(out_.ambient->ring));
            if (out_.ambient->is_projective() && !ideal.is_homogeneous())
                raise(ErrorCode::ValidationError, "ideal " + name + " must be homogeneous in a projective ambient");
            out_.ideals.push_back({name, ideal});
        } else if (word == "target") {
            out_.target = ring_spec();
        } else if (word == "space") {
            std::string name = ts_.expect_identifier().text;
            RingPtr r = ring_spec();
            VarietySpec v = ts_.is("(") ? make_variety(Ideal(r, poly_list(r))) : affine_space(r);
            for (const auto& s : out_.spaces)
                if (s.name == name) raise(ErrorCode::ValidationError, "space " + name + " declared twice");
            out_.spaces.push_back({name, v});
        } else if (word == "correspondence") {
            std::string name;
            if (ts_.peek().kind == TokenKind::Identifier && ts_.peek(1).kind == TokenKind::Identifier) name = ts_.next().text;
            std::string from = ts_.expect_identifier().text;
            ts_.expect("->");
            std::string to = ts_.expect_identifier().text;
            RingPtr r = product_ring({out_.space(from).variety.ring(), out_.space(to).variety.ring()});
            if (name.empty()) name = "W" + std::to_string(out_.correspondences.size() + 1);
            out_.correspondences.push_back({name, from, to, Ideal(r, poly_list(r))});
        } else if (word == "sentence") {
            const Token& colon = ts_.expect(":");
            std::size_t start = colon.offset + 1;
            while (!ts_.at_end() && !ts_.is(";")) ts_.next();
            std::size_t end = ts_.at_end() ? text_.size() : ts_.peek().offset;
            out_.sentence = parse_sentence(text_.substr(start, end - start));
        } else {
            ts_.reset(ts_.position() - 1);
            ts_.fail("unknown statement '" + word + "'");
        }
        ts_.expect(";");
    }
};

}  // namespace

const NamedSpace& InputFile::space(const std::string& name) const
{
    for (const auto& s : spaces)
        if (s.name == name) return s;
    raise(ErrorCode::ValidationError, "undeclared space " + name);
}

InputFile parse_input(const std::string& text) { return InputParser(normalize_symbols(text)).run(); }

InputFile read_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) raise(ErrorCode::ValidationError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_input(ss.str());
}

}  // namespace cyclelab
