#include <doctest.h>

#include "cyclelab/error.hpp"
#include "cyclelab/input.hpp"

using namespace cyclelab;

namespace {

Error error_of(const std::string& text)
{
    try {
        parse_input(text);
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an error");
    return Error(ErrorCode::InvariantViolation, "");
}

}  // namespace

TEST_CASE("ring and ideal statements")
{
    auto in = parse_input("ring Q[x,y]; ideal (y - x^2, y);");
    REQUIRE(in.ambient);
    CHECK_FALSE(in.ambient->is_projective());
    REQUIRE(in.ideals.size() == 1);
    CHECK(in.ideals[0].name == "I1");
    CHECK(krull_dimension(in.ideals[0].ideal) == 0);

    auto proj = parse_input("# a comment\nprojective F7[x, y, z];\nideal conic (x^2 - y*z);");
    CHECK(proj.ambient->is_projective());
    CHECK(proj.ambient->ring->field.characteristic() == 7);
    CHECK(proj.ideals[0].name == "conic");
}

TEST_CASE("sentence statement")
{
    auto in = parse_input("sentence: exists x. x*x = -1;");
    REQUIRE(in.sentence);
    CHECK(in.sentence->quantifier_depth() == 1);
    auto uni = parse_input("sentence: ∃x: x² = −1;");
    CHECK(uni.sentence->to_string() == parse_input("sentence: exists x: x^2 = -1;").sentence->to_string());
}

TEST_CASE("spaces, targets and correspondences")
{
    auto in = parse_input("space X Q[x]; space Y Q[y] (y^2 - 1); correspondence g X -> Y (y - 1); ring Q[x,y]; target Q[x];");
    CHECK(in.spaces.size() == 2);
    CHECK(in.space("Y").variety.components.size() == 2);
    REQUIRE(in.correspondences.size() == 1);
    CHECK(in.correspondences[0].name == "g");
    CHECK(in.correspondences[0].ideal.ring()->nvars() == 2);
    CHECK(in.target->vars == std::vector<std::string>{"x"});
}

TEST_CASE("errors")
{
    auto e = error_of("ring Q[x];\nideal (x + );");
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2, column 12") != std::string::npos);
    CHECK(error_of("ideal (x);").code() == ErrorCode::ParseError);
    CHECK(error_of("ring F9[x];").code() == ErrorCode::ValidationError);
    CHECK(error_of("ring R[x];").code() == ErrorCode::ParseError);
    CHECK(error_of("projective Q[x, y]; ideal (x - 1);").code() == ErrorCode::ValidationError);
    CHECK(error_of("space X Q[x]; correspondence X -> Y (x);").code() == ErrorCode::ValidationError);
    CHECK(error_of("frobnicate;").code() == ErrorCode::ParseError);
}
