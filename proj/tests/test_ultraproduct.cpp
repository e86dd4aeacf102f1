#include <doctest.h>

#include <random>
#include <set>

#include "cyclelab/error.hpp"
#include "cyclelab/settings.hpp"
#include "cyclelab/ultraproduct.hpp"

using namespace cyclelab;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvariantViolation;
}

// oracle: Euler's criterion
bool minus_one_is_square(std::uint64_t p)
{
    if (p == 2) return true;
    std::uint64_t r = 1, b = p - 1, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1;
}

std::string random_atom(std::mt19937_64& rng)
{
    static const char* atoms[] = {"x*x = -1", "x*y = 1", "x + y = 0", "x^3 = 2", "x*x = x", "y*y = 3", "x = y*y*y + 1"};
    return atoms[std::uniform_int_distribution<int>(0, 6)(rng)];
}

std::string random_sentence(std::mt19937_64& rng)
{
    std::string body = random_atom(rng);
    int shape = std::uniform_int_distribution<int>(0, 3)(rng);
    if (shape == 1) body = "(" + body + " | " + random_atom(rng) + ")";
    if (shape == 2) body = "(" + body + " & ~" + random_atom(rng) + ")";
    if (shape == 3) body = "(" + body + " -> " + random_atom(rng) + ")";
    const char* q[] = {"forall", "exists"};
    std::uniform_int_distribution<int> coin(0, 1);
    return std::string(q[coin(rng)]) + " x. " + q[coin(rng)] + " y. " + body;
}

}  // namespace

TEST_CASE("element arithmetic")
{
    auto half = UltraElement::rational(mpq_class(1, 2));
    CHECK(half.at(5) == 3);
    CHECK_FALSE(half.at(2).has_value());
    auto two = UltraElement::rational(2);
    auto prod = two.inverse() * two;
    PrimeSample s = PrimeSample::first_above(2, 30);
    CHECK(disagreements(prod, UltraElement::rational(1), s).empty());
    auto pm1 = UltraElement::polynomial({-1, 1});
    CHECK(disagreements(pm1 + UltraElement::rational(1), UltraElement(), s).empty());
    CHECK(code_of([] { UltraElement::polynomial({0, 1}).inverse(); }) == ErrorCode::DivisionByZeroAlmostEverywhere);
    auto e = UltraElement::rational(1).except(7, 3);
    CHECK(e.at(7) == 3);
    CHECK(disagreements(e, UltraElement::rational(1), s) == std::vector<std::uint64_t>{7});
    CHECK(half.to_string() == "(1)/(2)");
}

TEST_CASE("prime samples")
{
    auto s = PrimeSample::first_above(3, 5);
    CHECK(s.primes == std::vector<std::uint64_t>{5, 7, 11, 13, 17});
    auto t = s.without({7, 13});
    CHECK(t.primes == std::vector<std::uint64_t>{5, 11, 17});
    CHECK(t.excluded == std::vector<std::uint64_t>{7, 13});
    CHECK(prime_divisors(360) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(prime_divisors(97) == std::vector<std::uint64_t>{97});
}

TEST_CASE("parsing")
{
    auto s = parse_sentence("∀x ∃y (x·y = 1 ∨ x = 0)");
    CHECK(s.quantifier_depth() == 2);
    CHECK(s.free_variables().empty());
    auto t = parse_sentence("forall x. exists y. x*y = 1 | x = 0");
    CHECK(s.to_string() == t.to_string());
    CHECK(parse_sentence("x = 1").free_variables() == std::vector<std::string>{"x"});
    CHECK(parse_sentence("(1 + 1) * 2 = 4").quantifier_depth() == 0);
    CHECK(parse_sentence("exists x: x² = −1").quantifier_depth() == 1);
    CHECK(code_of([] { parse_sentence("forall x x = 1"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_sentence("x + = 1"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_sentence("x = 1 )"); }) == ErrorCode::ParseError);
}

TEST_CASE("evaluation")
{
    auto i = parse_sentence("exists x. x*x = -1");
    CHECK(evaluate_sentence(i, 5));
    CHECK_FALSE(evaluate_sentence(i, 7));
    auto char2 = parse_sentence("1 + 1 = 0");
    CHECK(evaluate_sentence(char2, 2));
    CHECK_FALSE(evaluate_sentence(char2, 3));
    CHECK(evaluate_sentence(parse_sentence("forall x. x != 0 -> exists y. x*y = 1"), 13));
    CHECK(code_of([&] { evaluate_sentence(i, 9); }) == ErrorCode::NotPrime);
    CHECK(code_of([&] { evaluate_sentence(i, 503); }) == ErrorCode::PrimeTooLarge);
    CHECK(code_of([] { evaluate_sentence(parse_sentence("x = 0"), 5); }) == ErrorCode::ValidationError);
    CHECK(code_of([] { evaluate_sentence(parse_sentence("forall x. forall y. forall z. forall w. x = x"), 5); }) == ErrorCode::DepthExceeded);
}

TEST_CASE("verdicts")
{
    auto sample = PrimeSample::first_above(1, 50);
    for (int n = 2; n <= 50; ++n) {
        std::string ones = "1";
        for (int k = 1; k < n; ++k) ones += " + 1";
        auto rep = los_verdict(parse_sentence(ones + " != 0"), sample);
        CHECK(rep.verdict == Verdict::CofiniteHolds);
        CHECK(rep.exceptions == prime_divisors(n));
    }
    Settings wide = settings();
    wide.brute_force_prime_bound = 600;
    ScopedSettings scope(wide);
    auto odd = PrimeSample::first_above(2, 100);
    auto rep = los_verdict(parse_sentence("exists x. x*x = -1"), odd);
    CHECK(rep.verdict == Verdict::FilterDependent);
    CHECK(rep.density_holds >= 0.35);
    CHECK(rep.density_holds <= 0.65);
    for (const auto& [p, ok] : rep.outcomes) CHECK(ok == minus_one_is_square(p));
    CHECK(los_verdict(parse_sentence("1 = 0"), sample).verdict == Verdict::CofiniteFails);
    CHECK(verdict_name(Verdict::FilterDependent) == "filter-dependent");
}

TEST_CASE("property: verdicts are consistent")
{
    std::mt19937_64 rng(17);
    auto sample = PrimeSample::first_above(3, 25);
    for (int trial = 0; trial < 40; ++trial) {
        auto s = parse_sentence(random_sentence(rng));
        auto t = parse_sentence(random_sentence(rng));
        auto vs = los_verdict(s, sample), vn = los_verdict(negation(s), sample);
        CHECK_FALSE((vs.verdict == Verdict::CofiniteHolds && vn.verdict == Verdict::CofiniteHolds));
        if (vs.verdict == Verdict::CofiniteHolds) CHECK(vn.verdict == Verdict::CofiniteFails);
        if (vs.verdict == Verdict::FilterDependent) CHECK(vn.verdict == Verdict::FilterDependent);
        auto vt = los_verdict(t, sample);
        if (vs.verdict == Verdict::CofiniteHolds && vt.verdict == Verdict::CofiniteHolds) {
            std::set<std::uint64_t> u(vs.exceptions.begin(), vs.exceptions.end());
            u.insert(vt.exceptions.begin(), vt.exceptions.end());
            if (u.size() <= static_cast<std::size_t>(settings().exception_cap))
                CHECK(los_verdict(conjunction(s, t), sample).verdict == Verdict::CofiniteHolds);
        }
        for (auto p : sample.primes) CHECK(evaluate_sentence(s, p) == evaluate_sentence(s, p));
    }
}

TEST_CASE("property: field axioms hold at every prime")
{
    const char* axioms[] = {
        "forall x. forall y. x + y = y + x",
        "forall x. forall y. forall z. (x + y)*z = x*z + y*z",
        "forall x. x = 0 | exists y. x*y = 1",
        "forall x. forall y. x*y = 0 -> x = 0 | y = 0",
    };
    auto sample = PrimeSample::first_above(1, 12);
    for (auto a : axioms) {
        auto rep = los_verdict(parse_sentence(a), sample);
        CHECK(rep.verdict == Verdict::CofiniteHolds);
        CHECK(rep.exceptions.empty());
    }
}
