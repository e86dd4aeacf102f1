#include <doctest.h>

#include <random>
#include <set>

#include "cyclelab/cycles.hpp"
#include "cyclelab/error.hpp"
#include "cyclelab/settings.hpp"

using namespace cyclelab;

namespace {

Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

Ideal I(const RingPtr& r, std::initializer_list<const char*> gens)
{
    std::vector<Poly> g;
    for (auto s : gens) g.push_back(P(s, r));
    return Ideal(r, g);
}

std::set<std::string> prime_strings(const std::vector<PrimeComponent>& ps)
{
    std::set<std::string> out;
    for (const auto& p : ps) out.insert(p.ideal.to_string());
    return out;
}

std::int64_t binom2(std::int64_t k) { return k * (k + 1) / 2; }

}  // namespace

TEST_CASE("minimal primes of small ideals")
{
    auto r = make_ring(Field::rationals(), {"x", "y"});
    CHECK(prime_strings(minimal_primes(I(r, {"x^2*y"}))) == std::set<std::string>{"(x)", "(y)"});
    auto pt = minimal_primes(I(r, {"y - x^2", "y"}));
    REQUIRE(pt.size() == 1);
    CHECK(pt[0].ideal == I(r, {"x", "y"}));
    CHECK(pt[0].certificate == PrimeCertificate::ZeroDimensional);
    auto conic = minimal_primes(I(r, {"x^2 + y^2"}));
    REQUIRE(conic.size() == 1);
    CHECK(conic[0].certificate == PrimeCertificate::Principal);
    CHECK(conic[0].degree == 2);
    CHECK_THROWS_AS(minimal_primes(Ideal::unit(r)), Error);
    auto zero = minimal_primes(Ideal::zero(r));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].dimension == 2);
}

TEST_CASE("minimal primes split over a prime field")
{
    auto r = make_ring(Field::prime(5), {"x", "y"});
    // x^2 + y^2 = (x + 2y)(x - 2y) mod 5
    CHECK(minimal_primes(I(r, {"x^2 + y^2"})).size() == 2);
}

TEST_CASE("minimal primes of a curve union a point")
{
    auto r = make_ring(Field::rationals(), {"x", "y", "z"});
    // the z-axis together with the point (1, 1, 0)
    Ideal a = ideal_intersection(I(r, {"x", "y"}), I(r, {"x - 1", "y - 1", "z"}));
    auto ps = minimal_primes(a);
    REQUIRE(ps.size() == 2);
    std::set<int> dims;
    for (const auto& p : ps) dims.insert(p.dimension);
    CHECK(dims == std::set<int>{0, 1});
}

TEST_CASE("twisted cubic is prime with degree three")
{
    auto r = make_ring(Field::rationals(), {"x", "y", "z", "w"});
    Ideal c = I(r, {"x*z - y^2", "y*w - z^2", "x*w - y*z"});
    auto ps = minimal_primes(c, Ambient::projective(r));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].dimension == 1);
    CHECK(ps[0].degree == 3);
}

TEST_CASE("projective minimal primes drop the irrelevant ideal")
{
    auto r = make_ring(Field::rationals(), {"x", "y", "z"});
    Ideal a = ideal_product(I(r, {"x"}), I(r, {"x", "y", "z"}));
    auto ps = minimal_primes(a, Ambient::projective(r));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].ideal == I(r, {"x"}));
    CHECK_THROWS_AS(minimal_primes(I(r, {"x - 1"}), Ambient::projective(r)), Error);
}

TEST_CASE("local lengths")
{
    auto r = make_ring(Field::rationals(), {"x", "y"});
    CHECK(local_length(I(r, {"x^2"}), I(r, {"x"})) == 2);
    CHECK(local_length(I(r, {"x^3", "x*y"}), I(r, {"x"})) == 1);
    CHECK(local_length(I(r, {"x^2", "y^3"}), I(r, {"x", "y"})) == 6);
    CHECK(local_length(I(r, {"y - x^2", "y"}), I(r, {"x", "y"})) == 2);
    try {
        local_length(I(r, {"x"}), I(r, {"y"}));
        FAIL("expected NotMinimalPrime");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotMinimalPrime);
    }
    try {
        local_length(I(r, {"x^2", "x*y"}), I(r, {"x", "y"}));
        FAIL("expected NotMinimalPrime");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotMinimalPrime);
    }
}

TEST_CASE("associated cycles")
{
    auto r = make_ring(Field::rationals(), {"x", "y"});
    Ambient a2 = Ambient::affine(r);
    auto z = associated_cycle(I(r, {"x*y"}), a2).cycle;
    CHECK(z.terms.size() == 2);
    CHECK(z.codimension == 1);
    CHECK(z.multiplicity(I(r, {"x"})) == 1);
    auto emb = associated_cycle(I(r, {"x^2", "x*y"}), a2, 1);
    REQUIRE(emb.cycle.terms.size() == 1);
    CHECK(emb.cycle.multiplicity(I(r, {"x"})) == 1);
    auto dbl = associated_cycle(I(r, {"x^2*y"}), a2).cycle;
    CHECK(dbl.multiplicity(I(r, {"x"})) == 2);
    CHECK(dbl.multiplicity(I(r, {"y"})) == 1);
}

TEST_CASE("cycle arithmetic and complexity")
{
    auto r = make_ring(Field::rationals(), {"x", "y", "z"});
    Ambient p2 = Ambient::projective(r);
    auto line = make_component(I(r, {"x"}), p2, PrimeCertificate::Principal);
    auto conic = make_component(I(r, {"x*z - y^2"}), p2, PrimeCertificate::Principal);
    auto quartic = make_component(I(r, {"x^4 + y^4 + z^4"}), p2, PrimeCertificate::Principal);
    Cycle l = Cycle::of(line, p2);
    Cycle c = Cycle::of(conic, p2);
    CHECK((l + c) - c == l);
    CHECK((2 * l) - l == l);
    CHECK((l - l).is_empty());
    CHECK(cycle_degree(2 * l + c) == 4);
    CHECK(complexity(3 * l).c == 4);
    CHECK(complexity(Cycle::empty(p2, 1)).c == 1);
    CHECK(complexity(Cycle::of(quartic, p2) + l).c == 5);
    CHECK((c + l).to_string() == "1*[V(x)] + 1*[V(y^2 - x*z)]");
    CHECK_THROWS_AS(cycle_degree(Cycle::of(make_component(I(r, {"x"}), Ambient::affine(r), PrimeCertificate::Principal), Ambient::affine(r))), Error);
}

TEST_CASE("property: fat points have the expected lengths")
{
    // oracle: length of k[x,y]/m^k at the point is k(k+1)/2
    auto r = make_ring(Field::prime(7), {"x", "y"});
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coord(0, 6), power(1, 3);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<std::pair<std::pair<int, int>, int>> pts;
        Ideal acc = Ideal::unit(r);
        for (int k = 0; k < 2; ++k) {
            int a = coord(rng), b = coord(rng), e = power(rng);
            bool dup = false;
            for (auto& p : pts)
                if (p.first == std::make_pair(a, b)) dup = true;
            if (dup) continue;
            pts.push_back({{a, b}, e});
            Poly x = Poly::variable(r, 0) - Poly::constant(r, a), y = Poly::variable(r, 1) - Poly::constant(r, b);
            Ideal m(r, {x, y}), mk = m;
            for (int i = 1; i < e; ++i) mk = ideal_product(mk, m);
            acc = acc.is_unit() ? mk : ideal_intersection(acc, mk);
        }
        auto z = associated_cycle(acc, Ambient::affine(r)).cycle;
        CHECK(z.terms.size() == pts.size());
        for (auto& [pt, e] : pts) {
            Ideal m(r, {Poly::variable(r, 0) - Poly::constant(r, pt.first), Poly::variable(r, 1) - Poly::constant(r, pt.second)});
            CHECK(z.multiplicity(m) == binom2(e));
        }
    }
}

TEST_CASE("property: zero-dimensional lengths add up to the vector space dimension")
{
    // oracle: the rational points counted by brute force over F_p, plus dim_k A/I from standard monomials
    auto r = make_ring(Field::prime(11), {"x", "y"});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(0, 10);
    for (int trial = 0; trial < 8; ++trial) {
        Poly f = Poly::variable(r, 0) * Poly::variable(r, 0) + Poly::constant(r, c(rng)) * Poly::variable(r, 1) + Poly::constant(r, c(rng));
        Poly g = Poly::variable(r, 1) * Poly::variable(r, 1) * Poly::variable(r, 1) + Poly::constant(r, c(rng)) * Poly::variable(r, 0) +
                 Poly::constant(r, c(rng));
        Ideal a(r, {f, g});
        if (a.is_unit()) continue;
        std::int64_t dim = vector_space_dimension(a);
        auto primes = minimal_primes(a);
        std::int64_t total = 0;
        int rational = 0;
        for (const auto& p : primes) {
            total += local_length(a, p) * p.residue_degree;
            if (p.residue_degree == 1) ++rational;
        }
        CHECK(total == dim);
        int brute = 0;
        for (int x = 0; x < 11; ++x)
            for (int y = 0; y < 11; ++y) {
                auto fx = f.substitute(0, Poly::constant(r, x)).substitute(1, Poly::constant(r, y));
                auto gx = g.substitute(0, Poly::constant(r, x)).substitute(1, Poly::constant(r, y));
                if (fx.is_zero() && gx.is_zero()) ++brute;
            }
        CHECK(rational == brute);
    }
}

TEST_CASE("property: cycle addition is commutative and degree is linear")
{
    auto r = make_ring(Field::rationals(), {"x", "y", "z"});
    Ambient p2 = Ambient::projective(r);
    std::vector<PrimeComponent> cs = {make_component(I(r, {"x"}), p2, PrimeCertificate::Principal),
                                      make_component(I(r, {"y"}), p2, PrimeCertificate::Principal),
                                      make_component(I(r, {"x*z - y^2"}), p2, PrimeCertificate::Principal)};
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> m(-4, 4), pick(0, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Cycle a = Cycle::empty(p2, 1), b = Cycle::empty(p2, 1);
        for (int k = 0; k < 3; ++k) {
            a = a + Cycle::of(cs[pick(rng)], p2, m(rng));
            b = b + Cycle::of(cs[pick(rng)], p2, m(rng));
        }
        long n = m(rng);
        CHECK(a + b == b + a);
        CHECK(cycle_degree(a + b) == cycle_degree(a) + cycle_degree(b));
        CHECK(cycle_degree(n * a) == n * cycle_degree(a));
        CHECK(complexity(a + b).c <= std::max(complexity(a).c, complexity(b).c) * 2);
    }
}
