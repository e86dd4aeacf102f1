#include <doctest.h>

#include <random>

#include "cyclelab/correspondences.hpp"
#include "cyclelab/error.hpp"

using namespace cyclelab;

namespace {

Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

Ideal I(const RingPtr& r, std::initializer_list<const char*> gens)
{
    std::vector<Poly> g;
    for (auto s : gens) g.push_back(P(s, r));
    return Ideal(r, g);
}

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

Correspondence from_ideal(const VarietySpec& x, const VarietySpec& y, const char* gens)
{
    RingPtr ring = product_ring({x.ring(), y.ring()});
    return make_correspondence(x, y, associated_cycle(Ideal(ring, {P(gens, ring)}), Ambient::affine(ring)).cycle);
}

Poly random_univariate(std::mt19937_64& rng, const RingPtr& r, int max_degree)
{
    std::uniform_int_distribution<int> c(-3, 3);
    Poly f(r);
    for (int d = 0; d <= max_degree; ++d) f += Poly::constant(r, c(rng)) * Poly::variable(r, 0).pow(static_cast<unsigned>(d));
    if (f.is_constant()) f += Poly::variable(r, 0);
    return f;
}

}  // namespace

TEST_CASE("finite and surjective checks")
{
    auto rx = make_ring(Field::rationals(), {"x"}), ry = make_ring(Field::rationals(), {"y"});
    auto x = affine_space(rx), y = affine_space(ry);
    auto xy = product_ring({rx, ry});
    Ambient amb = Ambient::affine(xy);
    auto g = check_finite_surjective(associated_cycle(I(xy, {"y - x^2"}), amb).cycle, x, y);
    REQUIRE(g.size() == 1);
    CHECK(g[0].monic_degree.at("y") == 1);
    auto dbl = check_finite_surjective(associated_cycle(I(xy, {"y^2 - x"}), amb).cycle, x, y);
    CHECK(dbl[0].monic_degree.at("y") == 2);
    CHECK(code_of([&] { check_finite_surjective(associated_cycle(I(xy, {"x*y - 1"}), amb).cycle, x, y); }) == ErrorCode::NotFinite);
    CHECK(code_of([&] { check_finite_surjective(associated_cycle(I(xy, {"x", "y"}), amb).cycle, x, y); }) == ErrorCode::NotSurjective);
}

TEST_CASE("graphs")
{
    auto rx = make_ring(Field::rationals(), {"x"}), ry = make_ring(Field::rationals(), {"y"});
    auto x = affine_space(rx), y = affine_space(ry);
    auto id = identity(x);
    REQUIRE(id.cycle.terms.size() == 1);
    CHECK(id.cycle.terms[0].second == 1);
    CHECK(id.cycle.terms[0].first.ideal == I(product_ring({rx, rx}), {"x' - x"}));
    auto sq = graph(x, y, {P("x^2", rx)});
    CHECK(sq.cycle.terms[0].first.ideal == I(product_ring({rx, ry}), {"y - x^2"}));

    auto fx = make_ring(Field::prime(5), {"x"}), fy = make_ring(Field::prime(5), {"y"});
    auto frob = graph(affine_space(fx), affine_space(fy), {P("x^5", fx)});
    CHECK(frob.certificates[0].monic_degree.at("y") == 1);
    CHECK(frob.cycle.terms[0].second == 1);

    auto circle = make_variety(I(ry, {"y^2 - 1"}));
    CHECK(code_of([&] { graph(x, circle, {P("x", rx)}); }) == ErrorCode::ImageNotInTarget);
    CHECK(graph(make_variety(I(rx, {"x^2 - 1"})), circle, {P("x", rx)}).cycle.terms.size() == 2);
}

TEST_CASE("pushforward along a projection")
{
    auto r = make_ring(Field::rationals(), {"x", "y"});
    auto line = make_ring(Field::rationals(), {"x"});
    Ambient amb = Ambient::affine(r), tgt = Ambient::affine(line);
    auto two = pushforward(associated_cycle(I(r, {"y^2 - x"}), amb).cycle, tgt, {0});
    REQUIRE(two.terms.size() == 1);
    CHECK(two.terms[0].second == 2);
    CHECK(two.terms[0].first.ideal.is_zero());
    auto one = pushforward(associated_cycle(I(r, {"y"}), amb).cycle, tgt, {0});
    CHECK(one.terms[0].second == 1);
    CHECK(pushforward(associated_cycle(I(r, {"x"}), amb).cycle, tgt, {0}).is_empty());
}

TEST_CASE("composition")
{
    auto rx = make_ring(Field::rationals(), {"x"}), ry = make_ring(Field::rationals(), {"y"}), rz = make_ring(Field::rationals(), {"z"});
    auto x = affine_space(rx), y = affine_space(ry), z = affine_space(rz);
    auto gf = compose(graph(x, y, {P("x^2", rx)}), graph(y, z, {P("y + 1", ry)}));
    CHECK(gf == graph(x, z, {P("x^2 + 1", rx)}));
    auto alpha = from_ideal(x, y, "y^2 - x");
    CHECK(compose(identity(x), alpha) == alpha);
    CHECK(compose(alpha, identity(y)) == alpha);
    auto c = compose(alpha, from_ideal(y, z, "z - y^2"));
    REQUIRE(c.cycle.terms.size() == 1);
    CHECK(c.cycle.terms[0].second == 2);
    CHECK(c.cycle.terms[0].first.ideal == I(product_ring({rx, rz}), {"z - x"}));
    CHECK(code_of([&] { compose(alpha, alpha); }) == ErrorCode::AmbientMismatch);
}

TEST_CASE("property: graph is functorial")
{
    auto rx = make_ring(Field::rationals(), {"x"}), ry = make_ring(Field::rationals(), {"y"}), rz = make_ring(Field::rationals(), {"z"});
    auto x = affine_space(rx), y = affine_space(ry), z = affine_space(rz);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Poly f = random_univariate(rng, rx, 2), g = random_univariate(rng, ry, 2);
        Poly gf(rx);
        for (const auto& t : g.terms()) gf += Poly::constant(rx, t.coeff) * f.pow(static_cast<unsigned>(t.mono[0]));
        auto composed = compose(graph(x, y, {f}), graph(y, z, {g}));
        CHECK(composed == graph(x, z, {gf}));
        CHECK_NOTHROW(check_finite_surjective(composed.cycle, x, z));
    }
}

TEST_CASE("property: composite fiber degree matches the triple intersection")
{
    // oracle: length of the fiber of V(I1 + I2) over x = v in the triple ring
    auto rx = make_ring(Field::rationals(), {"x"}), ry = make_ring(Field::rationals(), {"y"}), rz = make_ring(Field::rationals(), {"z"});
    auto x = affine_space(rx), y = affine_space(ry), z = affine_space(rz);
    auto triple = product_ring({rx, ry, rz});
    auto xz = product_ring({rx, rz});
    const char* firsts[] = {"y^2 - x", "y^3 - x - 1", "y - x^2"};
    const char* seconds[] = {"z - y^2", "z^2 - y", "z - y - 3"};
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> val(2, 9);
    for (auto f : firsts)
        for (auto s : seconds) {
            auto c = compose(from_ideal(x, y, f), from_ideal(y, z, s));
            long v = val(rng);
            Poly xv = Poly::variable(triple, 0) - Poly::constant(triple, v);
            Ideal fiber(triple, {P(f, triple), P(s, triple), xv});
            std::int64_t predicted = 0;
            for (const auto& [p, m] : c.cycle.terms) {
                std::vector<Poly> gens = p.ideal.generators();
                gens.push_back(Poly::variable(xz, 0) - Poly::constant(xz, v));
                predicted += m * vector_space_dimension(Ideal(xz, gens));
            }
            CHECK(predicted == vector_space_dimension(fiber));
        }
}

TEST_CASE("property: category laws on graph samples")
{
    auto rx = make_ring(Field::rationals(), {"x"});
    auto x = affine_space(rx);
    std::vector<Correspondence> sample;
    for (const char* f : {"x^2", "x + 1", "2*x"}) sample.push_back(graph(x, x, {P(f, rx)}));
    sample.push_back(from_ideal(x, x, "x'^2 - x"));
    auto rep = category_laws_check(sample);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok());
    CHECK(rep.checks > 60);
}

TEST_CASE("smoothness")
{
    auto r = make_ring(Field::rationals(), {"x", "y"});
    auto circle = make_variety(I(r, {"x^2 + y^2 - 1"}));
    CHECK(check_smooth(circle));
    auto node = make_variety(I(r, {"y^2 - x^2 - x^3"}));
    CHECK_FALSE(check_smooth(node));
    auto crossing = make_variety(I(r, {"x*y"}));
    CHECK_FALSE(check_smooth(crossing));
    auto parallel = make_variety(I(r, {"x*(x - 1)"}));
    CHECK(check_smooth(parallel));
}
