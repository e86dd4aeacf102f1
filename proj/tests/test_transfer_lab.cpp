#include <doctest.h>

#include <random>

#include "cyclelab/error.hpp"
#include "cyclelab/transfer_lab.hpp"

using namespace cyclelab;

namespace {

Ideal I(const RingPtr& r, std::initializer_list<const char*> gens)
{
    std::vector<Poly> g;
    for (auto s : gens) g.push_back(parse_poly(s, r));
    return Ideal(r, g);
}

TransferInstance instance(InstanceKind kind, Ambient amb, std::vector<Ideal> ideals, std::size_t primes = 20)
{
    TransferInstance t;
    t.kind = kind;
    t.name = kind_name(kind);
    t.ambient = std::move(amb);
    t.ideals = std::move(ideals);
    t.sample = PrimeSample::first_above(3, primes);
    return t;
}

void require_pass(const CommutationReport& r)
{
    for (const auto& o : r.per_prime)
        if (o.outcome == Outcome::Disagree) MESSAGE(o.prime << ": " << o.op_then_reduce << "  vs  " << o.reduce_then_op);
    CHECK(r.verdict.verdict == Verdict::CofiniteHolds);
    CHECK(r.passed());
}

// oracle: 2 is a square mod p iff p = +-1 mod 8
bool two_is_square(std::uint64_t p) { return p % 8 == 1 || p % 8 == 7; }

}  // namespace

TEST_CASE("reducing instances")
{
    auto r = make_ring(Field::rationals(), {"x"});
    auto t = instance(InstanceKind::AssociatedCycle, Ambient::affine(r), {I(r, {"x^2 - 2"})});
    auto red = reduce_instance(t, 7);
    CHECK(red.ideals[0].generators()[0].to_string() == "x^2 + 5");
    CHECK(red.ambient.ring->field.characteristic() == 7);
    auto sixth = instance(InstanceKind::AssociatedCycle, Ambient::affine(r), {I(r, {"x - 1/6"})});
    for (std::uint64_t p : {2, 3}) {
        try {
            reduce_instance(sixth, p);
            FAIL("expected BadPrime");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BadPrime);
        }
    }
    auto p2 = make_ring(Field::rationals(), {"x", "y", "z"});
    auto conics = instance(InstanceKind::IntersectionProduct, Ambient::projective(p2), {I(p2, {"x^2 + 3*y^2 - z^2"}), I(p2, {"2*x*y - z^2"})});
    auto c101 = reduce_instance(conics, 101);
    CHECK(c101.ideals[0].generators()[0].total_degree() == 2);
    CHECK(c101.ideals[1].generators()[0].total_degree() == 2);
}

TEST_CASE("associated cycle commutes with reduction")
{
    auto r = make_ring(Field::rationals(), {"x"});
    auto sq = check_commutation(instance(InstanceKind::AssociatedCycle, Ambient::affine(r), {I(r, {"x^2"})}));
    require_pass(sq);
    CHECK(sq.verdict.exceptions.empty());
    CHECK(sq.per_prime[0].reduce_then_op == "2*[V(x)]");

    auto two = check_commutation(instance(InstanceKind::AssociatedCycle, Ambient::affine(r), {I(r, {"x^2 - 2"})}, 30));
    require_pass(two);
    for (const auto& o : two.per_prime) {
        bool split = o.reduce_then_op.find("] + ") != std::string::npos;
        CHECK(split == two_is_square(o.prime));
    }
}

TEST_CASE("every kind commutes on a small instance")
{
    auto a2 = make_ring(Field::rationals(), {"x", "y"});
    auto p2 = make_ring(Field::rationals(), {"x", "y", "z"});
    require_pass(check_commutation(instance(InstanceKind::LocalLength, Ambient::affine(a2), {I(a2, {"x^2 - 3", "y^2"}), I(a2, {"x^2 - 3", "y"})})));

    auto k = instance(InstanceKind::KoszulData, Ambient::affine(a2), {Ideal::zero(a2)});
    k.sequence = {parse_poly("x^2 - 5*y", a2), parse_poly("y^2 - x", a2)};
    require_pass(check_commutation(k));

    require_pass(check_commutation(
        instance(InstanceKind::IntersectionProduct, Ambient::projective(p2), {I(p2, {"x^2 + y^2 - 2*z^2"}), I(p2, {"x*y - z^2"})})));

    auto push = instance(InstanceKind::Pushforward, Ambient::affine(a2), {I(a2, {"y^3 - x*y - 7"})});
    push.target = make_ring(Field::rationals(), {"x"});
    push.keep = {0};
    require_pass(check_commutation(push));

    auto rx = make_ring(Field::rationals(), {"x"}), ry = make_ring(Field::rationals(), {"y"}), rz = make_ring(Field::rationals(), {"z"});
    auto comp = instance(InstanceKind::Compose, Ambient::affine(rx), {I(product_ring({rx, ry}), {"y^2 - x"}), I(product_ring({ry, rz}), {"z - y^2 - 1"})});
    comp.factors = {rx, ry, rz};
    require_pass(check_commutation(comp));

    auto quartic = check_commutation(instance(InstanceKind::HilbertDegree, Ambient::projective(p2), {I(p2, {"x^4 + y^4 - 3*z^4 + x*y*z^2"})}));
    require_pass(quartic);
    CHECK(quartic.per_prime[0].reduce_then_op.ends_with("degree 4"));
}

TEST_CASE("json round trip")
{
    auto rx = make_ring(Field::rationals(), {"x"}), ry = make_ring(Field::rationals(), {"y"}), rz = make_ring(Field::rationals(), {"z"});
    auto comp = instance(InstanceKind::Compose, Ambient::affine(rx), {I(product_ring({rx, ry}), {"y^2 - x"}), I(product_ring({ry, rz}), {"z - y"})});
    comp.factors = {rx, ry, rz};
    auto j = instance_to_json(comp);
    auto back = instance_from_json(j);
    CHECK(instance_to_json(back) == j);
    CHECK(back.ideals[1] == comp.ideals[1]);
    nlohmann::json broken = j;
    broken.erase("factors");
    try {
        instance_from_json(broken);
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ValidationError);
    }
}

TEST_CASE("complexity survey")
{
    auto p2 = make_ring(Field::rationals(), {"x", "y", "z"});
    std::vector<SurveyPair> lines{{"lines", I(p2, {"x - z"}), I(p2, {"y + 2*z"}), 2}};
    auto l = complexity_survey(lines, {2}, {2}, PrimeSample{});
    CHECK(l.rational.max_complexity.at({2, 2}) == 2);

    std::vector<SurveyPair> conics{
        {"four rational points", I(p2, {"x^2 - z^2"}), I(p2, {"y^2 - z^2"}), 2},
        {"circle and hyperbola", I(p2, {"x^2 + y^2 - 5*z^2"}), I(p2, {"x*y - 2*z^2"}), 2},
        {"tangent", I(p2, {"y*z - x^2"}), I(p2, {"y"}), 2},
    };
    auto s = complexity_survey(conics, {2, 3}, {2, 3}, PrimeSample::first_above(5, 5));
    CHECK(s.rational.max_complexity.at({3, 2}) == 5);
    CHECK(s.rational.max_complexity.at({3, 3}) == 5);
    CHECK(s.rational.max_complexity.at({2, 2}) == 0);
    CHECK(s.identical);
    CHECK(s.monotone);
    CHECK(s.prime_tables.size() == 5);
}

TEST_CASE("property: disagreements stay inside the bad primes")
{
    // random plane curves f(x, y) = 0 with small integer coefficients
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> c(-4, 4);
    auto a2 = make_ring(Field::rationals(), {"x", "y"});
    for (int trial = 0; trial < 12; ++trial) {
        std::string f = "y^2 - x^3";
        for (const char* m : {"x^2", "x*y", "x", "y", "1"}) {
            int k = c(rng);
            f += (k < 0 ? " - " : " + ") + std::to_string(std::abs(k)) + "*" + m;
        }
        auto rep = check_commutation(instance(InstanceKind::AssociatedCycle, Ambient::affine(a2), {I(a2, {f.c_str()})}, 15));
        CHECK(rep.disagreements_at_good_primes().empty());
        CHECK(rep.exceptions_within_bad_primes());
        CHECK(rep.verdict.verdict == Verdict::CofiniteHolds);
    }
}

TEST_CASE("property: enlarging the sample keeps the verdict")
{
    auto r = make_ring(Field::rationals(), {"x", "y"});
    for (const char* f : {"x^2 - 7", "x*y - 3", "x^2 + y^2 + 1"}) {
        auto small = check_commutation(instance(InstanceKind::AssociatedCycle, Ambient::affine(r), {I(r, {f})}, 10));
        auto large = check_commutation(instance(InstanceKind::AssociatedCycle, Ambient::affine(r), {I(r, {f})}, 40));
        CHECK(small.verdict.verdict == Verdict::CofiniteHolds);
        CHECK(large.verdict.verdict == small.verdict.verdict);
    }
}
