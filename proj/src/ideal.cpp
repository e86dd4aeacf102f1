#include <algorithm>
#include <functional>

#include "cyclelab/error.hpp"
#include "cyclelab/factor.hpp"
#include "cyclelab/groebner.hpp"
#include "cyclelab/settings.hpp"

namespace cyclelab {

Ideal::Ideal(RingPtr ring, std::vector<Poly> generators) : ring_(std::move(ring))
{
    for (auto& g : generators) {
        if (!same_ring(g.ring(), ring_)) raise(ErrorCode::MixedContext, "ideal generator from ring " + g.ring()->to_string());
        if (g.is_zero()) continue;
        if (!g.is_homogeneous()) homogeneous_ = false;
        gens_.push_back(g.with_order(MonomialOrder::grevlex()));
    }
}

Ideal Ideal::unit(RingPtr ring)
{
    Poly one = Poly::constant(ring, 1);
    return Ideal(std::move(ring), {one});
}

const std::vector<Poly>& Ideal::basis(const MonomialOrder& order) const
{
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->bases.find(order);
        if (it != cache_->bases.end()) return it->second;
    }
    std::vector<Poly> b = groebner_basis(gens_, order);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->bases.emplace(order, std::move(b)).first->second;
}

Poly Ideal::reduce(const Poly& f) const { return normal_form(f, basis(), MonomialOrder::grevlex()); }

bool Ideal::contains(const Ideal& o) const
{
    for (const auto& g : o.generators())
        if (!contains(g)) return false;
    return true;
}

bool Ideal::is_unit() const
{
    const auto& b = basis();
    return b.size() == 1 && b[0].is_constant();
}

bool operator==(const Ideal& a, const Ideal& b)
{
    if (!same_ring(a.ring(), b.ring())) return false;
    return a.basis() == b.basis();
}

std::string Ideal::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i) s += ", ";
        s += gens_[i].to_string();
    }
    return s + ")";
}

namespace {

void check_same(const Ideal& a, const Ideal& b)
{
    if (!same_ring(a.ring(), b.ring()))
        raise(ErrorCode::MixedContext, "ideals in different rings: " + a.ring()->to_string() + " vs " + b.ring()->to_string());
}

// Generators of I (in a ring extended by extra variables) free of the extra variables,
// mapped back to the original ring.
Ideal eliminate_extra(const RingPtr& base, const RingPtr& ext, const std::vector<Poly>& gens)
{
    std::vector<bool> first(ext->nvars(), false);
    for (std::size_t i = base->nvars(); i < ext->nvars(); ++i) first[i] = true;
    auto gb = groebner_basis(gens, MonomialOrder::block(first));
    std::vector<std::size_t> map(ext->nvars(), SIZE_MAX);
    for (std::size_t i = 0; i < base->nvars(); ++i) map[i] = i;
    std::vector<Poly> out;
    for (const auto& g : gb) {
        bool free = true;
        for (std::size_t i = base->nvars(); i < ext->nvars() && free; ++i)
            if (g.involves(i)) free = false;
        if (free) out.push_back(g.map_to_ring(base, map));
    }
    return Ideal(base, std::move(out));
}

}  // namespace

Ideal ideal_sum(const Ideal& a, const Ideal& b)
{
    check_same(a, b);
    std::vector<Poly> g = a.generators();
    g.insert(g.end(), b.generators().begin(), b.generators().end());
    return Ideal(a.ring(), std::move(g));
}

Ideal ideal_product(const Ideal& a, const Ideal& b)
{
    check_same(a, b);
    std::vector<Poly> g;
    for (const auto& x : a.generators())
        for (const auto& y : b.generators()) g.push_back(x * y);
    return Ideal(a.ring(), std::move(g));
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b)
{
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Ideal::zero(a.ring());
    RingPtr ext = extend_ring(a.ring(), {fresh_name(a.ring(), "_t")});
    Poly t = Poly::variable(ext, ext->nvars() - 1);
    Poly one_minus_t = Poly::constant(ext, 1) - t;
    std::vector<Poly> g;
    for (const auto& x : a.generators()) g.push_back(t * lift(x, ext));
    for (const auto& y : b.generators()) g.push_back(one_minus_t * lift(y, ext));
    return eliminate_extra(a.ring(), ext, g);
}

Ideal ideal_quotient(const Ideal& a, const Poly& g)
{
    if (!same_ring(a.ring(), g.ring())) raise(ErrorCode::MixedContext, "quotient by a polynomial of another ring");
    if (g.is_zero() || a.contains(g)) return Ideal::unit(a.ring());
    Ideal inter = ideal_intersection(a, Ideal(a.ring(), {g}));
    std::vector<Poly> out;
    for (const auto& h : inter.generators()) {
        auto q = divide_exact(h, g);
        if (!q) raise(ErrorCode::InvariantViolation, "intersection generator not divisible by " + g.to_string());
        out.push_back(*q);
    }
    return Ideal(a.ring(), std::move(out));
}

Ideal ideal_quotient(const Ideal& a, const Ideal& b)
{
    check_same(a, b);
    Ideal acc = Ideal::unit(a.ring());
    for (const auto& g : b.generators()) {
        Ideal q = ideal_quotient(a, g);
        acc = acc.is_unit() ? q : ideal_intersection(acc, q);
    }
    return acc.canonical();
}

Ideal saturation(const Ideal& a, const Ideal& b)
{
    Ideal cur = a.canonical();
    for (int round = 0; round < settings().saturation_cap; ++round) {
        Ideal next = ideal_quotient(cur, b);
        if (next == cur) return cur;
        cur = next.canonical();
    }
    raise(ErrorCode::ResourceLimit, "saturation did not stabilize within " + std::to_string(settings().saturation_cap) + " quotients");
}

Ideal saturation(const Ideal& a, const Poly& g) { return saturation(a, Ideal(a.ring(), {g})); }

Ideal saturate_by_element(const Ideal& a, const Poly& g)
{
    if (!same_ring(a.ring(), g.ring())) raise(ErrorCode::MixedContext, "saturation by a polynomial of another ring");
    if (g.is_zero()) return Ideal::unit(a.ring());
    RingPtr ext = extend_ring(a.ring(), {fresh_name(a.ring(), "_s")});
    Poly t = Poly::variable(ext, ext->nvars() - 1);
    std::vector<Poly> gens;
    for (const auto& x : a.generators()) gens.push_back(lift(x, ext));
    gens.push_back(Poly::constant(ext, 1) - t * lift(g, ext));
    return eliminate_extra(a.ring(), ext, gens);
}

MonomialOrder elimination_order(const RingPtr& ring, const std::vector<std::size_t>& keep)
{
    std::vector<bool> first(ring->nvars(), true);
    for (auto k : keep) {
        if (k >= ring->nvars()) raise(ErrorCode::ValidationError, "variable index out of range");
        first[k] = false;
    }
    return MonomialOrder::block(first);
}

Ideal elimination_ideal(const Ideal& a, const std::vector<std::size_t>& keep)
{
    MonomialOrder ord = elimination_order(a.ring(), keep);
    std::vector<Poly> out;
    for (const auto& g : a.basis(ord)) {
        bool free = true;
        for (std::size_t i = 0; i < a.ring()->nvars() && free; ++i)
            if (ord.in_first_block(i) && g.involves(i)) free = false;
        if (free) out.push_back(g.with_order(MonomialOrder::grevlex()));
    }
    return Ideal(a.ring(), std::move(out));
}

std::vector<Monomial> leading_monomials(const std::vector<Poly>& basis)
{
    std::vector<Monomial> ms;
    for (const auto& g : basis)
        if (!g.is_zero()) ms.push_back(g.lead_monomial());
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < ms.size() && !redundant; ++j) {
            if (i == j || !ms[j].divides(ms[i])) continue;
            redundant = ms[j] != ms[i] || j < i;
        }
        if (!redundant) out.push_back(ms[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> maximal_independent_set(const Ideal& a)
{
    if (a.is_unit()) return {};
    const std::size_t n = a.ring()->nvars();
    std::vector<Monomial> lm = leading_monomials(a.basis());
    // supports of the leading monomials as bitmasks
    std::vector<std::uint64_t> supports;
    for (const auto& m : lm) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (m[i] > 0) s |= 1ULL << i;
        supports.push_back(s);
    }
    if (n > 62) raise(ErrorCode::UnsupportedShape, "too many variables for independence search");
    std::vector<std::size_t> best;
    std::vector<std::size_t> cur;
    // depth-first over subsets in increasing variable order; prune by remaining size
    auto independent = [&](std::uint64_t mask) {
        for (auto s : supports)
            if ((s & ~mask) == 0) return false;
        return true;
    };
    std::function<void(std::size_t, std::uint64_t)> dfs = [&](std::size_t start, std::uint64_t mask) {
        if (cur.size() > best.size()) best = cur;
        if (best.size() == n) return;
        for (std::size_t i = start; i < n; ++i) {
            if (cur.size() + (n - i) <= best.size()) return;
            std::uint64_t m2 = mask | (1ULL << i);
            if (!independent(m2)) continue;
            cur.push_back(i);
            dfs(i + 1, m2);
            cur.pop_back();
        }
    };
    dfs(0, 0);
    return best;
}

int krull_dimension(const Ideal& a)
{
    if (a.is_unit()) return -1;
    return static_cast<int>(maximal_independent_set(a).size());
}

}  // namespace cyclelab
