#include "cyclelab/groebner.hpp"

#include <algorithm>

#include "cyclelab/error.hpp"
#include "cyclelab/settings.hpp"

namespace cyclelab {

namespace {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

// Index of a basis element whose leading monomial divides m, or npos.
std::size_t find_divisor(const std::vector<Poly>& basis, const std::vector<bool>* active, const Monomial& m)
{
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (active && !(*active)[k]) continue;
        if (basis[k].lead_monomial().divides(m)) return k;
    }
    return static_cast<std::size_t>(-1);
}

Poly reduce_full(Poly r, const std::vector<Poly>& basis, const std::vector<bool>* active)
{
    const MonomialOrder order = r.order();
    std::vector<Term> rem;
    DivisorRecorder* rec = DivisorRecorder::active();
    while (!r.is_zero()) {
        std::size_t k = find_divisor(basis, active, r.lead_monomial());
        if (k == static_cast<std::size_t>(-1)) {
            rem.push_back(r.lead());
            r.drop_lead();
            continue;
        }
        const Poly& g = basis[k];
        if (rec && r.field().is_rational()) rec->record(r.lead_coeff().rational());
        Scalar c = g.is_monic() ? r.lead_coeff() : r.lead_coeff() / g.lead_coeff();
        r = r.sub_mul_term(c, r.lead_monomial() / g.lead_monomial(), g);
    }
    return Poly::from_terms(r.ring(), order, std::move(rem));
}

Poly s_polynomial(const Poly& f, const Poly& g, const Monomial& lcm)
{
    // f and g are monic
    Poly a = f.times_term(lcm / f.lead_monomial(), Scalar::one(f.field()));
    return a.sub_mul_term(Scalar::one(f.field()), lcm / g.lead_monomial(), g);
}

}  // namespace

Poly normal_form(const Poly& f, const std::vector<Poly>& basis, const MonomialOrder& order)
{
    std::vector<Poly> b;
    b.reserve(basis.size());
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        if (!same_ring(g.ring(), f.ring())) raise(ErrorCode::MixedContext, "normal_form: basis in a different ring");
        b.push_back(g.with_order(order));
    }
    return reduce_full(f.with_order(order), b, nullptr);
}

std::vector<Poly> groebner_basis(const std::vector<Poly>& generators, const MonomialOrder& order)
{
    const std::size_t cap = settings().pair_cap;
    std::vector<Poly> G;
    std::vector<bool> active;
    std::vector<Pair> B;
    std::size_t pairs_made = 0;

    auto update = [&](Poly h) {
        const std::size_t hn = G.size();
        const Monomial& lh = h.lead_monomial();
        // Gebauer-Moeller update
        std::vector<Pair> C, D;
        for (std::size_t k = 0; k < hn; ++k)
            if (active[k]) C.push_back({k, hn, G[k].lead_monomial().lcm(lh)});
        for (std::size_t a = 0; a < C.size(); ++a) {
            const Pair& p = C[a];
            bool keep = G[p.i].lead_monomial().coprime(lh);
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < C.size() && keep; ++b)
                    if (C[b].lcm.divides(p.lcm)) keep = false;
                for (std::size_t b = 0; b < D.size() && keep; ++b)
                    if (D[b].lcm.divides(p.lcm)) keep = false;
            }
            if (keep) D.push_back(p);
        }
        std::vector<Pair> nb;
        for (auto& p : B) {
            bool drop = lh.divides(p.lcm) && G[p.i].lead_monomial().lcm(lh) != p.lcm &&
                        G[p.j].lead_monomial().lcm(lh) != p.lcm;
            if (!drop) nb.push_back(std::move(p));
        }
        for (auto& p : D) {
            if (G[p.i].lead_monomial().coprime(lh)) continue;
            nb.push_back(std::move(p));
            if (++pairs_made > cap)
                raise(ErrorCode::ResourceLimit, "Buchberger pair count exceeds cap " + std::to_string(cap));
        }
        B = std::move(nb);
        for (std::size_t k = 0; k < hn; ++k)
            if (active[k] && lh.divides(G[k].lead_monomial())) active[k] = false;
        G.push_back(std::move(h));
        active.push_back(true);
    };

    {
        std::vector<Poly> start;
        for (const auto& g : generators)
            if (!g.is_zero()) start.push_back(g.with_order(order));
        std::sort(start.begin(), start.end(), [&](const Poly& a, const Poly& b) {
            return order.compare(a.lead_monomial(), b.lead_monomial()) < 0;
        });
        for (auto& g : start) {
            Poly h = reduce_full(std::move(g), G, &active);
            if (h.is_zero()) continue;
            update(h.monic());
        }
    }

    while (!B.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < B.size(); ++k) {
            if (B[k].lcm.degree() != B[best].lcm.degree()) {
                if (B[k].lcm.degree() < B[best].lcm.degree()) best = k;
            } else if (order.compare(B[k].lcm, B[best].lcm) < 0) {
                best = k;
            }
        }
        Pair p = B[best];
        B.erase(B.begin() + static_cast<std::ptrdiff_t>(best));
        Poly h = reduce_full(s_polynomial(G[p.i], G[p.j], p.lcm), G, &active);
        if (h.is_zero()) continue;
        update(h.monic());
    }

    // reduced basis
    std::vector<Poly> minimal;
    for (std::size_t k = 0; k < G.size(); ++k)
        if (active[k]) minimal.push_back(G[k]);
    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return order.compare(a.lead_monomial(), b.lead_monomial()) < 0;
    });
    std::vector<Poly> out;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        std::vector<Poly> others;
        for (std::size_t m = 0; m < minimal.size(); ++m)
            if (m != k) others.push_back(minimal[m]);
        Poly lead = Poly::monomial(minimal[k].ring(), minimal[k].lead_monomial(), minimal[k].lead_coeff(), order);
        Poly tail = minimal[k] - lead;
        out.push_back((lead + reduce_full(tail, others, nullptr)).monic());
    }
    return out;
}

}  // namespace cyclelab
