#include "cyclelab/module.hpp"

#include <algorithm>
#include <functional>

#include "cyclelab/error.hpp"

namespace cyclelab {

namespace {

// R[e_0..e_{m-1}] with the e's appended after R's variables.
struct Encoding {
    RingPtr base;
    RingPtr ext;
    std::size_t n;
    std::size_t m;

    Encoding(const RingPtr& ring, std::size_t rank) : base(ring), n(ring->nvars()), m(rank)
    {
        std::vector<std::string> names;
        for (std::size_t k = 0; k < rank; ++k) names.push_back(fresh_name(ring, "_e" + std::to_string(k)));
        ext = extend_ring(ring, names);
    }

    Poly e(std::size_t k) const { return Poly::variable(ext, n + k); }

    Poly encode(const ModVec& v) const
    {
        if (v.size() != m) raise(ErrorCode::ValidationError, "module vector of wrong rank");
        Poly acc(ext);
        for (std::size_t k = 0; k < m; ++k)
            if (!v[k].is_zero()) acc += lift(v[k], ext) * e(k);
        return acc;
    }

    // Degree-one part in the e's, split back into components.
    std::optional<ModVec> decode(const Poly& p) const
    {
        std::vector<std::vector<Term>> parts(m);
        for (const auto& t : p.terms()) {
            std::int64_t edeg = 0;
            std::size_t which = 0;
            for (std::size_t k = 0; k < m; ++k)
                if (t.mono[n + k] > 0) {
                    edeg += t.mono[n + k];
                    which = k;
                }
            if (edeg != 1) return std::nullopt;
            Monomial::Exponents ex(t.mono.exponents().begin(), t.mono.exponents().begin() + static_cast<std::ptrdiff_t>(n));
            parts[which].push_back({Monomial(std::move(ex)), t.coeff});
        }
        ModVec v;
        for (auto& ts : parts) v.push_back(Poly::from_terms(base, MonomialOrder::grevlex(), std::move(ts)));
        return v;
    }

    std::vector<Poly> truncation() const
    {
        std::vector<Poly> out;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) out.push_back(e(i) * e(j));
        return out;
    }
};

std::vector<Poly> encode_all(const Encoding& enc, const Submodule& s)
{
    std::vector<Poly> gens = enc.truncation();
    for (const auto& v : s.gens) {
        Poly p = enc.encode(v);
        if (!p.is_zero()) gens.push_back(std::move(p));
    }
    return gens;
}

MonomialOrder default_module_order(const Encoding& enc)
{
    std::vector<bool> first(enc.ext->nvars(), false);
    for (std::size_t k = 0; k < enc.m; ++k) first[enc.n + k] = true;
    return MonomialOrder::block(first);
}

// Order with the parameters in the last block.
MonomialOrder parameter_order(const Encoding& enc, const std::vector<std::size_t>& params)
{
    std::vector<bool> first(enc.ext->nvars(), true);
    for (auto u : params) first[u] = false;
    return MonomialOrder::block(first);
}

std::vector<ModVec> degree_one(const Encoding& enc, const std::vector<Poly>& gb)
{
    std::vector<ModVec> out;
    for (const auto& g : gb)
        if (auto v = enc.decode(g)) out.push_back(std::move(*v));
    return out;
}

}  // namespace

Submodule Submodule::ideal_times_free(const Ideal& j, std::size_t rank)
{
    Submodule s = zero(j.ring(), rank);
    for (const auto& g : j.generators())
        for (std::size_t k = 0; k < rank; ++k) {
            ModVec v(rank, Poly(j.ring()));
            v[k] = g;
            s.gens.push_back(std::move(v));
        }
    return s;
}

void Submodule::add(const Submodule& o)
{
    if (o.rank != rank || !same_ring(o.ring, ring)) raise(ErrorCode::MixedContext, "submodules of different free modules");
    gens.insert(gens.end(), o.gens.begin(), o.gens.end());
}

ModVec unit_vector(const RingPtr& ring, std::size_t rank, std::size_t k)
{
    ModVec v(rank, Poly(ring));
    v[k] = Poly::constant(ring, 1);
    return v;
}

std::vector<ModVec> module_basis(const Submodule& m)
{
    Encoding enc(m.ring, m.rank);
    return degree_one(enc, groebner_basis(encode_all(enc, m), default_module_order(enc)));
}

bool module_contains(const Submodule& m, const ModVec& v)
{
    Encoding enc(m.ring, m.rank);
    MonomialOrder ord = default_module_order(enc);
    auto gb = groebner_basis(encode_all(enc, m), ord);
    return normal_form(enc.encode(v), gb, ord).is_zero();
}

Submodule module_kernel(const std::vector<ModVec>& columns, const Submodule& relations)
{
    const RingPtr& ring = relations.ring;
    const std::size_t m = relations.rank, r = columns.size();
    Encoding enc(ring, m + r);
    // (g_j, u_j) and (l, 0); eliminate the first m components
    std::vector<Poly> gens = enc.truncation();
    for (std::size_t j = 0; j < r; ++j) {
        ModVec v = columns[j];
        if (v.size() != m) raise(ErrorCode::ValidationError, "kernel column of wrong rank");
        for (std::size_t k = 0; k < r; ++k) v.push_back(k == j ? Poly::constant(ring, 1) : Poly(ring));
        gens.push_back(enc.encode(v));
    }
    for (const auto& l : relations.gens) {
        ModVec v = l;
        v.resize(m + r, Poly(ring));
        gens.push_back(enc.encode(v));
    }
    std::vector<bool> first(enc.ext->nvars(), false);
    for (std::size_t k = 0; k < m; ++k) first[enc.n + k] = true;
    auto gb = groebner_basis(gens, MonomialOrder::block(first));
    Submodule out = Submodule::zero(ring, r);
    for (const auto& v : degree_one(enc, gb)) {
        bool in_tail = true;
        for (std::size_t k = 0; k < m && in_tail; ++k)
            if (!v[k].is_zero()) in_tail = false;
        if (in_tail) out.gens.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
    }
    return out;
}

namespace {

std::int64_t count_standard(const Encoding& enc, const std::vector<Poly>& gb, const std::vector<std::size_t>& params)
{
    std::vector<bool> is_param(enc.n, false);
    for (auto u : params) is_param[u] = true;
    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < enc.n; ++i)
        if (!is_param[i]) free_vars.push_back(i);
    std::int64_t total = 0;
    for (std::size_t k = 0; k < enc.m; ++k) {
        // leading monomials in component k, restricted to the free variables
        std::vector<std::vector<std::int32_t>> lms;
        for (const auto& g : gb) {
            const Monomial& lm = g.lead_monomial();
            std::int64_t edeg = 0;
            for (std::size_t j = 0; j < enc.m; ++j) edeg += lm[enc.n + j];
            if (edeg != 1 || lm[enc.n + k] != 1) continue;
            std::vector<std::int32_t> e;
            for (auto i : free_vars) e.push_back(lm[i]);
            lms.push_back(std::move(e));
        }
        const std::size_t f = free_vars.size();
        bool unit = false;
        std::vector<std::int32_t> bound(f, -1);
        for (const auto& e : lms) {
            std::size_t support = 0, var = 0;
            for (std::size_t i = 0; i < f; ++i)
                if (e[i] > 0) {
                    ++support;
                    var = i;
                }
            if (support == 0) unit = true;
            if (support == 1 && (bound[var] < 0 || e[var] < bound[var])) bound[var] = e[var];
        }
        if (unit) continue;
        for (auto b : bound)
            if (b < 0) return -1;
        std::vector<std::int32_t> cur(f, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == f) {
                for (const auto& e : lms) {
                    bool div = true;
                    for (std::size_t j = 0; j < f && div; ++j)
                        if (e[j] > cur[j]) div = false;
                    if (div) return;
                }
                ++total;
                return;
            }
            for (std::int32_t x = 0; x < bound[i]; ++x) {
                cur[i] = x;
                rec(i + 1);
            }
            cur[i] = 0;
        };
        rec(0);
    }
    return total;
}

}  // namespace

std::int64_t generic_quotient_dimension(const Submodule& relations, const std::vector<std::size_t>& params)
{
    Encoding enc(relations.ring, relations.rank);
    auto gb = groebner_basis(encode_all(enc, relations), parameter_order(enc, params));
    return count_standard(enc, gb, params);
}

std::int64_t residue_degree(const Ideal& prime)
{
    auto u = maximal_independent_set(prime);
    std::int64_t d = generic_quotient_dimension(Submodule::ideal_times_free(prime, 1), u);
    if (d <= 0) raise(ErrorCode::InvariantViolation, "residue field degree is not finite for " + prime.to_string());
    return d;
}

std::int64_t length_at(const Submodule& relations, const Ideal& prime)
{
    constexpr int kMaxPower = 48;
    if (!same_ring(relations.ring, prime.ring())) raise(ErrorCode::MixedContext, "length_at: prime from another ring");
    if (prime.is_unit()) raise(ErrorCode::ValidationError, "length_at: unit ideal is not prime");
    auto params = maximal_independent_set(prime);
    std::int64_t kappa = residue_degree(prime);
    Encoding enc(relations.ring, relations.rank);
    MonomialOrder ord = parameter_order(enc, params);
    const auto& pgens = prime.basis();

    // M_N = L + P^N F, built as M_{N+1} = L + P M_N
    Submodule cur = relations;
    cur.add(Submodule::ideal_times_free(prime, relations.rank));
    std::vector<Poly> gb = groebner_basis(encode_all(enc, cur), ord);
    std::int64_t prev = count_standard(enc, gb, params);
    if (prev == 0) return 0;
    for (int power = 2; power <= kMaxPower; ++power) {
        Submodule next = relations;
        for (const auto& v : degree_one(enc, gb))
            for (const auto& p : pgens) {
                ModVec w;
                for (const auto& x : v) w.push_back(p * x);
                next.gens.push_back(std::move(w));
            }
        gb = groebner_basis(encode_all(enc, next), ord);
        std::int64_t d = count_standard(enc, gb, params);
        if (d < 0) raise(ErrorCode::InvariantViolation, "length_at: quotient lost finiteness");
        if (d == prev) {
            if (d % kappa != 0) raise(ErrorCode::InvariantViolation, "length_at: dimension not a multiple of the residue degree");
            return d / kappa;
        }
        prev = d;
        if (power == 6 && relations.rank == 1) {
            // for cyclic modules, confirm minimality before continuing
            std::vector<Poly> igens;
            for (const auto& v : relations.gens) igens.push_back(v[0]);
            Ideal i(relations.ring, igens);
            if (prime.contains(saturation(i, prime)))
                raise(ErrorCode::NotMinimalPrime, prime.to_string() + " is not a minimal prime of " + i.to_string());
        }
    }
    raise(ErrorCode::NotFiniteLength, "localized module does not stabilize at " + prime.to_string());
}

}  // namespace cyclelab
