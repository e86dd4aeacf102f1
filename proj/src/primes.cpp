#include <algorithm>
#include <map>
#include <optional>
#include <random>

#include "cyclelab/cycles.hpp"
#include "cyclelab/error.hpp"
#include "cyclelab/factor.hpp"
#include "cyclelab/module.hpp"
#include "cyclelab/settings.hpp"

namespace cyclelab {

namespace {

struct Found {
    Ideal ideal;
    PrimeCertificate cert;
};

MonomialOrder parameter_block(const RingPtr& ring, const std::vector<std::size_t>& params)
{
    std::vector<bool> first(ring->nvars(), true);
    for (auto u : params) first[u] = false;
    return MonomialOrder::block(first);
}

// Coefficient in k[U] of the leading non-parameter monomial of g.
Poly parameter_lead_coefficient(const Poly& g, const std::vector<bool>& is_param)
{
    const Monomial& lm = g.lead_monomial();
    std::vector<Term> ts;
    for (const auto& t : g.terms()) {
        bool same = true;
        for (std::size_t i = 0; i < is_param.size() && same; ++i)
            if (!is_param[i] && t.mono[i] != lm[i]) same = false;
        if (!same) continue;
        Monomial::Exponents ex = t.mono.exponents();
        for (std::size_t i = 0; i < is_param.size(); ++i)
            if (!is_param[i]) ex[i] = 0;
        ts.push_back({Monomial(std::move(ex)), t.coeff});
    }
    return Poly::from_terms(g.ring(), MonomialOrder::grevlex(), std::move(ts));
}

// I : s^inf for s the product of the distinct irreducible factors of the leading
// coefficients (in k[U]) of a block basis. Returns the saturated ideal and s.
std::pair<Ideal, Poly> saturate_parameters(const Ideal& ideal, const std::vector<std::size_t>& params)
{
    const RingPtr& ring = ideal.ring();
    Poly s = Poly::constant(ring, 1);
    if (params.empty()) return {ideal, s};
    std::vector<bool> is_param(ring->nvars(), false);
    for (auto u : params) is_param[u] = true;
    std::vector<Poly> seen;
    for (const auto& g : ideal.basis(parameter_block(ring, params))) {
        Poly c = parameter_lead_coefficient(g, is_param);
        if (c.is_constant()) continue;
        for (auto& fp : factor_poly(c)) {
            if (std::find(seen.begin(), seen.end(), fp.factor) != seen.end()) continue;
            seen.push_back(fp.factor);
            s = s * fp.factor;
        }
    }
    if (s.is_constant()) return {ideal, s};
    return {saturate_by_element(ideal, s), s};
}

Poly candidate_form(const RingPtr& ring, const std::vector<std::size_t>& free_vars, const std::vector<std::size_t>& params, int attempt)
{
    if (attempt == 0 || free_vars.size() == 1) return Poly::variable(ring, free_vars.back());
    std::mt19937_64 rng(settings().seed + 7919ULL * static_cast<std::uint64_t>(attempt));
    int range = 2 + attempt;
    std::uniform_int_distribution<int> coef(-range, range);
    Poly l(ring);
    for (auto y : free_vars) {
        Poly c = Poly::constant(ring, coef(rng));
        if (attempt >= 4 && !params.empty()) c += Poly::variable(ring, params[rng() % params.size()]) * Poly::constant(ring, coef(rng));
        l += c * Poly::variable(ring, y);
    }
    if (attempt >= 6 && free_vars.size() >= 2) {
        // nonlinear terms help over tiny prime fields
        std::size_t a = rng() % free_vars.size(), b = rng() % free_vars.size();
        l += Poly::variable(ring, free_vars[a]) * Poly::variable(ring, free_vars[b]) * Poly::constant(ring, coef(rng));
    }
    if (l.is_zero() || l.is_constant()) l = Poly::variable(ring, free_vars.back());
    return l;
}

std::vector<Found> decompose_over_parameters(const Ideal& ideal_in, const std::vector<std::size_t>& params, int depth);

// Minimal polynomial in t of multiplication by `form` on A/I, I zero-dimensional. It generates
// (I + (t - form)) meet k[t] and costs only linear algebra on the standard monomials.
Poly minimal_polynomial(const Ideal& ideal, const Poly& form, const RingPtr& ext, std::size_t t)
{
    const auto& basis = ideal.basis();
    const Field field = ideal.ring()->field;
    std::map<Monomial, std::size_t> index;
    for (const auto& m : standard_monomials(basis, ideal.ring()->nvars())) index.emplace(m, index.size());
    const std::size_t n = index.size();
    auto coordinates = [&](const Poly& f) {
        std::vector<Scalar> v(n, Scalar::zero(field));
        for (const auto& term : f.terms()) v[index.at(term.mono)] = term.coeff;
        return v;
    };
    // reduced rows: pivot column, row, and the combination of powers of `form` it represents
    struct Row {
        std::size_t pivot;
        std::vector<Scalar> v, combo;
    };
    std::vector<Row> rows;
    Poly power = Poly::constant(ideal.ring(), 1);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<Scalar> v = coordinates(power), combo(n + 1, Scalar::zero(field));
        combo[k] = Scalar::one(field);
        for (const auto& r : rows) {
            if (v[r.pivot].is_zero()) continue;
            Scalar c = v[r.pivot];
            for (std::size_t j = 0; j < n; ++j) v[j] -= c * r.v[j];
            for (std::size_t j = 0; j <= n; ++j) combo[j] -= c * r.combo[j];
        }
        std::size_t pivot = 0;
        while (pivot < n && v[pivot].is_zero()) ++pivot;
        if (pivot == n) {
            Poly h(ext);
            for (std::size_t j = 0; j <= k; ++j)
                if (!combo[j].is_zero()) h += Poly::variable(ext, t).pow(static_cast<unsigned>(j)).scaled(combo[j]);
            return h.monic();
        }
        Scalar inv = v[pivot].inverse();
        for (auto& x : v) x *= inv;
        for (auto& x : combo) x *= inv;
        for (auto& r : rows) {
            if (r.v[pivot].is_zero()) continue;
            Scalar c = r.v[pivot];
            for (std::size_t j = 0; j < n; ++j) r.v[j] -= c * v[j];
            for (std::size_t j = 0; j <= n; ++j) r.combo[j] -= c * combo[j];
        }
        rows.push_back({pivot, std::move(v), std::move(combo)});
        power = normal_form(power * form, basis, MonomialOrder::grevlex());
    }
    raise(ErrorCode::InvariantViolation, "minimal polynomial exceeds the quotient dimension");
}


// Homogeneous case: no such P contains u = params[0], so decompose on the chart u = 1 and
// homogenize back along a degree-compatible basis.
std::vector<Found> decompose_in_chart(const Ideal& ideal, const std::vector<std::size_t>& params, int depth)
{
    const RingPtr& ring = ideal.ring();
    const std::size_t u = params[0];
    auto [chart, to_chart] = drop_variable(ring, u);
    std::vector<std::size_t> from_chart(chart->nvars());
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        if (to_chart[i] != SIZE_MAX) from_chart[to_chart[i]] = i;
    std::vector<Poly> gens;
    for (const auto& g : ideal.basis()) gens.push_back(g.evaluate(u, Scalar::one(ring->field)).map_to_ring(chart, to_chart));
    std::vector<std::size_t> rest;
    for (std::size_t k = 1; k < params.size(); ++k) rest.push_back(to_chart[params[k]]);
    std::vector<Found> out;
    for (auto& f : decompose_over_parameters(Ideal(chart, gens), rest, depth)) {
        std::vector<Poly> pg;
        for (const auto& g : f.ideal.basis()) pg.push_back(homogenize_with(g.map_to_ring(ring, from_chart), u));
        out.push_back({Ideal(ring, pg), PrimeCertificate::Projection});
    }
    return out;
}

// Minimal primes P of I with P meeting k[U] only in 0, where I k(U)[Y] is zero-dimensional.
std::vector<Found> decompose_over_parameters(const Ideal& ideal_in, const std::vector<std::size_t>& params, int depth)
{
    constexpr int kAttempts = 10;
    Ideal ideal = saturate_parameters(ideal_in, params).first;
    if (ideal.is_unit()) return {};
    const RingPtr& ring = ideal.ring();
    const std::size_t n = ring->nvars();
    std::vector<bool> is_param(n, false);
    for (auto u : params) is_param[u] = true;
    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_param[i]) free_vars.push_back(i);
    if (free_vars.empty()) return {Found{ideal, PrimeCertificate::Zero}};
    if (ideal.is_homogeneous() && !params.empty()) return decompose_in_chart(ideal, params, depth);

    RingPtr ext = extend_ring(ring, {fresh_name(ring, "_l")});
    const std::size_t t = n;
    std::vector<std::size_t> keep = params;
    keep.push_back(t);
    std::vector<std::size_t> back(n + 1, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) back[i] = i;
    const PrimeCertificate cert = params.empty() ? PrimeCertificate::ZeroDimensional : PrimeCertificate::Projection;

    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Poly form = candidate_form(ring, free_vars, params, attempt);
        Poly form_ext = lift(form, ext);
        std::vector<Poly> gens;
        for (const auto& g : ideal.basis()) gens.push_back(lift(g, ext));
        gens.push_back(Poly::variable(ext, t) - form_ext);
        Poly h(ext);
        if (params.empty()) {
            h = minimal_polynomial(ideal, form, ext, t);
        } else {
            Ideal eliminant = elimination_ideal(Ideal(ext, gens), keep);
            if (eliminant.basis().size() != 1) continue;
            h = eliminant.basis()[0];
        }
        if (!h.involves(t)) continue;
        std::vector<Found> found;
        std::vector<Ideal> failed;
        auto factors = factor_poly(h);
        for (const auto& fp : factors) {
            if (!fp.factor.involves(t)) continue;
            std::vector<Poly> qg = gens;
            qg.push_back(fp.factor);
            Ideal q = saturate_parameters(Ideal(ext, qg), params).first;
            // substitute t := form to return to the original ring
            std::vector<Poly> pg;
            for (const auto& g : q.basis()) {
                Poly r = g.substitute(t, form_ext);
                if (!r.is_zero()) pg.push_back(r.map_to_ring(ring, back));
            }
            Ideal p(ring, pg);
            std::int64_t dim = generic_quotient_dimension(Submodule::ideal_times_free(q, 1), params);
            if (dim == fp.factor.degree_in(t))
                found.push_back({p, cert});
            else
                failed.push_back(p);
        }
        if (failed.empty()) return found;
        if (factors.size() > 1 && depth < 6) {
            for (const auto& q : failed)
                for (auto& f : decompose_over_parameters(q, params, depth + 1)) found.push_back(std::move(f));
            return found;
        }
    }
    raise(ErrorCode::UnsupportedShape, "no separating projection found for " + ideal_in.to_string());
}

std::vector<Found> primes_recursive(const Ideal& ideal, int depth)
{
    if (depth > 12) raise(ErrorCode::UnsupportedShape, "component recursion too deep for " + ideal.to_string());
    if (ideal.is_unit()) return {};
    const RingPtr& ring = ideal.ring();
    if (ideal.is_zero()) return {Found{ideal, PrimeCertificate::Zero}};
    const auto& basis = ideal.basis();
    if (basis.size() == 1) {
        std::vector<Found> out;
        for (const auto& fp : factor_poly(basis[0])) out.push_back({Ideal(ring, {fp.factor}), PrimeCertificate::Principal});
        return out;
    }
    auto params = maximal_independent_set(ideal);
    auto [sat, s] = saturate_parameters(ideal, params);
    std::vector<Found> out = decompose_over_parameters(sat, params, 0);
    if (!s.is_constant()) {
        Ideal rest(ring, basis);
        rest = ideal_sum(rest, Ideal(ring, {s}));
        for (auto& f : primes_recursive(rest, depth + 1)) out.push_back(std::move(f));
    }
    return out;
}

std::vector<Found> keep_minimal(std::vector<Found> all)
{
    std::vector<Found> uniq;
    for (auto& f : all) {
        f.ideal = f.ideal.canonical();
        bool dup = false;
        for (auto& u : uniq)
            if (u.ideal == f.ideal) {
                // keep the strongest certificate label
                if (f.cert == PrimeCertificate::Principal) u.cert = f.cert;
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(std::move(f));
    }
    std::vector<Found> out;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < uniq.size() && minimal; ++j)
            if (i != j && uniq[i].ideal.contains(uniq[j].ideal)) minimal = false;
        if (minimal) out.push_back(uniq[i]);
    }
    return out;
}

// Every returned prime contains I, and a product of one element from each lies in rad(I).
void verify_cover(const Ideal& ideal, const std::vector<Found>& primes)
{
    for (const auto& p : primes)
        if (!p.ideal.contains(ideal)) raise(ErrorCode::InvariantViolation, "component " + p.ideal.to_string() + " does not contain the ideal");
    if (primes.size() == 1 && primes[0].cert == PrimeCertificate::Zero) return;
    bool all_principal = true;
    for (const auto& p : primes)
        if (p.cert != PrimeCertificate::Principal) all_principal = false;
    if (all_principal && ideal.basis().size() == 1) return;
    const RingPtr& ring = ideal.ring();
    std::mt19937_64 rng(settings().seed ^ 0xc0ffeeULL);
    std::uniform_int_distribution<int> coef(1, 5);
    RingPtr ext = extend_ring(ring, {fresh_name(ring, "_z")});
    Poly prod = Poly::constant(ring, 1);
    for (const auto& p : primes) {
        Poly f(ring);
        for (const auto& g : p.ideal.basis()) f += g * Poly::constant(ring, coef(rng));
        if (f.is_zero()) f = p.ideal.basis().front();
        prod = prod * f;
    }
    std::vector<Poly> gens;
    for (const auto& g : ideal.basis()) gens.push_back(lift(g, ext));
    gens.push_back(Poly::constant(ext, 1) - Poly::variable(ext, ring->nvars()) * lift(prod, ext));
    if (!Ideal(ext, gens).is_unit())
        raise(ErrorCode::InvariantViolation, "returned components do not cover V(" + ideal.to_string() + ")");
}

bool is_irrelevant(const Ideal& p)
{
    for (std::size_t i = 0; i < p.ring()->nvars(); ++i)
        if (!p.contains(Poly::variable(p.ring(), i))) return false;
    return true;
}

}  // namespace

std::string certificate_name(PrimeCertificate c)
{
    switch (c) {
    case PrimeCertificate::Zero: return "zero-ideal";
    case PrimeCertificate::Principal: return "principal";
    case PrimeCertificate::ZeroDimensional: return "zero-dimensional";
    case PrimeCertificate::Projection: return "projection";
    }
    return "?";
}

std::vector<PrimeComponent> minimal_primes(const Ideal& ideal) { return minimal_primes(ideal, Ambient::affine(ideal.ring())); }

std::vector<PrimeComponent> minimal_primes(const Ideal& ideal, const Ambient& ambient)
{
    if (!same_ring(ideal.ring(), ambient.ring)) raise(ErrorCode::AmbientMismatch, "ideal ring differs from the ambient ring");
    if (ideal.is_unit()) raise(ErrorCode::ValidationError, "minimal_primes of the unit ideal");
    if (ambient.is_projective() && !ideal.is_homogeneous())
        raise(ErrorCode::NotHomogeneous, "projective ambient needs a homogeneous ideal: " + ideal.to_string());
    auto found = keep_minimal(primes_recursive(ideal, 0));
    verify_cover(ideal, found);
    std::vector<PrimeComponent> out;
    for (const auto& f : found) {
        if (ambient.is_projective() && is_irrelevant(f.ideal)) continue;
        out.push_back(make_component(f.ideal, ambient, f.cert));
    }
    return out;
}

PrimeComponent make_component(const Ideal& prime, const Ambient& ambient, PrimeCertificate cert, std::int64_t residue)
{
    PrimeComponent c;
    c.ideal = prime.canonical();
    c.certificate = cert;
    int krull = krull_dimension(c.ideal);
    c.dimension = ambient.is_projective() ? krull - 1 : krull;
    if (ambient.is_projective()) {
        c.degree = hilbert(c.ideal).degree;
    } else {
        // degree of the projective closure
        std::string h = fresh_name(c.ideal.ring(), "_h");
        RingPtr ext = extend_ring(c.ideal.ring(), {h});
        std::vector<Poly> gens;
        for (const auto& g : c.ideal.basis()) gens.push_back(homogenize_with(lift(g, ext), ext->nvars() - 1));
        c.degree = hilbert(Ideal(ext, gens)).degree;
    }
    c.residue_degree = residue > 0 ? residue : residue_degree(c.ideal);
    return c;
}

std::string PrimeComponent::smallest_generator() const
{
    std::string best;
    bool first = true;
    for (const auto& g : ideal.generators()) {
        std::string s = g.to_string();
        if (first || s < best) best = s;
        first = false;
    }
    return best;
}

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix multiply(const Matrix& a, const Matrix& b, Field field)
{
    const std::size_t n = a.size();
    Matrix c(n, std::vector<Scalar>(n, Scalar::zero(field)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

std::size_t rank(Matrix rows, std::size_t cols)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t k = r;
        while (k < rows.size() && rows[k][c].is_zero()) ++k;
        if (k == rows.size()) continue;
        std::swap(rows[r], rows[k]);
        Scalar inv = rows[r][c].inverse();
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

// Length at P when A/I is finite-dimensional, possibly after passing to a chart u = 1 of a
// homogeneous I cutting out points. The P-primary part of A/I is the joint generalized kernel
// of multiplication by the generators of P.
std::optional<std::int64_t> finite_length(const Ideal& ideal_in, const Ideal& prime_in)
{
    Ideal ideal = ideal_in, prime = prime_in;
    int dim = krull_dimension(ideal);
    if (dim == 1 && ideal.is_homogeneous() && prime.is_homogeneous()) {
        const RingPtr& ring = ideal.ring();
        std::size_t u = 0;
        while (u < ring->nvars() && prime.contains(Poly::variable(ring, u))) ++u;
        if (u == ring->nvars()) return std::nullopt;
        auto [chart, to_chart] = drop_variable(ring, u);
        auto dehomogenized = [&](const Ideal& a) {
            std::vector<Poly> gens;
            for (const auto& g : a.basis()) gens.push_back(g.evaluate(u, Scalar::one(ring->field)).map_to_ring(chart, to_chart));
            return Ideal(chart, gens);
        };
        ideal = dehomogenized(ideal);
        prime = dehomogenized(prime);
        dim = krull_dimension(ideal);
    }
    if (dim != 0) return std::nullopt;
    const Field field = ideal.ring()->field;
    const auto& basis = ideal.basis();
    const auto monomials = standard_monomials(basis, ideal.ring()->nvars());
    const std::size_t n = monomials.size();
    std::map<Monomial, std::size_t> index;
    for (const auto& m : monomials) index.emplace(m, index.size());
    Matrix stacked;
    for (const auto& g : prime.basis()) {
        Matrix m(n, std::vector<Scalar>(n, Scalar::zero(field)));
        for (std::size_t j = 0; j < n; ++j) {
            Poly image = normal_form(g * Poly::monomial(ideal.ring(), monomials[j], Scalar::one(field)), basis, MonomialOrder::grevlex());
            for (const auto& t : image.terms()) m[index.at(t.mono)][j] = t.coeff;
        }
        // M^(2^k) with 2^k >= n kills the nilpotent part
        for (std::size_t e = 1; e < n; e *= 2) m = multiply(m, m, field);
        for (auto& row : m) stacked.push_back(std::move(row));
    }
    const std::int64_t primary = static_cast<std::int64_t>(n - rank(std::move(stacked), n));
    const std::int64_t kappa = vector_space_dimension(prime);
    if (primary % kappa != 0) raise(ErrorCode::InvariantViolation, "local length: dimension not a multiple of the residue degree");
    return primary / kappa;
}

}  // namespace

std::int64_t local_length(const Ideal& ideal, const Ideal& prime)
{
    if (!prime.contains(ideal)) raise(ErrorCode::NotMinimalPrime, prime.to_string() + " does not contain " + ideal.to_string());
    if (auto len = finite_length(ideal, prime)) return *len;
    return length_at(Submodule::ideal_times_free(ideal, 1), prime);
}

std::int64_t local_length(const Ideal& ideal, const PrimeComponent& prime) { return local_length(ideal, prime.ideal); }

}  // namespace cyclelab
