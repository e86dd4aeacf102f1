#include "cyclelab/correspondences.hpp"

#include <algorithm>
#include <numeric>

#include "cyclelab/error.hpp"
#include "cyclelab/koszul.hpp"
#include "cyclelab/module.hpp"

namespace cyclelab {

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t to)
{
    std::vector<std::size_t> v(to - from);
    std::iota(v.begin(), v.end(), from);
    return v;
}

// var_map[i] = index in target of source variable i, or SIZE_MAX to drop.
std::vector<std::size_t> block_map(std::size_t n, std::size_t offset)
{
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = offset + i;
    return m;
}

Ideal move_ideal(const Ideal& a, const RingPtr& target, const std::vector<std::size_t>& map)
{
    std::vector<Poly> gens;
    for (const auto& g : a.generators()) gens.push_back(g.map_to_ring(target, map));
    return Ideal(target, gens);
}

// g(f_1, ..., f_m) with g in m variables and f_j in another ring.
Poly evaluate_at(const Poly& g, const std::vector<Poly>& f, const RingPtr& ring)
{
    Poly acc(ring);
    for (const auto& t : g.terms()) {
        Poly term = Poly::constant(ring, t.coeff);
        for (std::size_t j = 0; j < f.size(); ++j)
            if (t.mono[j] > 0) term = term * f[j].pow(static_cast<unsigned>(t.mono[j]));
        acc += term;
    }
    return acc;
}

bool same_variety(const VarietySpec& a, const VarietySpec& b) { return same_ring(a.ring(), b.ring()) && a.ideal == b.ideal; }

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Poly determinant(std::vector<std::vector<Poly>> m, const RingPtr& ring)
{
    const std::size_t n = m.size();
    if (n == 0) return Poly::constant(ring, 1);
    if (n == 1) return m[0][0];
    Poly det(ring);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Poly t = m[0][j] * determinant(std::move(minor), ring);
        det += j % 2 == 0 ? t : -t;
    }
    return det;
}

}  // namespace

VarietySpec make_variety(const Ideal& ideal)
{
    if (ideal.is_unit()) raise(ErrorCode::ValidationError, "variety of the unit ideal is empty");
    VarietySpec v;
    v.ambient = Ambient::affine(ideal.ring());
    v.ideal = ideal;
    v.components = minimal_primes(ideal, v.ambient);
    return v;
}

VarietySpec affine_space(const RingPtr& ring)
{
    VarietySpec v = make_variety(Ideal::zero(ring));
    v.smooth = true;
    return v;
}

bool check_smooth(VarietySpec& v)
{
    const RingPtr& ring = v.ring();
    const std::size_t n = ring->nvars();
    bool smooth = true;
    for (std::size_t a = 0; a < v.components.size() && smooth; ++a)
        for (std::size_t b = a + 1; b < v.components.size() && smooth; ++b)
            if (!ideal_sum(v.components[a].ideal, v.components[b].ideal).is_unit()) smooth = false;
    // the scheme itself must be reduced for the components to describe it
    if (smooth && v.components.size() == 1 && !(v.components[0].ideal == v.ideal)) smooth = false;
    for (const auto& c : v.components) {
        if (!smooth) break;
        const auto& gens = c.ideal.generators();
        const std::size_t codim = n - static_cast<std::size_t>(c.dimension);
        if (codim == 0) continue;
        std::vector<Poly> minors = gens;
        for (const auto& rows : combinations(gens.size(), codim))
            for (const auto& cols : combinations(n, codim)) {
                std::vector<std::vector<Poly>> m;
                for (auto r : rows) {
                    std::vector<Poly> row;
                    for (auto k : cols) row.push_back(gens[r].derivative(k));
                    m.push_back(std::move(row));
                }
                Poly d = determinant(std::move(m), ring);
                if (!d.is_zero()) minors.push_back(d);
            }
        if (!Ideal(ring, minors).is_unit()) smooth = false;
    }
    v.smooth = smooth;
    return smooth;
}

RingPtr product_ring(const std::vector<RingPtr>& factors)
{
    if (factors.empty()) raise(ErrorCode::ValidationError, "product of no factors");
    std::vector<std::string> names;
    for (const auto& r : factors) {
        if (!(r->field == factors[0]->field)) raise(ErrorCode::MixedContext, "product of rings over different fields");
        for (const auto& v : r->vars) {
            std::string name = v;
            while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
            names.push_back(name);
        }
    }
    return make_ring(factors[0]->field, names);
}

std::vector<FinitenessCertificate> check_finite_surjective(const Cycle& w, const VarietySpec& x, const VarietySpec& y)
{
    const RingPtr ring = product_ring({x.ring(), y.ring()});
    if (!same_ring(w.ambient.ring, ring) || w.ambient.is_projective())
        raise(ErrorCode::AmbientMismatch, "cycle does not live on " + ring->to_string());
    const std::size_t a = x.ring()->nvars(), b = y.ring()->nvars();
    const auto xs = range(0, a);
    std::vector<std::size_t> to_x(a + b, SIZE_MAX);
    for (std::size_t i = 0; i < a; ++i) to_x[i] = i;
    std::vector<FinitenessCertificate> out;
    for (const auto& [c, m] : w.terms) {
        FinitenessCertificate cert;
        cert.component = c.ideal;
        for (std::size_t j = 0; j < b; ++j) {
            std::vector<std::size_t> keep = xs;
            keep.push_back(a + j);
            Ideal e = elimination_ideal(c.ideal, keep);
            const Poly* monic = nullptr;
            for (const auto& g : e.basis(elimination_order(ring, xs))) {
                const Monomial& lm = g.lead_monomial();
                if (lm[a + j] > 0 && lm.degree() == lm[a + j]) {
                    monic = &g;
                    break;
                }
            }
            if (!monic) raise(ErrorCode::NotFinite, "component V" + c.ideal.to_string() + " is not finite over the source in " + ring->vars[a + j]);
            cert.monic_degree[ring->vars[a + j]] = monic->degree_in(a + j);
            cert.witnesses.push_back(monic->with_order(MonomialOrder::grevlex()));
        }
        Ideal image = move_ideal(elimination_ideal(c.ideal, xs), x.ring(), to_x);
        auto it = std::find_if(x.components.begin(), x.components.end(), [&](const PrimeComponent& p) { return p.ideal == image; });
        if (it == x.components.end())
            raise(ErrorCode::NotSurjective, "component V" + c.ideal.to_string() + " maps onto V" + image.to_string() + ", not a source component");
        cert.source_component = it->ideal;
        out.push_back(std::move(cert));
    }
    return out;
}

bool operator==(const Correspondence& a, const Correspondence& b)
{
    return same_variety(a.source, b.source) && same_variety(a.target, b.target) && a.cycle == b.cycle;
}

Correspondence make_correspondence(const VarietySpec& x, const VarietySpec& y, const Cycle& w)
{
    Correspondence c{x, y, w, {}};
    c.cycle.canonicalize();
    c.certificates = check_finite_surjective(c.cycle, x, y);
    return c;
}

Correspondence graph(const VarietySpec& x, const VarietySpec& y, const std::vector<Poly>& f)
{
    const std::size_t a = x.ring()->nvars(), b = y.ring()->nvars();
    if (f.size() != b) raise(ErrorCode::ValidationError, "graph needs one polynomial per target variable");
    for (const auto& p : f)
        if (!same_ring(p.ring(), x.ring())) raise(ErrorCode::MixedContext, "map component " + p.to_string() + " is not on the source");
    for (const auto& g : y.ideal.generators())
        if (!x.ideal.contains(evaluate_at(g, f, x.ring())))
            raise(ErrorCode::ImageNotInTarget, "image does not satisfy " + g.to_string());
    RingPtr ring = product_ring({x.ring(), y.ring()});
    auto from_x = block_map(a, 0);
    std::vector<Poly> gens;
    for (const auto& g : x.ideal.generators()) gens.push_back(g.map_to_ring(ring, from_x));
    for (std::size_t j = 0; j < b; ++j) gens.push_back(Poly::variable(ring, a + j) - f[j].map_to_ring(ring, from_x));
    Cycle w = associated_cycle(Ideal(ring, gens), Ambient::affine(ring)).cycle;
    return make_correspondence(x, y, w);
}

Correspondence identity(const VarietySpec& x)
{
    std::vector<Poly> f;
    for (std::size_t i = 0; i < x.ring()->nvars(); ++i) f.push_back(Poly::variable(x.ring(), i));
    return graph(x, x, f);
}

Cycle pushforward(const Cycle& w, const Ambient& target, const std::vector<std::size_t>& keep)
{
    if (w.ambient.is_projective() || target.is_projective()) raise(ErrorCode::AmbientMismatch, "pushforward is implemented for affine projections");
    const RingPtr& ring = w.ambient.ring;
    if (keep.size() != target.ring->nvars()) raise(ErrorCode::ValidationError, "projection must name every target variable");
    std::vector<std::size_t> to_target(ring->nvars(), SIZE_MAX);
    for (std::size_t i = 0; i < keep.size(); ++i) to_target[keep[i]] = i;
    Cycle out = Cycle::empty(target, target.dimension() - (w.ambient.dimension() - w.codimension));
    for (const auto& [c, m] : w.terms) {
        Ideal image = move_ideal(elimination_ideal(c.ideal, keep), target.ring, to_target).canonical();
        int dim = krull_dimension(image);
        if (dim < c.dimension) continue;
        auto u = maximal_independent_set(image);
        std::vector<std::size_t> u_src;
        for (auto i : u) u_src.push_back(keep[i]);
        std::int64_t top = generic_quotient_dimension(Submodule::ideal_times_free(c.ideal, 1), u_src);
        std::int64_t bottom = generic_quotient_dimension(Submodule::ideal_times_free(image, 1), u);
        if (top <= 0 || bottom <= 0 || top % bottom != 0)
            raise(ErrorCode::DegreeComputationFailed, "function field degree of V" + c.ideal.to_string() + " over its image");
        out = out + Cycle::of(make_component(image, target, PrimeCertificate::Projection), target, m * (top / bottom));
    }
    out.canonicalize();
    return out;
}

Correspondence compose(const Correspondence& alpha, const Correspondence& beta)
{
    if (!same_variety(alpha.target, beta.source)) raise(ErrorCode::AmbientMismatch, "correspondences are not composable");
    const VarietySpec& x = alpha.source;
    const VarietySpec& y = alpha.target;
    const VarietySpec& z = beta.target;
    if (!x.is_affine_space() || !y.is_affine_space() || !z.is_affine_space())
        raise(ErrorCode::UnsupportedShape, "composition is implemented for correspondences between affine spaces");
    const std::size_t a = x.ring()->nvars(), b = y.ring()->nvars(), c = z.ring()->nvars();
    RingPtr triple = product_ring({x.ring(), y.ring(), z.ring()});
    Ambient amb = Ambient::affine(triple);
    auto cylinder = [&](const Cycle& w, std::size_t offset) {
        Cycle out = Cycle::empty(amb, w.codimension);
        auto map = block_map(w.ambient.ring->nvars(), offset);
        for (const auto& [p, m] : w.terms)
            out.terms.push_back({make_component(move_ideal(p.ideal, triple, map), amb, p.certificate), m});
        return out;
    };
    Cycle product = intersection_product(cylinder(alpha.cycle, 0), cylinder(beta.cycle, a));
    std::vector<std::size_t> keep = range(0, a);
    for (std::size_t k = 0; k < c; ++k) keep.push_back(a + b + k);
    RingPtr xz = product_ring({x.ring(), z.ring()});
    return make_correspondence(x, z, pushforward(product, Ambient::affine(xz), keep));
}

Correspondence operator+(const Correspondence& a, const Correspondence& b)
{
    if (!same_variety(a.source, b.source) || !same_variety(a.target, b.target))
        raise(ErrorCode::AmbientMismatch, "sum of correspondences with different source or target");
    return make_correspondence(a.source, a.target, a.cycle + b.cycle);
}

LawsReport category_laws_check(const std::vector<Correspondence>& sample)
{
    LawsReport rep;
    auto check = [&](const std::string& what, auto&& fn) {
        ++rep.checks;
        try {
            if (!fn()) rep.failures.push_back(what);
        } catch (const Error& e) {
            rep.failures.push_back(what + ": " + e.qualified_code() + " " + e.what());
        }
    };
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto& f = sample[i];
        check("left identity #" + std::to_string(i), [&] { return compose(identity(f.source), f) == f; });
        check("right identity #" + std::to_string(i), [&] { return compose(f, identity(f.target)) == f; });
    }
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = 0; j < sample.size(); ++j) {
            if (!same_variety(sample[i].target, sample[j].source)) continue;
            for (std::size_t k = 0; k < sample.size(); ++k) {
                if (!same_variety(sample[j].target, sample[k].source)) continue;
                check("associativity #" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k), [&] {
                    return compose(compose(sample[i], sample[j]), sample[k]) == compose(sample[i], compose(sample[j], sample[k]));
                });
            }
            for (std::size_t k = i + 1; k < sample.size(); ++k) {
                if (!same_variety(sample[k].source, sample[i].source) || !same_variety(sample[k].target, sample[i].target)) continue;
                check("bilinearity #" + std::to_string(i) + "+" + std::to_string(k) + "," + std::to_string(j), [&] {
                    return compose(sample[i] + sample[k], sample[j]) == compose(sample[i], sample[j]) + compose(sample[k], sample[j]);
                });
            }
        }
    return rep;
}

}  // namespace cyclelab
