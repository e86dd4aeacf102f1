#include "cyclelab/koszul.hpp"

#include <algorithm>

#include "cyclelab/error.hpp"
#include "cyclelab/settings.hpp"

namespace cyclelab {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t r, std::size_t i)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == i) {
            out.push_back(cur);
            return;
        }
        for (std::size_t k = start; k < r; ++k) {
            cur.push_back(k);
            self(self, k + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

ModVec apply(const Matrix& m, const ModVec& v, const RingPtr& ring)
{
    ModVec out(m.rows, Poly(ring));
    for (std::size_t j = 0; j < m.columns.size(); ++j) {
        if (v[j].is_zero()) continue;
        for (std::size_t r = 0; r < m.rows; ++r)
            if (!m.columns[j][r].is_zero()) out[r] += v[j] * m.columns[j][r];
    }
    return out;
}

}  // namespace

KoszulComplex build_koszul(const RingPtr& ring, const std::vector<Poly>& sequence, const Ideal& coefficients)
{
    if (sequence.empty()) raise(ErrorCode::ValidationError, "Koszul complex of an empty sequence");
    if (!same_ring(coefficients.ring(), ring)) raise(ErrorCode::MixedContext, "coefficient ideal from another ring");
    for (const auto& f : sequence)
        if (!same_ring(f.ring(), ring)) raise(ErrorCode::MixedContext, "sequence element " + f.to_string() + " from another ring");
    KoszulComplex k;
    k.ring = ring;
    k.coefficients = coefficients;
    for (const auto& f : sequence) k.sequence.push_back(coefficients.reduce(f));
    const std::size_t r = sequence.size();
    for (std::size_t i = 0; i <= r; ++i) k.wedge_basis.push_back(subsets(r, i));
    k.differentials.resize(r + 1);
    for (std::size_t i = 1; i <= r; ++i) {
        Matrix& d = k.differentials[i];
        const auto& lower = k.wedge_basis[i - 1];
        d.rows = lower.size();
        for (const auto& s : k.wedge_basis[i]) {
            ModVec col(d.rows, Poly(ring));
            for (std::size_t pos = 0; pos < s.size(); ++pos) {
                std::vector<std::size_t> rest = s;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
                std::size_t row = static_cast<std::size_t>(std::find(lower.begin(), lower.end(), rest) - lower.begin());
                Poly term = k.sequence[s[pos]];
                col[row] = pos % 2 == 0 ? term : -term;
            }
            d.columns.push_back(std::move(col));
        }
    }
    for (std::size_t i = 2; i <= r; ++i)
        for (const auto& col : k.differentials[i].columns)
            for (const auto& e : apply(k.differentials[i - 1], col, ring))
                if (!coefficients.reduce(e).is_zero()) raise(ErrorCode::InvariantViolation, "Koszul differentials do not square to zero");
    return k;
}

std::int64_t homology_length_at(const KoszulComplex& k, std::size_t i, const Ideal& prime)
{
    if (i > k.length()) return 0;
    Submodule relations = Submodule::ideal_times_free(k.coefficients, k.rank(i));
    if (i < k.length())
        for (const auto& col : k.differentials[i + 1].columns) relations.gens.push_back(col);
    if (i == 0) return length_at(relations, prime);
    Submodule cycles = module_kernel(k.differentials[i].columns, Submodule::ideal_times_free(k.coefficients, k.rank(i - 1)));
    if (cycles.gens.empty()) return 0;
    // H_i = cycles / relations, presented as R^s / L
    return length_at(module_kernel(cycles.gens, relations), prime);
}

bool known_cohen_macaulay(const PrimeComponent& c, std::size_t nvars)
{
    if (c.dimension <= 1) return true;
    const auto& gens = c.ideal.generators();
    return gens.size() <= 1 || static_cast<int>(gens.size()) == static_cast<int>(nvars) - c.dimension;
}

MultiplicityReport intersection_multiplicity(const PrimeComponent& v, const PrimeComponent& w, const PrimeComponent& p, MultiplicityRoute route)
{
    const RingPtr& ring = v.ideal.ring();
    if (!same_ring(w.ideal.ring(), ring) || !same_ring(p.ideal.ring(), ring)) raise(ErrorCode::MixedContext, "components from different rings");
    const std::size_t n = ring->nvars();
    if (v.dimension + w.dimension - static_cast<int>(n) != p.dimension)
        raise(ErrorCode::ImproperIntersection, v.ideal.to_string() + " and " + w.ideal.to_string() + " do not meet properly at " + p.ideal.to_string());
    Ideal sum = ideal_sum(v.ideal, w.ideal);
    if (krull_dimension(sum) != p.dimension)
        raise(ErrorCode::ImproperIntersection, v.ideal.to_string() + " and " + w.ideal.to_string() + " meet in dimension " +
                                                   std::to_string(krull_dimension(sum)));
    if (!p.ideal.contains(sum)) raise(ErrorCode::NotMinimalPrime, p.ideal.to_string() + " is not a component of the intersection");

    MultiplicityReport rep;
    rep.component = p;
    if (route == MultiplicityRoute::Auto && known_cohen_macaulay(v, n) && known_cohen_macaulay(w, n)) {
        rep.route = "cohen-macaulay";
        rep.lengths.assign(n + 1, 0);
        rep.lengths[0] = local_length(sum, p.ideal);
        rep.euler_characteristic = rep.lengths[0];
        return rep;
    }

    rep.route = "diagonal";
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(fresh_name(ring, ring->vars[i] + "_d"));
    RingPtr doubled = extend_ring(ring, names);
    std::vector<std::size_t> second(n);
    for (std::size_t i = 0; i < n; ++i) second[i] = n + i;
    std::vector<Poly> j, diag, pd;
    for (const auto& g : v.ideal.generators()) j.push_back(lift(g, doubled));
    for (const auto& g : w.ideal.generators()) j.push_back(g.map_to_ring(doubled, second));
    for (std::size_t i = 0; i < n; ++i) diag.push_back(Poly::variable(doubled, i) - Poly::variable(doubled, n + i));
    for (const auto& g : p.ideal.generators()) pd.push_back(lift(g, doubled));
    pd.insert(pd.end(), diag.begin(), diag.end());
    Ideal prime_diag(doubled, pd);
    KoszulComplex k = build_koszul(doubled, diag, Ideal(doubled, j));
    std::int64_t chi = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        std::int64_t len = homology_length_at(k, i, prime_diag);
        rep.lengths.push_back(len);
        chi += i % 2 == 0 ? len : -len;
    }
    rep.euler_characteristic = chi;
    return rep;
}

namespace {

using Terms = std::vector<std::pair<PrimeComponent, long>>;

Terms pairwise_affine(const PrimeComponent& v, const PrimeComponent& w, const Ambient& ambient)
{
    const int n = ambient.dimension();
    Ideal sum = ideal_sum(v.ideal, w.ideal);
    if (sum.is_unit()) return {};
    const int expected = v.dimension + w.dimension - n;
    Terms out;
    for (const auto& p : minimal_primes(sum, ambient)) {
        if (p.dimension != expected)
            raise(ErrorCode::ImproperIntersection, "V" + v.ideal.to_string() + " and V" + w.ideal.to_string() + " meet in dimension " +
                                                       std::to_string(p.dimension) + ", expected " + std::to_string(expected));
        out.push_back({p, static_cast<long>(intersection_multiplicity(v, w, p).euler_characteristic)});
    }
    return out;
}

Ideal to_chart(const Ideal& a, std::size_t var, const RingPtr& chart, const std::vector<std::size_t>& map)
{
    std::vector<Poly> gens;
    for (const auto& g : a.generators()) gens.push_back(g.substitute(var, Poly::constant(a.ring(), 1)).map_to_ring(chart, map));
    return Ideal(chart, gens);
}

bool chart_ok(const PrimeComponent& v, const PrimeComponent& w, const Ideal& sum, int sum_dim, std::size_t k)
{
    Poly xk = Poly::variable(sum.ring(), k);
    if (v.ideal.contains(xk) || w.ideal.contains(xk)) return false;
    return krull_dimension(ideal_sum(sum, Ideal(sum.ring(), {xk}))) < sum_dim;
}

Terms on_chart(const PrimeComponent& v, const PrimeComponent& w, const Ambient& ambient, std::size_t k)
{
    const RingPtr& ring = ambient.ring;
    auto [chart, map] = drop_variable(ring, k);
    Ambient aff = Ambient::affine(chart);
    auto cv = make_component(to_chart(v.ideal, k, chart, map), aff, v.certificate);
    auto cw = make_component(to_chart(w.ideal, k, chart, map), aff, w.certificate);
    std::vector<std::size_t> inverse(chart->nvars());
    for (std::size_t i = 0; i < map.size(); ++i)
        if (map[i] != SIZE_MAX) inverse[map[i]] = i;
    Terms out;
    for (auto& [p, m] : pairwise_affine(cv, cw, aff)) {
        std::vector<Poly> gens;
        for (const auto& g : p.ideal.basis()) gens.push_back(homogenize_with(g.map_to_ring(ring, inverse), k));
        out.push_back({make_component(Ideal(ring, gens), ambient, p.certificate), m});
    }
    return out;
}

bool same_terms(const Terms& a, const Terms& b)
{
    if (a.size() != b.size()) return false;
    for (const auto& [p, m] : a) {
        auto it = std::find_if(b.begin(), b.end(), [&](const auto& t) { return t.first.ideal == p.ideal; });
        if (it == b.end() || it->second != m) return false;
    }
    return true;
}

Terms pairwise_projective(const PrimeComponent& v, const PrimeComponent& w, const Ambient& ambient)
{
    const int n = ambient.dimension();
    Ideal sum = ideal_sum(v.ideal, w.ideal);
    const int expected = v.dimension + w.dimension - n;
    const int cone = krull_dimension(sum);
    if (cone <= 0) {
        if (expected >= 0) raise(ErrorCode::InvariantViolation, "projective varieties of complementary dimension must meet");
        return {};
    }
    if (cone != expected + 1)
        raise(ErrorCode::ImproperIntersection, "V" + v.ideal.to_string() + " and V" + w.ideal.to_string() + " meet in dimension " +
                                                   std::to_string(cone - 1) + ", expected " + std::to_string(expected));
    std::vector<std::size_t> charts;
    for (std::size_t k = 0; k < ambient.ring->nvars(); ++k)
        if (chart_ok(v, w, sum, cone, k)) charts.push_back(k);
    if (charts.empty()) {
        // each component lies off some hyperplane x_k = 0; merge the charts
        Terms merged;
        for (std::size_t k = 0; k < ambient.ring->nvars(); ++k) {
            Poly xk = Poly::variable(ambient.ring, k);
            if (v.ideal.contains(xk) || w.ideal.contains(xk)) continue;
            for (auto& [p, m] : on_chart(v, w, ambient, k)) {
                auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& t) { return t.first.ideal == p.ideal; });
                if (it == merged.end())
                    merged.push_back({p, m});
                else if (it->second != m)
                    raise(ErrorCode::InvariantViolation, "intersection differs between coordinate charts");
            }
        }
        return merged;
    }
    Terms first = on_chart(v, w, ambient, charts[0]);
    if (settings().cross_check_charts && charts.size() > 1) {
        Terms second = on_chart(v, w, ambient, charts[1]);
        if (!same_terms(first, second)) raise(ErrorCode::InvariantViolation, "intersection differs between coordinate charts");
    }
    return first;
}

}  // namespace

Cycle intersection_product(const Cycle& a, const Cycle& b)
{
    if (a.ambient != b.ambient) raise(ErrorCode::AmbientMismatch, "intersection of cycles on different ambients");
    const Ambient& ambient = a.ambient;
    Cycle out = Cycle::empty(ambient, a.codimension + b.codimension);
    for (const auto& [v, alpha] : a.terms)
        for (const auto& [w, beta] : b.terms) {
            Terms ts = ambient.is_projective() ? pairwise_projective(v, w, ambient) : pairwise_affine(v, w, ambient);
            Cycle part = Cycle::empty(ambient, out.codimension);
            for (auto& [p, m] : ts) part.terms.push_back({p, alpha * beta * m});
            out = out + part;
        }
    out.canonicalize();
    return out;
}

}  // namespace cyclelab
