#include "cyclelab/cycles.hpp"

#include <algorithm>
#include <cstdlib>

#include "cyclelab/error.hpp"

namespace cyclelab {

std::string Ambient::to_string() const
{
    return std::string(is_projective() ? "P^" : "A^") + std::to_string(dimension()) + " over " + ring->to_string();
}

Cycle Cycle::of(const PrimeComponent& c, const Ambient& ambient, long mult)
{
    Cycle z = empty(ambient, ambient.dimension() - c.dimension);
    if (mult != 0) z.terms.push_back({c, mult});
    return z;
}

long Cycle::multiplicity(const Ideal& prime) const
{
    for (const auto& [c, m] : terms)
        if (c.ideal == prime) return m;
    return 0;
}

namespace {

std::vector<std::string> generator_strings(const PrimeComponent& c)
{
    std::vector<std::string> out;
    for (const auto& g : c.ideal.generators()) out.push_back(g.to_string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

void Cycle::canonicalize()
{
    terms.erase(std::remove_if(terms.begin(), terms.end(), [](const auto& t) { return t.second == 0; }), terms.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.degree != b.first.degree) return a.first.degree < b.first.degree;
        return generator_strings(a.first) < generator_strings(b.first);
    });
}

std::string Cycle::to_string() const
{
    if (terms.empty()) return "0";
    Cycle c = *this;
    c.canonicalize();
    std::string s;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        long m = c.terms[i].second;
        if (i == 0)
            s += m < 0 ? "-" : "";
        else
            s += m < 0 ? " - " : " + ";
        s += std::to_string(std::labs(m)) + "*[V" + c.terms[i].first.ideal.to_string() + "]";
    }
    return s;
}

namespace {

void check_compatible(const Cycle& a, const Cycle& b)
{
    if (a.ambient != b.ambient) raise(ErrorCode::AmbientMismatch, "cycles live in different ambients");
    if (a.codimension != b.codimension && !a.is_empty() && !b.is_empty())
        raise(ErrorCode::ValidationError, "cycles of codimension " + std::to_string(a.codimension) + " and " + std::to_string(b.codimension));
}

Cycle combine(const Cycle& a, const Cycle& b, long sign)
{
    check_compatible(a, b);
    Cycle out = a.is_empty() ? Cycle::empty(a.ambient, b.codimension) : a;
    for (const auto& [c, m] : b.terms) {
        bool merged = false;
        for (auto& t : out.terms)
            if (t.first.ideal == c.ideal) {
                t.second += sign * m;
                merged = true;
                break;
            }
        if (!merged) out.terms.push_back({c, sign * m});
    }
    out.canonicalize();
    return out;
}

}  // namespace

Cycle operator+(const Cycle& a, const Cycle& b) { return combine(a, b, 1); }
Cycle operator-(const Cycle& a, const Cycle& b) { return combine(a, b, -1); }

Cycle operator*(long n, const Cycle& a)
{
    Cycle out = a;
    for (auto& t : out.terms) t.second *= n;
    out.canonicalize();
    return out;
}

bool operator==(const Cycle& a, const Cycle& b)
{
    if (a.ambient != b.ambient) return false;
    Cycle d = a - b;
    return d.is_empty() && (a.is_empty() || b.is_empty() || a.codimension == b.codimension);
}

AssociatedCycle associated_cycle(const Ideal& ideal, const Ambient& ambient, std::optional<int> codim)
{
    const int n = ambient.dimension();
    AssociatedCycle out;
    if (ideal.is_unit()) {
        out.cycle = Cycle::empty(ambient, codim.value_or(n + 1));
        return out;
    }
    auto primes = minimal_primes(ideal, ambient);
    int target = codim.value_or(n + 1);
    if (!codim)
        for (const auto& p : primes) target = std::min(target, n - p.dimension);
    out.cycle = Cycle::empty(ambient, target);
    for (const auto& p : primes) {
        if (n - p.dimension != target) {
            out.discarded.push_back(p);
            continue;
        }
        out.cycle.terms.push_back({p, static_cast<long>(local_length(ideal, p))});
    }
    out.cycle.canonicalize();
    return out;
}

std::int64_t cycle_degree(const Cycle& a)
{
    if (!a.ambient.is_projective()) raise(ErrorCode::AmbientMismatch, "cycle degree needs a projective ambient");
    std::int64_t d = 0;
    for (const auto& [c, m] : a.terms) d += m * c.degree;
    return d;
}

ComplexityCertificate complexity(const Cycle& a)
{
    ComplexityCertificate cert;
    cert.components = a.terms.size();
    for (const auto& [c, m] : a.terms) {
        cert.max_abs_coefficient = std::max(cert.max_abs_coefficient, std::labs(m));
        cert.max_degree = std::max(cert.max_degree, c.degree);
    }
    cert.c = std::max<long>({static_cast<long>(cert.components), cert.max_abs_coefficient, static_cast<long>(cert.max_degree)}) + 1;
    return cert;
}

}  // namespace cyclelab
