#include <algorithm>
#include <functional>
#include <map>

#include "cyclelab/error.hpp"
#include "cyclelab/groebner.hpp"

namespace cyclelab {

namespace {

using Series = std::vector<std::int64_t>;

void trim(Series& s)
{
    while (!s.empty() && s.back() == 0) s.pop_back();
}

Series mul(const Series& a, const Series& b)
{
    if (a.empty() || b.empty()) return {};
    Series r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

std::vector<Monomial> minimize(std::vector<Monomial> ms)
{
    std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
        return a.degree() != b.degree() ? a.degree() < b.degree() : a < b;
    });
    std::vector<Monomial> out;
    for (auto& m : ms) {
        bool redundant = false;
        for (const auto& o : out)
            if (o.divides(m)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

class NumeratorCalc {
public:
    explicit NumeratorCalc(std::size_t n) : n_(n) {}

    Series run(const std::vector<Monomial>& gens)
    {
        auto it = memo_.find(gens);
        if (it != memo_.end()) return it->second;
        Series result = compute(gens);
        memo_.emplace(gens, result);
        return result;
    }

private:
    Series compute(const std::vector<Monomial>& gens)
    {
        if (gens.empty()) return {1};
        // base case: pairwise coprime generators
        std::vector<int> count(n_, 0);
        bool coprime = true;
        for (const auto& m : gens)
            for (std::size_t i = 0; i < n_; ++i)
                if (m[i] > 0 && ++count[i] > 1) coprime = false;
        if (coprime) {
            Series r{1};
            for (const auto& m : gens) {
                Series f(static_cast<std::size_t>(m.degree()) + 1, 0);
                f[0] = 1;
                f[static_cast<std::size_t>(m.degree())] -= 1;
                r = mul(r, f);
            }
            return r;
        }
        // pivot on the variable occurring in the most generators
        std::size_t v = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
        Monomial pivot = Monomial(n_).with(v, 1);
        std::vector<Monomial> plus{pivot}, colon;
        for (const auto& m : gens) {
            if (!pivot.divides(m)) plus.push_back(m);
            colon.push_back(pivot.divides(m) ? m / pivot : m);
        }
        // N(M) = N(M + (x_v)) + t * N(M : x_v)
        Series a = run(minimize(plus));
        Series b = run(minimize(colon));
        Series r(std::max(a.size(), b.size() + 1), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i + 1] += b[i];
        trim(r);
        return r;
    }

    std::size_t n_;
    std::map<std::vector<Monomial>, Series> memo_;
};

mpq_class binomial_poly_eval(const mpq_class& x, int k)
{
    // binom(x, k) for rational x
    mpq_class r = 1;
    for (int i = 0; i < k; ++i) r = r * (x - i) / (i + 1);
    return r;
}

// Coefficients of binom(t + a, k) as a polynomial in t.
std::vector<mpq_class> binomial_in_t(long a, int k)
{
    std::vector<mpq_class> poly{1};
    for (int i = 0; i < k; ++i) {
        // multiply by (t + a - i) / (i + 1)
        std::vector<mpq_class> next(poly.size() + 1, 0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] += poly[j] * (a - i);
        }
        for (auto& c : next) c /= (i + 1);
        poly = std::move(next);
    }
    return poly;
}

}  // namespace

std::vector<std::int64_t> hilbert_numerator(const std::vector<Monomial>& gens, std::size_t nvars)
{
    NumeratorCalc calc(nvars);
    return calc.run(minimize(gens));
}

mpq_class HilbertData::polynomial_at(long t) const
{
    mpq_class r = 0, pw = 1;
    for (const auto& c : polynomial) {
        r += c * pw;
        pw *= t;
    }
    return r;
}

std::string HilbertData::polynomial_string() const
{
    std::string s;
    for (std::size_t i = polynomial.size(); i-- > 0;) {
        const mpq_class& c = polynomial[i];
        if (sgn(c) == 0) continue;
        mpq_class a = abs(c);
        if (!s.empty())
            s += sgn(c) < 0 ? " - " : " + ";
        else if (sgn(c) < 0)
            s += "-";
        bool unit = a == 1 && i > 0;
        if (!unit) s += a.get_str() + (i > 0 ? "*" : "");
        if (i > 0) s += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

HilbertData hilbert(const Ideal& a)
{
    if (!a.is_homogeneous()) raise(ErrorCode::NotHomogeneous, "hilbert requires a homogeneous ideal: " + a.to_string());
    const std::size_t n = a.ring()->nvars();
    std::vector<Monomial> lm = leading_monomials(a.basis());
    HilbertData h;
    h.numerator = hilbert_numerator(lm, n);
    int pole = static_cast<int>(n);
    // divide by (1 - t) while the numerator vanishes at 1
    while (pole > 0 && !h.numerator.empty()) {
        std::int64_t at1 = 0;
        for (auto c : h.numerator) at1 += c;
        if (at1 != 0) break;
        Series q(h.numerator.size() - 1, 0);
        std::int64_t acc = 0;
        for (std::size_t i = 0; i + 1 < h.numerator.size(); ++i) {
            acc += h.numerator[i];
            q[i] = acc;
        }
        trim(q);
        h.numerator = std::move(q);
        --pole;
    }
    h.krull_dim = pole;
    h.degree = 0;
    for (auto c : h.numerator) h.degree += c;
    if (pole == 0) {
        h.polynomial = {};
    } else {
        std::vector<mpq_class> poly(static_cast<std::size_t>(pole), 0);
        for (std::size_t i = 0; i < h.numerator.size(); ++i) {
            auto b = binomial_in_t(static_cast<long>(pole) - 1 - static_cast<long>(i), pole - 1);
            for (std::size_t j = 0; j < b.size(); ++j) poly[j] += h.numerator[i] * b[j];
        }
        while (!poly.empty() && sgn(poly.back()) == 0) poly.pop_back();
        h.polynomial = std::move(poly);
    }
    std::int64_t maxdeg = 0;
    for (const auto& m : lm) maxdeg = std::max(maxdeg, m.degree());
    h.regularity_bound = static_cast<int>(maxdeg + static_cast<std::int64_t>(n));

    // the Hilbert polynomial must match the Hilbert function past the regularity bound
    if (n <= 8) {
        for (int t = h.regularity_bound; t <= h.regularity_bound + 3; ++t) {
            if (h.polynomial_at(t) != hilbert_function(a, t))
                raise(ErrorCode::InvariantViolation, "Hilbert polynomial disagrees with the Hilbert function at t=" + std::to_string(t));
        }
    }
    if (pole > 0) {
        mpq_class lead = h.polynomial.empty() ? mpq_class(0) : h.polynomial.back();
        mpq_class expect = h.degree;
        for (int i = 2; i < pole; ++i) expect /= i;
        if (lead != expect) raise(ErrorCode::InvariantViolation, "Hilbert polynomial leading coefficient mismatch");
    }
    return h;
}

namespace {

void enumerate_degree(std::size_t n, int t, std::vector<std::int32_t>& cur, std::size_t var, const std::function<void(const Monomial&)>& fn)
{
    if (var + 1 == n) {
        cur[var] = t;
        fn(Monomial(Monomial::Exponents(cur.begin(), cur.end())));
        return;
    }
    for (int e = t; e >= 0; --e) {
        cur[var] = e;
        enumerate_degree(n, t - e, cur, var + 1, fn);
    }
}

}  // namespace

std::int64_t hilbert_function(const Ideal& a, int t)
{
    const std::size_t n = a.ring()->nvars();
    if (t < 0) return 0;
    if (n == 0) return t == 0 && !a.is_unit() ? 1 : 0;
    std::vector<Monomial> lm = leading_monomials(a.basis());
    std::int64_t count = 0;
    std::vector<std::int32_t> cur(n, 0);
    enumerate_degree(n, t, cur, 0, [&](const Monomial& m) {
        for (const auto& g : lm)
            if (g.divides(m)) return;
        ++count;
    });
    return count;
}

std::vector<Monomial> standard_monomials(const std::vector<Poly>& basis, std::size_t nvars)
{
    std::vector<Monomial> lm = leading_monomials(basis);
    // every variable needs a pure power among the leading monomials
    std::vector<std::int32_t> bound(nvars, -1);
    for (const auto& m : lm) {
        std::size_t support = 0, var = 0;
        for (std::size_t i = 0; i < nvars; ++i)
            if (m[i] > 0) {
                ++support;
                var = i;
            }
        if (support == 1 && (bound[var] < 0 || m[var] < bound[var])) bound[var] = m[var];
        if (support == 0) return {};
    }
    for (auto b : bound)
        if (b < 0) raise(ErrorCode::NotFiniteLength, "ideal is not zero-dimensional");
    std::vector<Monomial> out;
    std::vector<std::int32_t> cur(nvars, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t var) {
        if (var == nvars) {
            Monomial m(Monomial::Exponents(cur.begin(), cur.end()));
            for (const auto& g : lm)
                if (g.divides(m)) return;
            out.push_back(std::move(m));
            return;
        }
        for (std::int32_t e = 0; e < bound[var]; ++e) {
            cur[var] = e;
            rec(var + 1);
        }
        cur[var] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t vector_space_dimension(const Ideal& a)
{
    return static_cast<std::int64_t>(standard_monomials(a.basis(), a.ring()->nvars()).size());
}

}  // namespace cyclelab
