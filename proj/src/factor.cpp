#include "cyclelab/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "cyclelab/error.hpp"
#include "cyclelab/groebner.hpp"
#include "cyclelab/settings.hpp"

namespace cyclelab {

namespace dense {

namespace {

// ------------------------------------------------------------------ F_p

void trim(FpPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fp_sub(FpPoly a, const FpPoly& b, std::uint64_t p)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

FpPoly fp_add(FpPoly a, const FpPoly& b, std::uint64_t p)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
    trim(a);
    return a;
}

FpPoly fp_scale(FpPoly a, std::uint64_t c, std::uint64_t p)
{
    for (auto& x : a) x = x * c % p;
    trim(a);
    return a;
}

FpPoly fp_monic(const FpPoly& a, std::uint64_t p)
{
    if (a.empty() || a.back() == 1) return a;
    return fp_scale(a, mod_inverse(a.back(), p), p);
}

void fp_divrem(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& q, FpPoly& r)
{
    r = a;
    q.clear();
    if (deg(a) < deg(b)) return;
    q.assign(a.size() - b.size() + 1, 0);
    std::uint64_t inv = mod_inverse(b.back(), p);
    for (int i = deg(r); i >= deg(b); --i) {
        std::uint64_t c = r[i] * inv % p;
        if (c == 0) continue;
        int shift = i - deg(b);
        q[shift] = c;
        for (int j = 0; j <= deg(b); ++j) r[shift + j] = (r[shift + j] + p - c * b[j] % p) % p;
    }
    trim(q);
    trim(r);
}

FpPoly fp_quo(const FpPoly& a, const FpPoly& b, std::uint64_t p)
{
    FpPoly q, r;
    fp_divrem(a, b, p, q, r);
    return q;
}

FpPoly fp_deriv(const FpPoly& a, std::uint64_t p)
{
    FpPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * (i % p) % p);
    trim(d);
    return d;
}

FpPoly fp_powmod(FpPoly base, const mpz_class& e, const FpPoly& m, std::uint64_t p)
{
    FpPoly result{1};
    base = fp_rem(base, m, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = fp_rem(fp_mul(result, result, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = fp_rem(fp_mul(result, base, p), m, p);
    }
    if (sgn(e) == 0) result = fp_rem(FpPoly{1}, m, p);
    return result;
}

// Extended Euclid: returns (s, t) with s*a + t*b = 1 (a, b coprime).
std::pair<FpPoly, FpPoly> fp_xgcd(const FpPoly& a, const FpPoly& b, std::uint64_t p)
{
    FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        FpPoly q, r;
        fp_divrem(r0, r1, p, q, r);
        FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    std::uint64_t inv = mod_inverse(r0.back(), p);
    return {fp_scale(s0, inv, p), fp_scale(t0, inv, p)};
}

std::vector<std::pair<FpPoly, int>> fp_squarefree(const FpPoly& f, std::uint64_t p)
{
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly c = fp_gcd(f, fp_deriv(f, p), p);
    FpPoly w = fp_quo(f, c, p);
    int i = 1;
    while (deg(w) > 0) {
        FpPoly y = fp_gcd(w, c, p);
        FpPoly z = fp_quo(w, y, p);
        if (deg(z) > 0) out.push_back({fp_monic(z, p), i});
        ++i;
        w = y;
        c = fp_quo(c, y, p);
    }
    if (deg(c) > 0) {
        FpPoly root;
        for (std::size_t k = 0; k < c.size(); k += p) root.push_back(c[k]);
        trim(root);
        for (auto& [g, j] : fp_squarefree(fp_monic(root, p), p)) out.push_back({g, j * static_cast<int>(p)});
    }
    return out;
}

std::vector<std::pair<FpPoly, int>> fp_distinct_degree(FpPoly f, std::uint64_t p)
{
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly x{0, 1};
    FpPoly h = fp_rem(x, f, p);
    for (int i = 1; 2 * i <= deg(f); ++i) {
        h = fp_powmod(h, mpz_class(static_cast<unsigned long>(p)), f, p);
        FpPoly g = fp_gcd(fp_sub(h, x, p), f, p);
        if (deg(g) > 0) {
            out.push_back({g, i});
            f = fp_quo(f, g, p);
            h = fp_rem(h, f, p);
        }
    }
    if (deg(f) > 0) out.push_back({fp_monic(f, p), deg(f)});
    return out;
}

void fp_equal_degree(const FpPoly& f, int d, std::uint64_t p, std::mt19937_64& rng, std::vector<FpPoly>& out)
{
    if (deg(f) == d) {
        out.push_back(fp_monic(f, p));
        return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
    while (true) {
        FpPoly a(static_cast<std::size_t>(deg(f)));
        for (auto& c : a) c = coef(rng);
        trim(a);
        if (deg(a) < 1) continue;
        FpPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            FpPoly t = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                t = fp_rem(fp_mul(t, t, p), f, p);
                b = fp_add(b, t, p);
            }
        } else {
            b = fp_sub(fp_powmod(a, e, f, p), FpPoly{1}, p);
        }
        FpPoly g = fp_gcd(b, f, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(fp_quo(f, g, p), d, p, rng, out);
            return;
        }
    }
}

// ------------------------------------------------------------------ Q and Z

void trim(QPoly& a)
{
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

void trim(ZPoly& a)
{
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

int deg(const QPoly& a) { return static_cast<int>(a.size()) - 1; }
int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

void q_divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r)
{
    r = a;
    q.clear();
    if (deg(a) < deg(b)) return;
    q.assign(a.size() - b.size() + 1, 0);
    for (int i = deg(r); i >= deg(b); --i) {
        if (sgn(r[i]) == 0) continue;
        mpq_class c = r[i] / b.back();
        int shift = i - deg(b);
        q[shift] = c;
        for (int j = 0; j <= deg(b); ++j) r[shift + j] -= c * b[j];
    }
    trim(q);
    trim(r);
}

QPoly q_monic(QPoly a)
{
    if (a.empty()) return a;
    mpq_class lc = a.back();
    for (auto& c : a) c /= lc;
    return a;
}

QPoly q_gcd(QPoly a, QPoly b)
{
    while (!b.empty()) {
        QPoly q, r;
        q_divrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return q_monic(a);
}

QPoly q_quo(const QPoly& a, const QPoly& b)
{
    QPoly q, r;
    q_divrem(a, b, q, r);
    return q;
}

QPoly q_deriv(const QPoly& a)
{
    QPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
    trim(d);
    return d;
}

ZPoly primitive_integer(const QPoly& a)
{
    mpz_class l = 1;
    for (const auto& c : a) l = lcm(l, c.get_den());
    ZPoly z;
    for (const auto& c : a) z.push_back(mpz_class(c * l));
    mpz_class g = 0;
    for (const auto& c : z) g = gcd(g, c);
    if (g != 0)
        for (auto& c : z) c /= g;
    if (!z.empty() && sgn(z.back()) < 0)
        for (auto& c : z) c = -c;
    return z;
}

QPoly to_q(const ZPoly& a) { return QPoly(a.begin(), a.end()); }

ZPoly z_mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// Exact division over Z; nullopt when b does not divide a.
std::optional<ZPoly> z_divexact(const ZPoly& a, const ZPoly& b)
{
    ZPoly r = a;
    if (deg(a) < deg(b)) return a.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
    ZPoly q(a.size() - b.size() + 1, 0);
    for (int i = deg(r); i >= deg(b); --i) {
        if (sgn(r[i]) == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        mpz_class c = r[i] / b.back();
        int shift = i - deg(b);
        q[shift] = c;
        for (int j = 0; j <= deg(b); ++j) r[shift + j] -= c * b[j];
    }
    trim(r);
    if (!r.empty()) return std::nullopt;
    trim(q);
    return q;
}

FpPoly z_to_fp(const ZPoly& a, std::uint64_t p)
{
    FpPoly r;
    for (const auto& c : a) r.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    trim(r);
    return r;
}

ZPoly fp_to_z(const FpPoly& a)
{
    ZPoly r;
    for (auto c : a) r.push_back(mpz_class(static_cast<unsigned long>(c)));
    return r;
}

ZPoly z_mod(ZPoly a, const mpz_class& m)
{
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    trim(a);
    return a;
}

// Lifts f = lc * g0 * h0 (mod p) to f = lc * G * H (mod p^k), G and H monic.
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, const FpPoly& g0, const FpPoly& h0, std::uint64_t p, int k)
{
    auto [s, t] = fp_xgcd(g0, h0, p);
    std::uint64_t lc_inv = mod_inverse(mpz_fdiv_ui(f.back().get_mpz_t(), p), p);
    ZPoly G = fp_to_z(g0), H = fp_to_z(h0);
    mpz_class m = static_cast<unsigned long>(p);
    for (int step = 1; step < k; ++step) {
        ZPoly prod = z_mul(G, H);
        ZPoly e = f;
        if (e.size() < prod.size()) e.resize(prod.size(), 0);
        for (std::size_t i = 0; i < prod.size(); ++i) e[i] -= f.back() * prod[i];
        trim(e);
        for (auto& c : e) c /= m;  // exact
        FpPoly ep = fp_scale(z_to_fp(e, p), lc_inv, p);
        FpPoly a = fp_rem(fp_mul(t, ep, p), g0, p);
        FpPoly b = fp_quo(fp_sub(ep, fp_mul(a, h0, p), p), g0, p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (G.size() <= i) G.resize(i + 1, 0);
            G[i] += m * static_cast<unsigned long>(a[i]);
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (H.size() <= i) H.resize(i + 1, 0);
            H[i] += m * static_cast<unsigned long>(b[i]);
        }
        m *= static_cast<unsigned long>(p);
    }
    return {G, H};
}

std::vector<ZPoly> hensel_lift(const ZPoly& f, std::vector<FpPoly> factors, std::uint64_t p, int k)
{
    mpz_class modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), p, static_cast<unsigned long>(k));
    if (factors.size() == 1) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), modulus.get_mpz_t());
        ZPoly g = f;
        for (auto& c : g) c *= inv;
        return {z_mod(g, modulus)};
    }
    FpPoly g0 = factors.front();
    FpPoly h0{1};
    for (std::size_t i = 1; i < factors.size(); ++i) h0 = fp_mul(h0, factors[i], p);
    auto [G, H] = hensel_pair(f, g0, h0, p, k);
    std::vector<ZPoly> out{z_mod(G, modulus)};
    std::vector<FpPoly> rest(factors.begin() + 1, factors.end());
    for (auto& x : hensel_lift(z_mod(H, modulus), rest, p, k)) out.push_back(std::move(x));
    return out;
}

ZPoly symmetric(ZPoly a, const mpz_class& m)
{
    mpz_class half = m / 2;
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    trim(a);
    return a;
}

ZPoly z_primitive(ZPoly a)
{
    mpz_class g = 0;
    for (const auto& c : a) g = gcd(g, c);
    if (g != 0)
        for (auto& c : a) c /= g;
    if (!a.empty() && sgn(a.back()) < 0)
        for (auto& c : a) c = -c;
    return a;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n)
{
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Irreducible factors of a primitive squarefree integer polynomial of degree >= 2.
std::vector<ZPoly> zassenhaus(ZPoly f)
{
    FpPoly df;
    std::uint64_t best_p = 0;
    std::vector<FpPoly> best;
    int tried = 0;
    for (std::uint64_t p = 3; tried < 5 && p < 10'000; p += 2) {
        if (!is_prime(p)) continue;
        if (mpz_fdiv_ui(f.back().get_mpz_t(), p) == 0) continue;
        FpPoly fp = z_to_fp(f, p);
        if (deg(fp_gcd(fp, fp_deriv(fp, p), p)) > 0) continue;
        ++tried;
        std::vector<FpPoly> fs;
        for (auto& [g, e] : fp_factor(fp_monic(fp, p), p)) fs.push_back(g);
        if (best_p == 0 || fs.size() < best.size()) {
            best_p = p;
            best = std::move(fs);
        }
        if (best.size() == 1) break;
    }
    if (best_p == 0) raise(ErrorCode::UnsupportedShape, "no suitable prime for Zassenhaus factoring");
    if (best.size() == 1) return {f};

    mpz_class maxc = 0;
    for (const auto& c : f) maxc = std::max(maxc, mpz_class(abs(c)));
    mpz_class bound = maxc * abs(f.back());
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(deg(f)));
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), mpz_class(deg(f) + 1).get_mpz_t());
    bound *= root + 1;
    bound = 2 * bound + 1;
    int k = 1;
    mpz_class modulus = static_cast<unsigned long>(best_p);
    while (modulus <= bound) {
        modulus *= static_cast<unsigned long>(best_p);
        ++k;
    }
    std::vector<ZPoly> lifted = hensel_lift(f, best, best_p, k);

    std::vector<ZPoly> found;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        bool hit = false;
        do {
            ZPoly cand{f.back()};
            for (auto i : idx) cand = z_mod(z_mul(cand, lifted[i]), modulus);
            cand = z_primitive(symmetric(cand, modulus));
            if (deg(cand) < 1) continue;
            if (auto q = z_divexact(f, cand)) {
                found.push_back(cand);
                f = *q;
                std::vector<ZPoly> rest;
                for (std::size_t i = 0; i < lifted.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(lifted[i]);
                lifted = std::move(rest);
                hit = true;
                break;
            }
        } while (next_combination(idx, lifted.size()));
        if (!hit) ++s;
    }
    if (deg(f) > 0) found.push_back(z_primitive(f));
    return found;
}

}  // namespace

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p)
{
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

FpPoly fp_rem(const FpPoly& a, const FpPoly& b, std::uint64_t p)
{
    FpPoly q, r;
    fp_divrem(a, b, p, q, r);
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p)
{
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f, std::uint64_t p)
{
    std::mt19937_64 rng(settings().seed ^ (p * 0x9e3779b97f4a7c15ULL) ^ f.size());
    std::vector<std::pair<FpPoly, int>> out;
    for (auto& [g, mult] : fp_squarefree(fp_monic(f, p), p)) {
        for (auto& [h, d] : fp_distinct_degree(g, p)) {
            std::vector<FpPoly> pieces;
            fp_equal_degree(h, d, p, rng, pieces);
            for (auto& x : pieces) out.push_back({x, mult});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<ZPoly, int>> z_factor(const ZPoly& f)
{
    std::vector<std::pair<ZPoly, int>> out;
    QPoly q = to_q(f);
    // Yun's squarefree decomposition over Q
    QPoly c = q_gcd(q, q_deriv(q));
    QPoly w = q_quo(q, c);
    int i = 1;
    while (deg(w) > 0) {
        QPoly y = q_gcd(w, c);
        QPoly z = q_quo(w, y);
        if (deg(z) > 0) {
            ZPoly zz = primitive_integer(z);
            if (auto* rec = DivisorRecorder::active()) {
                rec->record(mpq_class(zz.back()));
                if (deg(zz) > 1) rec->record(q_resultant(to_q(zz), q_deriv(to_q(zz))));
            }
            if (deg(zz) == 1) {
                out.push_back({zz, i});
            } else {
                for (auto& g : zassenhaus(zz)) out.push_back({g, i});
            }
        }
        ++i;
        w = y;
        c = q_quo(c, y);
    }
    return out;
}

mpq_class q_resultant(const QPoly& a0, const QPoly& b0)
{
    QPoly a = a0, b = b0;
    if (a.empty() || b.empty()) return 0;
    mpq_class res = 1;
    while (deg(b) > 0) {
        QPoly q, r;
        q_divrem(a, b, q, r);
        if (r.empty()) return 0;
        int da = deg(a), db = deg(b), dr = deg(r);
        if ((da % 2 == 1) && (db % 2 == 1)) res = -res;
        mpq_class lcb = b.back();
        for (int k = 0; k < da - dr; ++k) res *= lcb;
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant
    mpq_class bc = b.back();
    for (int k = 0; k < deg(a); ++k) res *= bc;
    return res;
}

}  // namespace dense

// ------------------------------------------------------------------ Poly level

namespace {

std::size_t single_variable(const Poly& f)
{
    auto vs = f.variables();
    if (vs.size() != 1) raise(ErrorCode::ValidationError, "univariate_factor expects exactly one variable: " + f.to_string());
    return vs.front();
}

Poly from_fp(const dense::FpPoly& a, const RingPtr& ring, std::size_t var)
{
    std::vector<Term> ts;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Monomial m(ring->nvars());
        ts.push_back({m.with(var, static_cast<std::int32_t>(i)), Scalar(ring->field, static_cast<long>(a[i]))});
    }
    return Poly::from_terms(ring, MonomialOrder::grevlex(), std::move(ts));
}

Poly from_z(const dense::ZPoly& a, const RingPtr& ring, std::size_t var)
{
    std::vector<Term> ts;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        Monomial m(ring->nvars());
        ts.push_back({m.with(var, static_cast<std::int32_t>(i)), Scalar(ring->field, mpq_class(a[i]))});
    }
    return Poly::from_terms(ring, MonomialOrder::grevlex(), std::move(ts));
}

std::vector<FactorPower> factor_in_var(const Poly& f, std::size_t var, int degree_bound)
{
    std::int32_t d = f.degree_in(var);
    if (d > degree_bound)
        raise(ErrorCode::DegreeTooLarge, "degree " + std::to_string(d) + " exceeds factoring bound " + std::to_string(degree_bound));
    std::vector<FactorPower> out;
    if (d == 0) return out;
    const RingPtr& ring = f.ring();
    if (ring->field.is_prime_field()) {
        std::uint64_t p = ring->field.characteristic();
        dense::FpPoly a(static_cast<std::size_t>(d) + 1, 0);
        for (const auto& t : f.terms()) a[t.mono[var]] = t.coeff.residue();
        for (auto& [g, e] : dense::fp_factor(a, p)) out.push_back({from_fp(g, ring, var).monic(), e});
    } else {
        dense::QPoly a(static_cast<std::size_t>(d) + 1, 0);
        for (const auto& t : f.terms()) a[t.mono[var]] = t.coeff.rational();
        dense::ZPoly z = dense::primitive_integer(a);
        for (auto& [g, e] : dense::z_factor(z)) out.push_back({from_z(g, ring, var).monic(), e});
    }
    std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) {
        if (a.factor.total_degree() != b.factor.total_degree()) return a.factor.total_degree() < b.factor.total_degree();
        return a.factor.to_string() < b.factor.to_string();
    });
    return out;
}

}  // namespace

std::vector<FactorPower> univariate_factor(const Poly& f) { return univariate_factor(f, settings().factor_degree_cap); }

std::vector<FactorPower> univariate_factor(const Poly& f, int degree_bound)
{
    if (f.is_zero()) raise(ErrorCode::ValidationError, "univariate_factor of zero");
    if (f.is_constant()) return {};
    return factor_in_var(f.with_order(MonomialOrder::grevlex()), single_variable(f), degree_bound);
}

std::optional<Poly> divide_exact(const Poly& f, const Poly& g)
{
    if (g.is_zero()) raise(ErrorCode::DivisionByZero, "divide_exact by zero");
    Poly r = f.with_order(g.order());
    Poly q(f.ring(), g.order());
    Scalar inv = g.lead_coeff().inverse();
    while (!r.is_zero()) {
        if (!g.lead_monomial().divides(r.lead_monomial())) return std::nullopt;
        Monomial m = r.lead_monomial() / g.lead_monomial();
        Scalar c = r.lead_coeff() * inv;
        q += Poly::monomial(f.ring(), m, c, g.order());
        r = r.sub_mul_term(c, m, g);
    }
    return q;
}

namespace {

constexpr int kInternalDegreeBound = 4096;

// Recombines univariate images into multivariate factors of g.
void kronecker_factor(Poly g, std::vector<FactorPower>& out)
{
    const RingPtr& ring = g.ring();
    const std::size_t n = ring->nvars();
    // mixed radix: variable i contributes digits below deg_i(g) + 1; absent variables get none
    std::vector<std::int64_t> base(n, 0), radix(n, 1);
    std::int64_t limit = 1;
    for (std::size_t i = 0; i < n; ++i) {
        radix[i] = g.degree_in(i) + 1;
        base[i] = limit;
        limit *= radix[i];
        if (limit > kInternalDegreeBound * 4)
            raise(ErrorCode::DegreeTooLarge, "Kronecker substitution too large for " + g.to_string());
    }
    RingPtr uring = make_ring(ring->field, {"t_"});
    auto image = [&](const Poly& h) {
        std::vector<Term> ts;
        for (const auto& t : h.terms()) {
            std::int64_t e = 0;
            for (std::size_t i = 0; i < n; ++i) e += base[i] * t.mono[i];
            ts.push_back({Monomial{static_cast<std::int32_t>(e)}, t.coeff});
        }
        return Poly::from_terms(uring, MonomialOrder::grevlex(), std::move(ts));
    };
    auto preimage = [&](const Poly& u) -> std::optional<Poly> {
        std::vector<Term> ts;
        for (const auto& t : u.terms()) {
            std::int64_t e = t.mono[0];
            if (e >= limit) return std::nullopt;
            Monomial::Exponents ex(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                ex[i] = static_cast<std::int32_t>(e % radix[i]);
                e /= radix[i];
            }
            ts.push_back({Monomial(std::move(ex)), t.coeff});
        }
        return Poly::from_terms(ring, MonomialOrder::grevlex(), std::move(ts));
    };

    std::vector<Poly> pool;
    for (auto& [h, e] : factor_in_var(image(g), 0, kInternalDegreeBound))
        for (int k = 0; k < e; ++k) pool.push_back(h);
    if (pool.size() > 24) raise(ErrorCode::UnsupportedShape, "too many univariate image factors for " + g.to_string());

    std::vector<Poly> found;
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        bool hit = false;
        do {
            Poly prod = Poly::constant(uring, 1);
            for (auto i : idx) prod = prod * pool[i];
            auto cand = preimage(prod);
            if (!cand || cand->is_constant() || cand->total_degree() > g.total_degree()) continue;
            if (auto q = divide_exact(g, *cand)) {
                found.push_back(cand->monic());
                g = *q;
                std::vector<Poly> rest;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(pool[i]);
                pool = std::move(rest);
                hit = true;
                break;
            }
        } while (dense::next_combination(idx, pool.size()));
        if (!hit) ++s;
    }
    if (!g.is_constant()) found.push_back(g.monic());
    for (auto& h : found) {
        auto it = std::find_if(out.begin(), out.end(), [&](const FactorPower& fp) { return fp.factor == h; });
        if (it != out.end())
            ++it->multiplicity;
        else
            out.push_back({h, 1});
    }
}

// g = A v + B with gcd(A, B) = 1 is irreducible. g has no monomial content.
bool linear_and_primitive(const Poly& g)
{
    const RingPtr& ring = g.ring();
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
        if (g.degree_in(v) != 1) continue;
        std::vector<Term> a, b;
        for (const auto& t : g.terms()) {
            if (t.mono[v] == 0) {
                b.push_back(t);
                continue;
            }
            Monomial::Exponents ex = t.mono.exponents();
            ex[v] = 0;
            a.push_back({Monomial(std::move(ex)), t.coeff});
        }
        Poly A = Poly::from_terms(ring, MonomialOrder::grevlex(), std::move(a));
        Poly B = Poly::from_terms(ring, MonomialOrder::grevlex(), std::move(b));
        if (A.is_constant() || B.is_constant()) return true;
        const Poly& small = A.total_degree() <= B.total_degree() ? A : B;
        const Poly& other = &small == &A ? B : A;
        bool coprime = true;
        for (const auto& fp : factor_poly(small))
            if (divide_exact(other, fp.factor)) {
                coprime = false;
                break;
            }
        if (coprime) return true;
    }
    return false;
}

// gcd from the principal ideal (f) cap (g) = (lcm).
Poly poly_gcd(const Poly& f, const Poly& g)
{
    Ideal l = ideal_intersection(Ideal(f.ring(), {f}), Ideal(f.ring(), {g}));
    const auto& b = l.basis();
    if (b.size() != 1) raise(ErrorCode::InvariantViolation, "intersection of principal ideals is not principal");
    auto q = divide_exact(f * g, b[0]);
    if (!q) raise(ErrorCode::InvariantViolation, "lcm does not divide the product");
    return q->monic();
}

void merge(std::vector<FactorPower>& out, const std::vector<FactorPower>& more, int scale = 1)
{
    for (const auto& fp : more) {
        auto it = std::find_if(out.begin(), out.end(), [&](const FactorPower& o) { return o.factor == fp.factor; });
        if (it != out.end())
            it->multiplicity += fp.multiplicity * scale;
        else
            out.push_back({fp.factor, fp.multiplicity * scale});
    }
}

// Splits g (several variables, no monomial content) as a nontrivial product when it has a
// repeated factor: g = c * (g / c) with c = gcd(g, dg/dv). Over F_p a polynomial with all
// partials zero is a p-th power.
bool split_repeated(const Poly& g, std::vector<FactorPower>& out)
{
    const RingPtr& ring = g.ring();
    for (auto v : g.variables()) {
        Poly d = g.derivative(v);
        if (d.is_zero()) continue;
        Poly c = poly_gcd(g, d);
        if (c.is_constant()) return false;
        merge(out, factor_poly(c));
        merge(out, factor_poly(*divide_exact(g, c)));
        return true;
    }
    const std::uint64_t p = ring->field.characteristic();
    if (p == 0) return false;
    std::vector<Term> root;
    for (const auto& t : g.terms()) {
        Monomial::Exponents ex = t.mono.exponents();
        for (auto& e : ex) e /= static_cast<std::int32_t>(p);
        root.push_back({Monomial(std::move(ex)), t.coeff});
    }
    merge(out, factor_poly(Poly::from_terms(ring, MonomialOrder::grevlex(), std::move(root))), static_cast<int>(p));
    return true;
}

// A form with no monomial content factors like its dehomogenization at the last variable.
void factor_form(const Poly& g, std::vector<FactorPower>& out)
{
    const RingPtr& ring = g.ring();
    const std::size_t z = g.variables().back();
    auto [small, to_small] = drop_variable(ring, z);
    std::vector<std::size_t> back(small->nvars());
    for (std::size_t i = 0; i < to_small.size(); ++i)
        if (to_small[i] != SIZE_MAX) back[to_small[i]] = i;
    Poly affine = g.evaluate(z, Scalar::one(ring->field)).map_to_ring(small, to_small);
    std::vector<FactorPower> found;
    for (const auto& fp : factor_poly(affine)) found.push_back({homogenize_with(fp.factor.map_to_ring(ring, back), z).monic(), fp.multiplicity});
    merge(out, found);
}

}  // namespace

std::vector<FactorPower> factor_poly(const Poly& f_in)
{
    if (f_in.is_zero()) raise(ErrorCode::ValidationError, "factor_poly of zero");
    Poly f = f_in.with_order(MonomialOrder::grevlex());
    const RingPtr& ring = f.ring();
    std::vector<FactorPower> out;
    if (f.is_constant()) return out;

    Monomial content = f.lead_monomial();
    for (const auto& t : f.terms()) content = content.gcd(t.mono);
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        if (content[i] > 0) out.push_back({Poly::variable(ring, i), content[i]});
    Poly g = *divide_exact(f, Poly::monomial(ring, content, Scalar::one(ring->field)));

    if (!g.is_constant()) {
        auto vs = g.variables();
        if (vs.size() == 1) {
            for (auto& fp : factor_in_var(g, vs.front(), kInternalDegreeBound)) out.push_back(fp);
        } else if (linear_and_primitive(g)) {
            out.push_back({g.monic(), 1});
        } else if (split_repeated(g, out)) {
        } else if (g.is_homogeneous()) {
            factor_form(g, out);
        } else {
            kronecker_factor(g, out);
        }
    }
    std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) {
        if (a.factor.total_degree() != b.factor.total_degree()) return a.factor.total_degree() < b.factor.total_degree();
        return a.factor.to_string() < b.factor.to_string();
    });
    return out;
}

}  // namespace cyclelab
