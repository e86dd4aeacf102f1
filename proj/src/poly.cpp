#include "cyclelab/poly.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "cyclelab/error.hpp"

namespace cyclelab {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Exponents e) : exps_(std::move(e))
{
    for (auto x : exps_) degree_ += x;
}

Monomial::Monomial(std::initializer_list<std::int32_t> e) : exps_(e.begin(), e.end())
{
    for (auto x : exps_) degree_ += x;
}

bool Monomial::divides(const Monomial& o) const noexcept
{
    if (degree_ > o.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > o.exps_[i]) return false;
    return true;
}

bool Monomial::coprime(const Monomial& o) const noexcept
{
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > 0 && o.exps_[i] > 0) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial r;
    r.exps_.resize(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        std::int64_t e = std::int64_t(exps_[i]) + o.exps_[i];
        if (e > INT32_MAX) raise(ErrorCode::ExponentOverflow, "exponent overflow in monomial product");
        r.exps_[i] = static_cast<std::int32_t>(e);
    }
    r.degree_ = degree_ + o.degree_;
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const
{
    Monomial r;
    r.exps_.resize(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] - o.exps_[i];
    r.degree_ = degree_ - o.degree_;
    return r;
}

Monomial Monomial::lcm(const Monomial& o) const
{
    Monomial r;
    r.exps_.resize(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        r.exps_[i] = std::max(exps_[i], o.exps_[i]);
        r.degree_ += r.exps_[i];
    }
    return r;
}

Monomial Monomial::gcd(const Monomial& o) const
{
    Monomial r;
    r.exps_.resize(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        r.exps_[i] = std::min(exps_[i], o.exps_[i]);
        r.degree_ += r.exps_[i];
    }
    return r;
}

Monomial Monomial::with(std::size_t var, std::int32_t e) const
{
    Monomial r = *this;
    r.degree_ += e - r.exps_[var];
    r.exps_[var] = e;
    return r;
}

// ---------------------------------------------------------------- orders

namespace {

int grevlex_compare(const Monomial& a, const Monomial& b, const std::vector<bool>* mask, bool want)
{
    std::int64_t da = 0, db = 0;
    const std::size_t n = a.size();
    if (!mask) {
        da = a.degree();
        db = b.degree();
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            bool in = i < mask->size() && (*mask)[i];
            if (in == want) {
                da += a[i];
                db += b[i];
            }
        }
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t k = n; k-- > 0;) {
        if (mask) {
            bool in = k < mask->size() && (*mask)[k];
            if (in != want) continue;
        }
        if (a[k] != b[k]) return a[k] > b[k] ? -1 : 1;
    }
    return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const
{
    switch (kind_) {
    case Kind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    case Kind::GrevLex:
        return grevlex_compare(a, b, nullptr, true);
    case Kind::Block: {
        int c = grevlex_compare(a, b, &first_, true);
        if (c != 0) return c;
        return grevlex_compare(a, b, &first_, false);
    }
    }
    return 0;
}

std::string MonomialOrder::to_string() const
{
    switch (kind_) {
    case Kind::Lex: return "lex";
    case Kind::GrevLex: return "grevlex";
    case Kind::Block: {
        std::string s = "block(";
        for (bool b : first_) s += b ? '1' : '0';
        return s + ")";
    }
    }
    return "?";
}

// ---------------------------------------------------------------- Ring

std::optional<std::size_t> Ring::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return i;
    return std::nullopt;
}

std::size_t Ring::require_index(std::string_view name) const
{
    auto i = index_of(name);
    if (!i) raise(ErrorCode::ValidationError, "unknown variable '" + std::string(name) + "' in " + to_string());
    return *i;
}

std::string Ring::to_string() const
{
    std::string s = field.to_string() + "[";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
    return s + "]";
}

RingPtr make_ring(Field field, std::vector<std::string> vars)
{
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) raise(ErrorCode::VariableClash, "duplicate variable '" + vars[i] + "'");
    return std::make_shared<const Ring>(Ring{field, std::move(vars)});
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

RingPtr reduce_ring(const RingPtr& ring, std::uint64_t p) { return make_ring(Field::prime(p), ring->vars); }

// ---------------------------------------------------------------- Poly

Poly::Poly(RingPtr ring, MonomialOrder order) : ring_(std::move(ring)), order_(std::move(order)) {}

Poly Poly::constant(RingPtr ring, const Scalar& c, MonomialOrder order)
{
    Poly p(ring, std::move(order));
    if (c.field() != ring->field) raise(ErrorCode::MixedContext, "constant from another field");
    if (!c.is_zero()) p.terms_.push_back({Monomial(ring->nvars()), c});
    return p;
}

Poly Poly::constant(RingPtr ring, long c, MonomialOrder order)
{
    Field f = ring->field;
    return constant(std::move(ring), Scalar(f, c), std::move(order));
}

Poly Poly::variable(RingPtr ring, std::size_t var, MonomialOrder order)
{
    Monomial m(ring->nvars());
    m = m.with(var, 1);
    Scalar one = Scalar::one(ring->field);
    return monomial(std::move(ring), std::move(m), one, std::move(order));
}

Poly Poly::variable(RingPtr ring, std::string_view name, MonomialOrder order)
{
    std::size_t i = ring->require_index(name);
    return variable(std::move(ring), i, std::move(order));
}

Poly Poly::monomial(RingPtr ring, Monomial m, Scalar c, MonomialOrder order)
{
    Poly p(ring, std::move(order));
    if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
}

Poly Poly::from_terms(RingPtr ring, MonomialOrder order, std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    return Poly(std::move(ring), std::move(order), std::move(out));
}

bool Poly::is_homogeneous() const
{
    for (const auto& t : terms_)
        if (t.mono.degree() != terms_.front().mono.degree()) return false;
    return true;
}

std::int64_t Poly::total_degree() const
{
    std::int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

std::int32_t Poly::degree_in(std::size_t var) const
{
    std::int32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
}

std::vector<std::size_t> Poly::variables() const
{
    std::vector<std::size_t> vs;
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
        if (involves(i)) vs.push_back(i);
    return vs;
}

Scalar Poly::coefficient(const Monomial& m) const
{
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return Scalar::zero(field());
}

Poly Poly::with_order(const MonomialOrder& order) const
{
    if (order == order_) return *this;
    std::vector<Term> ts = terms_;
    std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    return Poly(ring_, order, std::move(ts));
}

Poly Poly::monic() const
{
    if (is_zero() || lead_coeff().is_one()) return *this;
    return scaled(lead_coeff().inverse());
}

void Poly::check_context(const Poly& o) const
{
    if (!same_ring(ring_, o.ring_))
        raise(ErrorCode::MixedContext,
              "polynomials from different rings: " + (ring_ ? ring_->to_string() : "?") + " vs " +
                  (o.ring_ ? o.ring_->to_string() : "?"));
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

// Computes this + scale * shift * o by a sorted merge.
Poly Poly::add_scaled(const Poly& o_in, const Scalar* scale, const Monomial* shift) const
{
    check_context(o_in);
    Poly reordered;
    const std::vector<Term>* ot = &o_in.terms_;
    if (o_in.order_ != order_) {
        reordered = o_in.with_order(order_);
        ot = &reordered.terms_;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + ot->size());
    std::size_t i = 0, j = 0;
    auto scaled_term = [&](const Term& t) {
        Term s{shift ? t.mono * *shift : t.mono, scale ? t.coeff * *scale : t.coeff};
        return s;
    };
    while (i < terms_.size() || j < ot->size()) {
        if (j == ot->size()) {
            out.push_back(terms_[i++]);
            continue;
        }
        Term b = scaled_term((*ot)[j]);
        if (i == terms_.size()) {
            out.push_back(std::move(b));
            ++j;
            continue;
        }
        int c = order_.compare(terms_[i].mono, b.mono);
        if (c > 0) {
            out.push_back(terms_[i++]);
        } else if (c < 0) {
            out.push_back(std::move(b));
            ++j;
        } else {
            Scalar s = terms_[i].coeff + b.coeff;
            if (!s.is_zero()) out.push_back({terms_[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    return Poly(ring_, order_, std::move(out));
}

Poly& Poly::operator+=(const Poly& o)
{
    if (!ring_) return *this = o;
    *this = add_scaled(o, nullptr, nullptr);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (!ring_) return *this = -o;
    Scalar m1 = -Scalar::one(field());
    *this = add_scaled(o, &m1, nullptr);
    return *this;
}

Poly Poly::sub_mul_term(const Scalar& c, const Monomial& m, const Poly& g) const
{
    Scalar neg = -c;
    return add_scaled(g, &neg, &m);
}

Poly operator*(const Poly& a, const Poly& b)
{
    a.check_context(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.ring_, a.order_);
    std::vector<Term> ts;
    ts.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) ts.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return Poly::from_terms(a.ring_, a.order_, std::move(ts));
}

Poly Poly::scaled(const Scalar& c) const
{
    if (c.is_zero()) return Poly(ring_, order_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::times_term(const Monomial& m, const Scalar& c) const
{
    if (c.is_zero()) return Poly(ring_, order_);
    Poly r = *this;
    for (auto& t : r.terms_) {
        t.mono = t.mono * m;
        t.coeff *= c;
    }
    return r;
}

Poly Poly::pow(unsigned e) const
{
    Poly result = constant(ring_, 1, order_);
    Poly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const
{
    check_context(value);
    std::int32_t d = degree_in(var);
    std::vector<Poly> powers{constant(ring_, 1, order_)};
    for (std::int32_t k = 1; k <= d; ++k) powers.push_back(powers.back() * value);
    Poly out(ring_, order_);
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        Monomial rest = t.mono.with(var, 0);
        out += powers[t.mono[var]].times_term(rest, t.coeff);
    }
    return out;
}

Poly Poly::compose(const std::vector<Poly>& values) const
{
    if (values.size() != ring_->nvars()) raise(ErrorCode::ValidationError, "compose: wrong number of values");
    const RingPtr& target = values.front().ring();
    MonomialOrder ord = values.front().order();
    Poly out(target, ord);
    // cache powers per variable
    std::vector<std::vector<Poly>> powers(values.size());
    for (const auto& t : terms_) {
        Poly term = constant(target, 1, ord);
        for (std::size_t v = 0; v < values.size(); ++v) {
            std::int32_t e = t.mono[v];
            if (e == 0) continue;
            auto& pw = powers[v];
            if (pw.empty()) pw.push_back(constant(target, 1, ord));
            while (static_cast<std::int32_t>(pw.size()) <= e) pw.push_back(pw.back() * values[v]);
            term = term * pw[e];
        }
        out += term.scaled(t.coeff);
    }
    return out;
}

Poly Poly::evaluate(std::size_t var, const Scalar& value) const
{
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Scalar c = t.coeff;
        for (std::int32_t k = 0; k < t.mono[var]; ++k) c *= value;
        ts.push_back({t.mono.with(var, 0), c});
    }
    return from_terms(ring_, order_, std::move(ts));
}

Poly Poly::derivative(std::size_t var) const
{
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        std::int32_t e = t.mono[var];
        if (e == 0) continue;
        ts.push_back({t.mono.with(var, e - 1), t.coeff * Scalar(field(), static_cast<long>(e))});
    }
    return from_terms(ring_, order_, std::move(ts));
}

Poly Poly::map_to_ring(const RingPtr& target, const std::vector<std::size_t>& var_map) const
{
    if (target->field != field()) raise(ErrorCode::MixedContext, "map_to_ring changes the field");
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial::Exponents e(target->nvars(), 0);
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] == 0) continue;
            if (var_map[i] >= target->nvars())
                raise(ErrorCode::VariableClash, "variable " + ring_->vars[i] + " has no image in " + target->to_string());
            e[var_map[i]] += t.mono[i];
        }
        ts.push_back({Monomial(std::move(e)), t.coeff});
    }
    return from_terms(target, order_.kind() == MonomialOrder::Kind::Block ? MonomialOrder::grevlex() : order_,
                      std::move(ts));
}

Poly Poly::reduce_mod_p(std::uint64_t p) const
{
    RingPtr target = reduce_ring(ring_, p);
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back({t.mono, t.coeff.reduce_mod(p)});
    return from_terms(target, order_, std::move(ts));
}

std::string Poly::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        std::string c = t.coeff.to_string();
        bool negative = !c.empty() && c[0] == '-';
        if (negative) c = c.substr(1);
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->vars[i];
            if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
        }
        if (mono.empty())
            os << c;
        else if (c == "1")
            os << mono;
        else
            os << c << "*" << mono;
    }
    return os.str();
}

bool operator==(const Poly& a, const Poly& b)
{
    if (!same_ring(a.ring_, b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.order_ == b.order_) {
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        return true;
    }
    return a == b.with_order(a.order_);
}

// ---------------------------------------------------------------- homogenization

Poly homogenize_with(const Poly& f, std::size_t var)
{
    if (f.involves(var))
        raise(ErrorCode::VariableClash, "homogenizing variable " + f.ring()->vars[var] + " already occurs in " + f.to_string());
    std::int64_t d = f.total_degree();
    std::vector<Term> ts;
    for (const auto& t : f.terms()) ts.push_back({t.mono.with(var, static_cast<std::int32_t>(d - t.mono.degree())), t.coeff});
    return Poly::from_terms(f.ring(), f.order(), std::move(ts));
}

Poly homogenize(const Poly& f, std::string_view name)
{
    if (auto idx = f.ring()->index_of(name)) return homogenize_with(f, *idx);
    std::vector<std::string> vars = f.ring()->vars;
    vars.emplace_back(name);
    RingPtr extended = make_ring(f.field(), vars);
    std::vector<std::size_t> map(f.ring()->nvars());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    return homogenize_with(f.map_to_ring(extended, map), extended->nvars() - 1);
}

std::pair<RingPtr, std::vector<std::size_t>> drop_variable(const RingPtr& ring, std::size_t var)
{
    std::vector<std::string> vars;
    std::vector<std::size_t> map(ring->nvars());
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
        if (i == var) {
            map[i] = SIZE_MAX;
            continue;
        }
        map[i] = vars.size();
        vars.push_back(ring->vars[i]);
    }
    return {make_ring(ring->field, vars), map};
}

RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& extra)
{
    std::vector<std::string> vars = ring->vars;
    vars.insert(vars.end(), extra.begin(), extra.end());
    return make_ring(ring->field, std::move(vars));
}

std::string fresh_name(const RingPtr& ring, const std::string& base)
{
    if (!ring->index_of(base)) return base;
    for (int k = 0;; ++k) {
        std::string name = base + std::to_string(k);
        if (!ring->index_of(name)) return name;
    }
}

Poly lift(const Poly& f, const RingPtr& bigger)
{
    std::vector<std::size_t> map(f.ring()->nvars());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    return f.map_to_ring(bigger, map);
}

Poly dehomogenize(const Poly& f, std::string_view name, long value)
{
    std::size_t var = f.ring()->require_index(name);
    Poly g = f.evaluate(var, Scalar(f.field(), value));
    auto [ring, map] = drop_variable(f.ring(), var);
    return g.map_to_ring(ring, map);
}

}  // namespace cyclelab
