#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "cyclelab/scalar.hpp"

namespace cyclelab {

/// Exponent vector. Length equals the number of ring variables.
class Monomial {
public:
    using Exponents = boost::container::small_vector<std::int32_t, 8>;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(Exponents e);
    Monomial(std::initializer_list<std::int32_t> e);

    std::size_t size() const noexcept { return exps_.size(); }
    std::int32_t operator[](std::size_t i) const noexcept { return exps_[i]; }
    std::int64_t degree() const noexcept { return degree_; }
    const Exponents& exponents() const noexcept { return exps_; }

    bool is_one() const noexcept { return degree_ == 0; }
    bool divides(const Monomial& o) const noexcept;
    bool coprime(const Monomial& o) const noexcept;

    /// Throws ExponentOverflow when an exponent leaves int32 range.
    Monomial operator*(const Monomial& o) const;
    /// Precondition: o divides *this.
    Monomial operator/(const Monomial& o) const;
    Monomial lcm(const Monomial& o) const;
    Monomial gcd(const Monomial& o) const;
    Monomial with(std::size_t var, std::int32_t e) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

private:
    Exponents exps_;
    std::int64_t degree_ = 0;
};

/// Lex, graded reverse lex, or a two-block elimination order. In the block order the
/// variables flagged in `first_block` are compared first (grevlex inside each block), so
/// any polynomial whose leading monomial avoids them lies in the subring of the others.
class MonomialOrder {
public:
    enum class Kind { Lex, GrevLex, Block };

    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
    static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, {}); }
    static MonomialOrder block(std::vector<bool> first_block) { return MonomialOrder(Kind::Block, std::move(first_block)); }

    Kind kind() const noexcept { return kind_; }
    const std::vector<bool>& first_block() const noexcept { return first_; }
    bool in_first_block(std::size_t var) const { return var < first_.size() && first_[var]; }

    /// Negative, zero or positive as a < b, a == b, a > b.
    int compare(const Monomial& a, const Monomial& b) const;

    std::string to_string() const;

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) { return a.kind_ == b.kind_ && a.first_ == b.first_; }
    friend bool operator!=(const MonomialOrder& a, const MonomialOrder& b) { return !(a == b); }
    friend bool operator<(const MonomialOrder& a, const MonomialOrder& b)
    {
        return std::tie(a.kind_, a.first_) < std::tie(b.kind_, b.first_);
    }

private:
    MonomialOrder(Kind k, std::vector<bool> first) : kind_(k), first_(std::move(first)) {}
    Kind kind_;
    std::vector<bool> first_;
};

/// Polynomial ring context: coefficient field and variable names.
struct Ring {
    Field field;
    std::vector<std::string> vars;

    std::size_t nvars() const { return vars.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::size_t require_index(std::string_view name) const;
    std::string to_string() const;

    friend bool operator==(const Ring& a, const Ring& b) { return a.field == b.field && a.vars == b.vars; }
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(Field field, std::vector<std::string> vars);
bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
    Monomial mono;
    Scalar coeff;
};

/// Sparse multivariate polynomial in canonical form: nonzero coefficients, monomials
/// strictly descending in the polynomial's order.
class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr ring, MonomialOrder order = MonomialOrder::grevlex());

    static Poly constant(RingPtr ring, const Scalar& c, MonomialOrder order = MonomialOrder::grevlex());
    static Poly constant(RingPtr ring, long c, MonomialOrder order = MonomialOrder::grevlex());
    static Poly variable(RingPtr ring, std::size_t var, MonomialOrder order = MonomialOrder::grevlex());
    static Poly variable(RingPtr ring, std::string_view name, MonomialOrder order = MonomialOrder::grevlex());
    static Poly monomial(RingPtr ring, Monomial m, Scalar c, MonomialOrder order = MonomialOrder::grevlex());
    /// Sorts, merges equal monomials and drops zeros.
    static Poly from_terms(RingPtr ring, MonomialOrder order, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    Field field() const { return ring_->field; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_homogeneous() const;
    bool is_monic() const { return !terms_.empty() && terms_[0].coeff.is_one(); }

    const Term& lead() const { return terms_.front(); }
    const Monomial& lead_monomial() const { return terms_.front().mono; }
    const Scalar& lead_coeff() const { return terms_.front().coeff; }

    /// -1 for the zero polynomial.
    std::int64_t total_degree() const;
    std::int32_t degree_in(std::size_t var) const;
    bool involves(std::size_t var) const { return degree_in(var) > 0; }
    std::vector<std::size_t> variables() const;
    /// Coefficient of the given monomial (zero if absent).
    Scalar coefficient(const Monomial& m) const;

    /// Removes the leading term (no-op on zero).
    void drop_lead() { if (!terms_.empty()) terms_.erase(terms_.begin()); }

    Poly with_order(const MonomialOrder& order) const;
    Poly monic() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Scalar& c) const;
    Poly times_term(const Monomial& m, const Scalar& c) const;
    Poly pow(unsigned e) const;

    /// this - c * m * g, the elementary reduction step.
    Poly sub_mul_term(const Scalar& c, const Monomial& m, const Poly& g) const;

    Poly substitute(std::size_t var, const Poly& value) const;
    /// Simultaneous substitution of every variable; values live in a (possibly different) ring.
    Poly compose(const std::vector<Poly>& values) const;
    Poly evaluate(std::size_t var, const Scalar& value) const;
    Poly derivative(std::size_t var) const;

    /// Moves the polynomial into `target`; var_map[i] is the target index of variable i.
    Poly map_to_ring(const RingPtr& target, const std::vector<std::size_t>& var_map) const;
    /// Same variables, coefficients mapped to F_p. Throws BadPrime on a vanishing denominator.
    Poly reduce_mod_p(std::uint64_t p) const;

    std::string to_string() const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    Poly(RingPtr ring, MonomialOrder order, std::vector<Term> sorted_terms)
        : ring_(std::move(ring)), order_(std::move(order)), terms_(std::move(sorted_terms))
    {
    }
    void check_context(const Poly& o) const;
    Poly add_scaled(const Poly& o, const Scalar* scale, const Monomial* shift) const;

    RingPtr ring_;
    MonomialOrder order_ = MonomialOrder::grevlex();
    std::vector<Term> terms_;
};

/// Ring over F_p with the same variables.
RingPtr reduce_ring(const RingPtr& ring, std::uint64_t p);

/// Homogenizes with respect to `name`. If `name` is not a ring variable the ring is extended
/// by it; if it is, f must not involve it (VariableClash otherwise).
Poly homogenize(const Poly& f, std::string_view name);
/// Homogenize with an existing unused variable of f's ring.
Poly homogenize_with(const Poly& f, std::size_t var);
/// Sets `name` to `value` and removes it from the ring.
Poly dehomogenize(const Poly& f, std::string_view name, long value = 1);

/// Ring without variable `var`, plus the index map from the kept variables.
std::pair<RingPtr, std::vector<std::size_t>> drop_variable(const RingPtr& ring, std::size_t var);

/// Ring with extra variables appended; polynomials move in via `lift`.
RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& extra);
/// Variable name not used by `ring`, derived from `base`.
std::string fresh_name(const RingPtr& ring, const std::string& base);
/// Embeds f into a ring whose first variables are f's variables.
Poly lift(const Poly& f, const RingPtr& bigger);

/// Parses the polynomial text syntax, e.g. "3/2*x^2*y - z + 1".
Poly parse_poly(std::string_view text, const RingPtr& ring);

}  // namespace cyclelab
