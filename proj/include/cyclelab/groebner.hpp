#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <gmpxx.h>

#include "cyclelab/poly.hpp"

namespace cyclelab {

/// Remainder of f on division by `basis` (full reduction, every term).
Poly normal_form(const Poly& f, const std::vector<Poly>& basis, const MonomialOrder& order);

/// Reduced, monic Gröbner basis, sorted by ascending leading monomial. Buchberger with the
/// coprime and chain criteria and normal (degree-graded) pair selection. Throws ResourceLimit
/// when the number of generated pairs exceeds Settings::pair_cap.
std::vector<Poly> groebner_basis(const std::vector<Poly>& generators, const MonomialOrder& order);

class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Poly> generators);

    static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
    static Ideal unit(RingPtr ring);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Poly>& generators() const { return gens_; }
    bool is_homogeneous() const { return homogeneous_; }

    /// Cached reduced basis for the order (grevlex by default).
    const std::vector<Poly>& basis(const MonomialOrder& order = MonomialOrder::grevlex()) const;

    Poly reduce(const Poly& f) const;
    bool contains(const Poly& f) const { return reduce(f).is_zero(); }
    bool contains(const Ideal& o) const;
    bool is_zero() const { return basis().empty(); }
    bool is_unit() const;

    /// Generators of the reduced grevlex basis, as a fresh ideal.
    Ideal canonical() const { return Ideal(ring_, basis()); }

    friend bool operator==(const Ideal& a, const Ideal& b);
    friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }

    std::string to_string() const;

private:
    struct Cache {
        std::mutex mutex;
        std::map<MonomialOrder, std::vector<Poly>> bases;
    };

    RingPtr ring_;
    std::vector<Poly> gens_;
    bool homogeneous_ = true;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_intersection(const Ideal& a, const Ideal& b);
/// (I : g) and (I : J).
Ideal ideal_quotient(const Ideal& a, const Poly& g);
Ideal ideal_quotient(const Ideal& a, const Ideal& b);
/// (I : J^inf) by iterated quotients, at most Settings::saturation_cap rounds.
Ideal saturation(const Ideal& a, const Ideal& b);
Ideal saturation(const Ideal& a, const Poly& g);
/// (I : g^inf) in one elimination, via I + (1 - t g).
Ideal saturate_by_element(const Ideal& a, const Poly& g);

/// I intersected with the subring in `keep`; generators stay in I's ring.
Ideal elimination_ideal(const Ideal& a, const std::vector<std::size_t>& keep);
/// Block order with every variable outside `keep` in the first block.
MonomialOrder elimination_order(const RingPtr& ring, const std::vector<std::size_t>& keep);

/// Largest set of variables independent modulo the leading-term ideal; empty for the unit ideal.
std::vector<std::size_t> maximal_independent_set(const Ideal& a);
/// Krull dimension of the quotient ring; -1 for the unit ideal.
int krull_dimension(const Ideal& a);

/// Minimal generators of the leading-term ideal.
std::vector<Monomial> leading_monomials(const std::vector<Poly>& basis);

/// Hilbert series numerator N(t) of S/M for a monomial ideal M: HS = N(t) / (1-t)^nvars.
std::vector<std::int64_t> hilbert_numerator(const std::vector<Monomial>& gens, std::size_t nvars);

struct HilbertData {
    std::vector<std::int64_t> numerator;  // reduced: HS = numerator / (1-t)^krull_dim
    int krull_dim = 0;                    // pole order; projective dimension is krull_dim - 1
    std::vector<mpq_class> polynomial;    // Hilbert polynomial coefficients, constant term first
    std::int64_t degree = 0;
    int regularity_bound = 0;

    /// Value of the Hilbert polynomial at t.
    mpq_class polynomial_at(long t) const;
    std::string polynomial_string() const;
};

/// Hilbert data of S/I for homogeneous I. Throws NotHomogeneous.
HilbertData hilbert(const Ideal& a);

/// dim_k (S/I)_t by counting standard monomials of degree t.
std::int64_t hilbert_function(const Ideal& a, int t);

/// Number of standard monomials of a zero-dimensional ideal; throws NotFiniteLength otherwise.
std::int64_t vector_space_dimension(const Ideal& a);
/// Standard monomials of a zero-dimensional basis, ascending.
std::vector<Monomial> standard_monomials(const std::vector<Poly>& basis, std::size_t nvars);

}  // namespace cyclelab
