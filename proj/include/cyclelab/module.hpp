#pragma once

#include <vector>

#include "cyclelab/groebner.hpp"

namespace cyclelab {

/// Element of the free module R^m.
using ModVec = std::vector<Poly>;

/// Submodule of R^m given by generators. Computations encode R^m as the degree-one part
/// of R[e_1..e_m] / (e_i e_j).
struct Submodule {
    RingPtr ring;
    std::size_t rank = 0;
    std::vector<ModVec> gens;

    static Submodule zero(RingPtr ring, std::size_t rank) { return {std::move(ring), rank, {}}; }
    /// J * R^m.
    static Submodule ideal_times_free(const Ideal& j, std::size_t rank);
    void add(const Submodule& o);
};

ModVec unit_vector(const RingPtr& ring, std::size_t rank, std::size_t k);

/// Reduced generators of the submodule (Gröbner basis in position-sensitive form).
std::vector<ModVec> module_basis(const Submodule& m);
bool module_contains(const Submodule& m, const ModVec& v);

/// Vectors c in R^r with sum c_j columns[j] in `relations` (relations lives in R^m).
Submodule module_kernel(const std::vector<ModVec>& columns, const Submodule& relations);

/// dim over k(params) of R^m / L, counted from standard monomials outside `params`;
/// -1 if infinite.
std::int64_t generic_quotient_dimension(const Submodule& relations, const std::vector<std::size_t>& params);

/// Length of (R^m / L) localized at the prime P, which must be minimal in the support
/// (throws NotMinimalPrime when that fails to hold).
std::int64_t length_at(const Submodule& relations, const Ideal& prime);

/// dim over k(U) of R / P, with U a maximal independent set of P.
std::int64_t residue_degree(const Ideal& prime);

}  // namespace cyclelab
