#pragma once

#include <string>
#include <vector>

#include "cyclelab/cycles.hpp"
#include "cyclelab/module.hpp"

namespace cyclelab {

/// Column-major: columns[j] is the image of the j-th basis vector.
struct Matrix {
    std::size_t rows = 0;
    std::vector<ModVec> columns;
};

/// Koszul complex of f_1..f_r over A/J. Module i has the wedge basis of i-subsets of
/// {0..r-1} in lexicographic order; differentials[i] maps K_i to K_{i-1} (i = 1..r).
struct KoszulComplex {
    RingPtr ring;
    std::vector<Poly> sequence;
    Ideal coefficients;  // J
    std::vector<std::vector<std::vector<std::size_t>>> wedge_basis;
    std::vector<Matrix> differentials;  // index 0 unused

    std::size_t length() const { return sequence.size(); }
    std::size_t rank(std::size_t i) const { return wedge_basis[i].size(); }
};

KoszulComplex build_koszul(const RingPtr& ring, const std::vector<Poly>& sequence, const Ideal& coefficients);

/// Length of H_i(K) localized at P.
std::int64_t homology_length_at(const KoszulComplex& k, std::size_t i, const Ideal& prime);

struct MultiplicityReport {
    PrimeComponent component;
    std::int64_t euler_characteristic = 0;
    std::vector<std::int64_t> lengths;
    std::string route;  // "diagonal" or "cohen-macaulay"
};

enum class MultiplicityRoute { Auto, Diagonal };

/// Intersection multiplicity of affine components V, W at a component P of V cap W, by the
/// Koszul complex of the diagonal forms x_i - y_i on (A/I_V) (x) (A/I_W). With Auto, the
/// higher homology is skipped when both sides are Cohen-Macaulay (it vanishes there).
MultiplicityReport intersection_multiplicity(const PrimeComponent& v, const PrimeComponent& w, const PrimeComponent& p,
                                             MultiplicityRoute route = MultiplicityRoute::Auto);

/// Bilinear intersection product of properly intersecting cycles.
Cycle intersection_product(const Cycle& a, const Cycle& b);

/// Whether A/P is known Cohen-Macaulay (dimension at most 1, or a complete intersection).
bool known_cohen_macaulay(const PrimeComponent& c, std::size_t nvars);

}  // namespace cyclelab
