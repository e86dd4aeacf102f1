#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclelab/cycles.hpp"

namespace cyclelab {

struct VarietySpec {
    Ambient ambient;  // affine
    Ideal ideal;
    std::vector<PrimeComponent> components;
    std::optional<bool> smooth;

    const RingPtr& ring() const { return ambient.ring; }
    bool is_affine_space() const { return ideal.is_zero(); }
};

VarietySpec make_variety(const Ideal& ideal);
VarietySpec affine_space(const RingPtr& ring);

/// Jacobian criterion on every component plus pairwise disjointness of components.
bool check_smooth(VarietySpec& v);

/// Ring with X's variables then Y's; clashing names get primes appended.
RingPtr product_ring(const std::vector<RingPtr>& factors);

struct FinitenessCertificate {
    Ideal component;
    Ideal source_component;
    std::map<std::string, int> monic_degree;  // target variable -> degree of a monic relation
    std::vector<Poly> witnesses;
};

/// Each component of W must be finite over X (a relation monic in every Y variable with
/// coefficients in X's variables) and map onto a component of X.
std::vector<FinitenessCertificate> check_finite_surjective(const Cycle& w, const VarietySpec& x, const VarietySpec& y);

struct Correspondence {
    VarietySpec source;
    VarietySpec target;
    Cycle cycle;  // on product_ring({source, target})
    std::vector<FinitenessCertificate> certificates;

    std::string to_string() const { return cycle.to_string(); }
};

bool operator==(const Correspondence& a, const Correspondence& b);
inline bool operator!=(const Correspondence& a, const Correspondence& b) { return !(a == b); }

Correspondence make_correspondence(const VarietySpec& x, const VarietySpec& y, const Cycle& w);

/// Graph of the map with one polynomial (in X's ring) per variable of Y.
Correspondence graph(const VarietySpec& x, const VarietySpec& y, const std::vector<Poly>& f);
Correspondence identity(const VarietySpec& x);

/// Pushforward along the projection keeping the variables `keep` (indices into w's ring,
/// in the order of the target ring's variables).
Cycle pushforward(const Cycle& w, const Ambient& target, const std::vector<std::size_t>& keep);

/// alpha: X -> Y, beta: Y -> Z. The composite is p13_*([W1 x Z].[X x W2]).
Correspondence compose(const Correspondence& alpha, const Correspondence& beta);

Correspondence operator+(const Correspondence& a, const Correspondence& b);

struct LawsReport {
    int checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Identity laws for every member, associativity for composable triples and bilinearity
/// for parallel pairs followed by a composable member.
LawsReport category_laws_check(const std::vector<Correspondence>& sample);

}  // namespace cyclelab
