#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclelab/groebner.hpp"

namespace cyclelab {

struct Ambient {
    enum class Kind { Affine, Projective };
    Kind kind = Kind::Affine;
    RingPtr ring;

    static Ambient affine(RingPtr ring) { return {Kind::Affine, std::move(ring)}; }
    static Ambient projective(RingPtr ring) { return {Kind::Projective, std::move(ring)}; }

    bool is_projective() const { return kind == Kind::Projective; }
    /// n for A^n or P^n.
    int dimension() const { return static_cast<int>(ring->nvars()) - (is_projective() ? 1 : 0); }
    std::string to_string() const;

    friend bool operator==(const Ambient& a, const Ambient& b) { return a.kind == b.kind && same_ring(a.ring, b.ring); }
    friend bool operator!=(const Ambient& a, const Ambient& b) { return !(a == b); }
};

/// How a component was shown to be prime.
enum class PrimeCertificate {
    Zero,           // the zero ideal of a polynomial ring
    Principal,      // irreducible generator (S1)
    ZeroDimensional,  // point: residue ring k[t]/(irreducible eliminant) (S2)
    Projection,     // generic projection to a hypersurface with a single reduced generic fiber point (S3)
};

std::string certificate_name(PrimeCertificate c);

struct PrimeComponent {
    Ideal ideal;              // reduced grevlex basis as generators
    int dimension = 0;        // affine Krull dimension, or projective dimension
    std::int64_t degree = 0;  // Hilbert degree (of the projective closure for affine components)
    std::int64_t residue_degree = 1;  // [kappa(P) : k(U)], the residue degree of points
    PrimeCertificate certificate = PrimeCertificate::Zero;

    /// Lexicographically smallest generator string.
    std::string smallest_generator() const;
};

/// Minimal primes of a proper ideal. Affine by default; for a projective ambient the ideal
/// must be homogeneous and the irrelevant component is dropped. Throws UnsupportedShape when
/// no primality strategy applies.
std::vector<PrimeComponent> minimal_primes(const Ideal& ideal);
std::vector<PrimeComponent> minimal_primes(const Ideal& ideal, const Ambient& ambient);

/// Builds the component record (dimension, degree) of an ideal already known to be prime.
PrimeComponent make_component(const Ideal& prime, const Ambient& ambient, PrimeCertificate cert, std::int64_t residue = 0);

/// Length of (A/I) localized at the minimal prime P.
std::int64_t local_length(const Ideal& ideal, const PrimeComponent& prime);
std::int64_t local_length(const Ideal& ideal, const Ideal& prime);

struct Cycle {
    Ambient ambient;
    int codimension = 0;
    std::vector<std::pair<PrimeComponent, long>> terms;

    static Cycle empty(const Ambient& ambient, int codim) { return {ambient, codim, {}}; }
    static Cycle of(const PrimeComponent& c, const Ambient& ambient, long mult = 1);

    bool is_empty() const { return terms.empty(); }
    /// Multiplicity of the component with this ideal (0 if absent).
    long multiplicity(const Ideal& prime) const;
    /// Sorts components by degree, then by their sorted generator strings.
    void canonicalize();
    std::string to_string() const;
};

Cycle operator+(const Cycle& a, const Cycle& b);
Cycle operator-(const Cycle& a, const Cycle& b);
Cycle operator*(long n, const Cycle& a);
bool operator==(const Cycle& a, const Cycle& b);
inline bool operator!=(const Cycle& a, const Cycle& b) { return !(a == b); }

struct AssociatedCycle {
    Cycle cycle;
    std::vector<PrimeComponent> discarded;  // minimal primes of other codimensions
};

/// Sum over the minimal primes of the chosen codimension (default: the smallest one, i.e. the
/// top-dimensional part) of length * [V(P)].
AssociatedCycle associated_cycle(const Ideal& ideal, const Ambient& ambient, std::optional<int> codim = std::nullopt);

/// Sum of multiplicity * degree. Requires a projective ambient.
std::int64_t cycle_degree(const Cycle& a);

struct ComplexityCertificate {
    std::size_t components = 0;
    long max_abs_coefficient = 0;
    std::int64_t max_degree = 0;
    long c = 1;  // least integer exceeding all three
};

ComplexityCertificate complexity(const Cycle& a);

}  // namespace cyclelab
