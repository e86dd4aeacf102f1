#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace cyclelab {

bool is_prime(std::uint64_t n);

/// Coefficient field: the rationals or F_p for a prime p < 2^31.
class Field {
public:
    static Field rationals() { return Field(0); }
    /// Throws NotPrime if p is not a prime below 2^31.
    static Field prime(std::uint64_t p);

    bool is_rational() const noexcept { return p_ == 0; }
    bool is_prime_field() const noexcept { return p_ != 0; }
    std::uint64_t characteristic() const noexcept { return p_; }

    std::string to_string() const;

    friend bool operator==(Field a, Field b) noexcept { return a.p_ == b.p_; }
    friend bool operator!=(Field a, Field b) noexcept { return a.p_ != b.p_; }

private:
    friend class Scalar;
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

/// Exact field element. Rationals are kept in lowest terms by GMP; residues live in [0, p).
class Scalar {
public:
    Scalar() : value_(mpq_class(0)), p_(0) {}
    Scalar(Field f, long n);
    /// Throws BadPrime if the denominator is divisible by the characteristic.
    Scalar(Field f, const mpq_class& q);

    static Scalar zero(Field f) { return Scalar(f, 0L); }
    static Scalar one(Field f) { return Scalar(f, 1L); }

    Field field() const { return Field(p_); }
    std::uint64_t characteristic() const noexcept { return p_; }

    bool is_zero() const;
    bool is_one() const;

    /// Valid only over Q.
    const mpq_class& rational() const { return std::get<mpq_class>(value_); }
    /// Valid only over F_p.
    std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

    Scalar inverse() const;
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Image in F_p of a rational scalar. Throws BadPrime when p divides the denominator.
    Scalar reduce_mod(std::uint64_t p) const;

    std::string to_string() const;

private:
    Scalar(std::uint64_t residue, std::uint64_t p) : value_(residue), p_(p) {}
    void check_same(const Scalar& o) const;

    std::variant<std::uint64_t, mpq_class> value_;
    std::uint64_t p_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);

/// Watches rational divisions performed on this thread and notes which candidate primes
/// divide a divisor. Used to precompute the primes at which a computation over Q does not
/// specialize faithfully to F_p.
class DivisorRecorder {
public:
    explicit DivisorRecorder(std::vector<std::uint64_t> candidates);
    ~DivisorRecorder();
    DivisorRecorder(const DivisorRecorder&) = delete;
    DivisorRecorder& operator=(const DivisorRecorder&) = delete;

    void record(const mpz_class& value);
    void record(const mpq_class& value);
    const std::set<std::uint64_t>& hits() const { return hits_; }

    /// Recorder active on this thread, or nullptr.
    static DivisorRecorder* active();

private:
    std::vector<std::uint64_t> candidates_;
    std::set<std::uint64_t> hits_;
    DivisorRecorder* previous_;
};

}  // namespace cyclelab
