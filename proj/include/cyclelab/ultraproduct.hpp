#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cyclelab/scalar.hpp"

namespace cyclelab {

struct PrimeSample {
    std::vector<std::uint64_t> primes;
    std::vector<std::uint64_t> excluded;

    /// The first `count` primes strictly greater than `above`.
    static PrimeSample first_above(std::uint64_t above, std::size_t count);
    /// Drops the given primes from the sample and records them as excluded.
    PrimeSample without(const std::vector<std::uint64_t>& bad) const;
    std::string describe() const;
};

std::vector<std::uint64_t> prime_divisors(mpz_class n);

/// A family (r_p) of residues: a rational function of p with integer coefficients,
/// reduced mod p, with finitely many per-prime overrides. An override of nullopt marks the
/// element undefined at that prime.
class UltraElement {
public:
    UltraElement() : num_{0}, den_{1} {}
    static UltraElement rational(const mpq_class& q);
    /// Polynomial in p, coefficients by ascending degree.
    static UltraElement polynomial(std::vector<mpz_class> coeffs);

    UltraElement& except(std::uint64_t p, std::optional<std::uint64_t> value);

    /// Residue at p, or nullopt where undefined.
    std::optional<std::uint64_t> at(std::uint64_t p) const;
    /// Primes where the rule itself is undefined (p divides the denominator's value at p).
    bool rule_defined_at(std::uint64_t p) const;
    /// Whether the rule is zero in F_p for every p (its numerator has zero constant term).
    bool rule_vanishes() const;

    const std::map<std::uint64_t, std::optional<std::uint64_t>>& exceptions() const { return exceptions_; }
    std::string to_string() const;

    friend UltraElement operator+(const UltraElement& a, const UltraElement& b);
    friend UltraElement operator-(const UltraElement& a, const UltraElement& b);
    friend UltraElement operator*(const UltraElement& a, const UltraElement& b);
    /// Throws DivisionByZeroAlmostEverywhere when the rule vanishes.
    UltraElement inverse() const;

private:
    std::vector<mpz_class> num_, den_;
    std::map<std::uint64_t, std::optional<std::uint64_t>> exceptions_;
};

enum class UltraOp { Add, Sub, Mul, Inv };
UltraElement ultra_arith(const UltraElement& a, const UltraElement& b, UltraOp op);

/// Primes of the sample where a and b differ (or either is undefined).
std::vector<std::uint64_t> disagreements(const UltraElement& a, const UltraElement& b, const PrimeSample& sample);

struct Expr;
struct Formula;
using ExprPtr = std::shared_ptr<const Expr>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Expr {
    enum class Kind { Var, Const, Add, Sub, Mul, Neg, Pow } kind;
    std::string name;  // Var
    mpz_class value;   // Const
    unsigned exponent = 0;
    ExprPtr left, right;
};

struct Formula {
    enum class Kind { True, False, Eq, Neq, Not, And, Or, Implies, Forall, Exists } kind;
    ExprPtr lhs, rhs;        // Eq, Neq
    FormulaPtr a, b;         // connectives; quantifier body in a
    std::string variable;    // quantifiers
};

struct Sentence {
    FormulaPtr root;
    std::string text;

    int quantifier_depth() const;
    std::vector<std::string> free_variables() const;
    std::string to_string() const;
};

/// Grammar: `forall x. exists y. x*y = 1 | x = 0`. Quantifiers take `.` or `:`; connectives
/// ~ (or "not"), &, |, -> in increasing looseness; terms use + - * ^ and integer literals.
/// The Unicode forms of the symbols are accepted.
Sentence parse_sentence(const std::string& text);
/// Rewrites the Unicode logic and arithmetic symbols into their ASCII forms.
std::string normalize_symbols(std::string s);
Sentence negation(const Sentence& s);
Sentence conjunction(const Sentence& s, const Sentence& t);

bool evaluate_sentence(const Sentence& s, std::uint64_t p);

enum class Verdict { CofiniteHolds, CofiniteFails, FilterDependent };
std::string verdict_name(Verdict v);

struct TransferReport {
    std::vector<std::pair<std::uint64_t, bool>> outcomes;
    Verdict verdict = Verdict::FilterDependent;
    std::vector<std::uint64_t> exceptions;
    double density_holds = 0;
    double density_fails = 0;
    std::string sample;
};

/// Cofinite-holds when the failures number at most Settings::exception_cap, are fewer than
/// the successes and all lie in the lower half of the sample; symmetrically cofinite-fails;
/// otherwise filter-dependent.
TransferReport classify(const std::vector<std::pair<std::uint64_t, bool>>& outcomes, const PrimeSample& sample);
TransferReport los_verdict(const Sentence& s, const PrimeSample& sample);

}  // namespace cyclelab
