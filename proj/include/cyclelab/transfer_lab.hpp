#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclelab/correspondences.hpp"
#include "cyclelab/koszul.hpp"
#include "cyclelab/ultraproduct.hpp"

namespace cyclelab {

enum class InstanceKind { AssociatedCycle, LocalLength, KoszulData, IntersectionProduct, Pushforward, Compose, HilbertDegree };

std::string kind_name(InstanceKind k);
InstanceKind kind_from_name(const std::string& s);
const std::vector<InstanceKind>& all_kinds();

/// A Q-defined instance. Payload meaning by kind:
///   AssociatedCycle      ideals[0]
///   LocalLength          ideals[0] = I, ideals[1] = a minimal prime of I
///   KoszulData           sequence over A / ideals[0]
///   IntersectionProduct  associated cycles of ideals[0] and ideals[1]
///   Pushforward          associated cycle of ideals[0], projected onto `keep` (target ring `target`)
///   Compose              ideals[0] on factors[0] x factors[1], ideals[1] on factors[1] x factors[2]
///   HilbertDegree        homogeneous ideals[0]
struct TransferInstance {
    InstanceKind kind = InstanceKind::AssociatedCycle;
    std::string name;
    Ambient ambient;
    std::vector<Ideal> ideals;
    std::vector<Poly> sequence;
    std::vector<std::size_t> keep;
    RingPtr target;
    std::vector<RingPtr> factors;
    PrimeSample sample;
    std::vector<std::uint64_t> bad_primes;  // filled by prepare_instance
};

/// Computes the bad primes of the sample: every prime dividing an input coefficient or a
/// pivot, leading coefficient or eliminant discriminant met while running the Q side.
void prepare_instance(TransferInstance& inst);

/// The instance over F_p; the kind-specific structure is kept. Throws BadPrime.
TransferInstance reduce_instance(const TransferInstance& inst, std::uint64_t p);

enum class Outcome { Agree, Disagree, BadPrime };
std::string outcome_name(Outcome o);

struct PrimeOutcome {
    std::uint64_t prime = 0;
    Outcome outcome = Outcome::Agree;
    std::string op_then_reduce;
    std::string reduce_then_op;
    std::string note;
};

struct CommutationReport {
    std::string instance;
    InstanceKind kind = InstanceKind::AssociatedCycle;
    std::vector<PrimeOutcome> per_prime;
    std::vector<std::uint64_t> bad_primes;
    TransferReport verdict;

    std::vector<std::uint64_t> disagreements_at_good_primes() const;
    bool exceptions_within_bad_primes() const;
    /// Cofinite-holds, exceptions among the bad primes, no disagreement at a good prime.
    bool passed() const;
};

/// Compares op-then-reduce with reduce-then-op at every sampled prime. Cycles are compared
/// after re-splitting both sides over F_p. A prime where the payload does not reduce is a
/// bad-prime outcome and leaves the sample; the verdict is classified over the rest.
CommutationReport check_commutation(TransferInstance inst);

/// Associated cycle over F_p of each reduced component, weighted.
Cycle resplit(const Cycle& c, std::uint64_t p);

nlohmann::json instance_to_json(const TransferInstance& inst);
TransferInstance instance_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const CommutationReport& r);

/// A pair of cycles in P^n given by homogeneous ideals over Q.
struct SurveyPair {
    std::string name;
    Ideal a, b;
    int n = 0;
};

struct SurveyTable {
    std::string field;
    std::map<std::pair<int, int>, long> max_complexity;  // (d, n) -> max complexity of a.b; 0 if no pair qualifies
    std::map<std::pair<int, int>, int> pairs;            // qualifying pairs
};

struct SurveyReport {
    std::vector<int> ds, ns;
    SurveyTable rational;
    std::vector<SurveyTable> prime_tables;
    bool identical = true;
    bool monotone = true;
    std::string text() const;
};

/// For each (d, n): the largest complexity of a.b over pairs in P^m, m <= n, whose factors
/// have complexity at most d. A pair from P^m counts in P^n through the cone over a and
/// b cut by the new coordinate hyperplanes. Repeated over F_p for each prime of `primes`.
SurveyReport complexity_survey(const std::vector<SurveyPair>& corpus, const std::vector<int>& ds, const std::vector<int>& ns,
                               const PrimeSample& primes);

nlohmann::json survey_to_json(const SurveyReport& r);

}  // namespace cyclelab
