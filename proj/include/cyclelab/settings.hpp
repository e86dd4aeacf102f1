#pragma once

#include <cstddef>
#include <cstdint>

namespace cyclelab {

/// Resource limits and tunables shared by the engine. Installed per thread with ScopedSettings.
struct Settings {
    std::size_t pair_cap = 200'000;           // Buchberger pairs per basis computation
    int factor_degree_cap = 12;               // univariate_factor degree bound over Q
    int saturation_cap = 50;                  // iterated quotients before giving up
    int quantifier_depth = 3;
    std::uint64_t brute_force_prime_bound = 499;
    std::uint64_t seed = 0x5eed'c1c1e;        // randomized fast paths
    bool cross_check_charts = true;           // projective products: confirm on a second chart
    int exception_cap = 3;                    // los verdicts: failures tolerated for a cofinite verdict
};

const Settings& settings();

class ScopedSettings {
public:
    explicit ScopedSettings(const Settings& s);
    ~ScopedSettings();
    ScopedSettings(const ScopedSettings&) = delete;
    ScopedSettings& operator=(const ScopedSettings&) = delete;

private:
    const Settings* previous_;
    Settings current_;
};

}  // namespace cyclelab
