#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hill/potential.hpp"
#include "hill/floquet.hpp"

namespace hill {

struct CheckResult {
    std::string name;
    double value = 0.0;      // worst observed error (or the measured quantity)
    double threshold = 0.0;
    bool pass = false;
    bool skipped = false;    // not applicable to this potential
    std::string detail;
};

struct ValidateOptions {
    int k_max = 4;
    std::uint64_t seed = 1;
    int n_random = 50;       // random spectral parameters per identity
    double z_radius = 100.0;
    FloquetOptions ode;
};

struct ValidationReport {
    std::string potential;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// Deterministic invariant suite: every random draw comes from the seed.
ValidationReport validate_suite(const Potential& V, const ValidateOptions& o = {});

}  // namespace hill
