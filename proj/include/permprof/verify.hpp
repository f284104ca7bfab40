#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace permprof {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // failure explanation or short value summary
};

struct VerifyOptions {
    long n_max = 8;           // exhaustive-enumeration depth (<= 9)
    long reps = 200000;       // Monte Carlo draws per statistical check
    std::uint64_t seed = 0;   // master seed for all sampler checks
};

/// Full invariant suite: oracle equivalence, closed-form consistency,
/// recurrence and completeness identities, polynomial identities, and
/// seeded sampler goodness-of-fit tests at significance 1e-3.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace permprof
