#pragma once

#include <vector>

namespace permprof {

struct ChiSquareResult {
    double statistic = 0.0;
    long df = 0;
    double p_value = 1.0;
};

/// Pearson goodness-of-fit against fully specified expected counts
/// (df = cells - 1).  Expected counts should all be >= ~5; callers control
/// cell layout.
ChiSquareResult chi_square_gof(const std::vector<long>& observed,
                               const std::vector<double>& expected);

/// Mean, unbiased variance, and standard error of the mean.
struct SampleSummary {
    long count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
};

SampleSummary summarize(const std::vector<double>& values);

}  // namespace permprof
