#pragma once

#include <vector>

#include "permprof/permutation.hpp"
#include "permprof/rng.hpp"
#include "permprof/series.hpp"
#include "permprof/weights.hpp"

namespace permprof {

/// One draw from the variable-size Boltzmann measure: a permutation weighted
/// by w(pi) x^|pi| / |pi|!.
struct BoltzmannDraw {
    Permutation permutation;
    long size = 0;
    long cycle_count = 0;
};

/// Chinese-restaurant insertion: element j opens a new cycle with probability
/// sigma/(sigma + j - 1), otherwise lands after a uniform earlier element.
/// The result is Ewens(sigma)-distributed on S_n.
Permutation crp_sample(double sigma, long n, RandomStream& rng);

/// Recursive exact sampler for an arbitrary weight sequence: the cycle
/// through the smallest remaining label gets length k with probability
/// sigma_k w(m-k) / (m w(m)), its co-members and cyclic order uniform.
/// Cycle-length tables are built once from an exact-mode series.
class ExactWeightedSampler {
  public:
    ExactWeightedSampler(const WeightedSeries& series, long n);

    Permutation sample(RandomStream& rng) const;
    long n() const { return n_; }

  private:
    long n_;
    // cdf_[m] is the cumulative law of the anchor cycle length at m
    // remaining labels; empty for unreachable m (w(m) = 0).
    std::vector<std::vector<double>> cdf_;
};

/// Convenience wrapper building the table for a single draw.
Permutation exact_weighted_sample(const WeightedSeries& series, long n, RandomStream& rng);

/// Cycle-count law as a sum of independent Bernoullis; supports the Ewens
/// family (n terms, means sigma/(sigma+k-1)) and the all-even family
/// (n/2 terms, means 1/(2k-1)).
long bernoulli_count_sample(const WeightSequence& weights, long n, RandomStream& rng);

struct BoltzmannMoments {
    double mean_size = 0.0;
    double mean_cycles = 0.0;
    double var_cycles = 0.0;
};

/// E N = sum sigma_k x^k; mean and variance of the cycle count both equal
/// sum sigma_k x^k / k.  Closed forms for the built-in kinds, certified
/// partial sums (relative error <= 1e-12) for explicit lists.
BoltzmannMoments boltzmann_moments(const WeightSequence& weights, double x);

/// Poisson cycle-count sampler for the Boltzmann measure at parameter x.
/// Counts per length are independent Poisson(sigma_k x^k / k), realized by
/// one total Poisson draw plus i.i.d. lengths (superposition); lengths are
/// truncated at a cutoff K whose tail rate is certified below 1e-12, and a
/// Bernoulli draw on the tail mass triggers a retry with a larger cutoff.
class BoltzmannSampler {
  public:
    BoltzmannSampler(const WeightSequence& weights, double x);

    /// Full draw including the assembled uniform permutation.
    BoltzmannDraw sample(RandomStream& rng) const;

    /// Size and cycle count only; skips permutation assembly.
    std::pair<long, long> sample_counts(RandomStream& rng) const;

    double total_rate() const { return total_rate_; }
    double tail_bound() const { return tail_bound_; }

  private:
    explicit BoltzmannSampler(const WeightSequence& weights, double x, long cutoff);

    std::vector<long> draw_lengths(RandomStream& rng) const;

    WeightSequence weights_;
    double x_;
    long cutoff_;
    std::vector<double> cum_rate_;  // cum_rate_[k-1] = sum_{j<=k} sigma_j x^j / j
    double total_rate_;
    double tail_bound_;
};

BoltzmannDraw boltzmann_sample(const WeightSequence& weights, double x, RandomStream& rng);

/// Assembles a uniformly random permutation of {1..N} with the given cycle
/// lengths (N = their sum), by consuming a uniformly shuffled label stream
/// cycle by cycle in decreasing length.
Permutation assemble_uniform_permutation(std::vector<long> lengths, RandomStream& rng);

/// Bisection solve of mean_size(x) = mu on (0, 1) to relative error 1e-9.
double calibrate_x(const WeightSequence& weights, double mu);

}  // namespace permprof
