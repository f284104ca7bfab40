#pragma once

#include <cstdint>
#include <vector>

namespace permprof {

/// Addresses one reproducible random stream.  Replicate r of a Monte Carlo
/// run uses stream_index = r under a fixed master_seed, so results are
/// independent of scheduling and re-runnable stream by stream.
struct RngHandle {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

/// xoshiro256++ stream.  The four state words are drawn from a splitmix64
/// sequence keyed by hashing (master_seed, stream_index); identical handles
/// reproduce identical output bit for bit, distinct stream indices give
/// decorrelated states.
class RandomStream {
  public:
    explicit RandomStream(RngHandle handle);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform_double();

    /// Uniform on {0, 1, ..., bound-1}; bound >= 1.  Unbiased (Lemire).
    std::uint64_t uniform_below(std::uint64_t bound);

    bool bernoulli(double p);

    /// Exact Poisson(lambda) by counting unit-exponential arrivals; cost
    /// grows linearly with lambda.
    long poisson(double lambda);

    /// Uniformly shuffles the first `prefix` positions against the whole
    /// vector (partial Fisher-Yates); prefix = size gives a full shuffle.
    void shuffle_prefix(std::vector<long>& values, std::size_t prefix);

  private:
    std::uint64_t state_[4];
};

}  // namespace permprof
