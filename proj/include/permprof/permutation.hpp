#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "permprof/rational.hpp"
#include "permprof/weights.hpp"

namespace permprof {

/// Bijection on {1..n} in one-line notation; image[i-1] is where i maps.
class Permutation {
  public:
    Permutation() = default;  // empty permutation, n = 0

    static Permutation identity(long n);
    /// Validates that image is a bijection on {1..n}.
    static Permutation from_image(std::vector<long> image);

    long size() const { return static_cast<long>(image_.size()); }
    long apply(long i) const { return image_[static_cast<size_t>(i - 1)]; }
    const std::vector<long>& image() const { return image_; }

    /// Cycles in increasing order of their smallest element, each cycle
    /// listed starting from that element.
    std::vector<std::vector<long>> cycles() const;

    /// "(1 4 2)(3)(5 6)"; the empty permutation renders as "()".
    std::string to_cycle_string() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

  private:
    std::vector<long> image_;
};

/// Multiset of cycle lengths as length -> multiplicity, zero counts omitted.
class CycleType {
  public:
    CycleType() = default;

    static CycleType from_counts(std::map<long, long> counts);

    const std::map<long, long>& counts() const { return counts_; }
    long count_of(long k) const;
    long n() const { return n_; }
    long total_cycles() const;

    /// Number of permutations of [n] with this type: n! / prod(k^c_k c_k!).
    BigInt permutation_count() const;

    /// prod sigma_k^{c_k}; 1 for the empty type.
    Rational weight(const WeightSequence& weights) const;

    /// "1^2 3^1"; the empty type renders as "-".
    std::string to_string() const;

    bool operator==(const CycleType&) const = default;
    auto operator<=>(const CycleType&) const = default;

  private:
    std::map<long, long> counts_;
    long n_ = 0;
};

CycleType cycle_type(const Permutation& p);

}  // namespace permprof
