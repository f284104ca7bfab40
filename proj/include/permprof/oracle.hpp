#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "permprof/permutation.hpp"
#include "permprof/rational.hpp"
#include "permprof/weights.hpp"

namespace permprof {

/// Hard cap on exhaustive enumeration; ground truth stays brute-force.
inline constexpr long oracle_default_cap = 9;

/// Exact measure of S_n under a weight sequence, tabulated by cycle type.
struct MeasureTable {
    struct Entry {
        BigInt count;          // permutations of this type: n!/prod(k^c_k c_k!)
        Rational weight;       // weight of each of them
        Rational probability;  // count * weight / total_weight (0 if massless)
    };

    long n = 0;
    std::map<CycleType, Entry> entries;
    Rational total_weight;  // sum count * weight = n! w(n)

    /// CSV rows "cycle_type,count,weight,probability".
    std::string to_csv() const;
};

/// Visits every integer partition of n as a cycle-type count map.
void for_each_cycle_type(long n, const std::function<void(const CycleType&)>& visit);

/// Full measure table by direct enumeration.  Throws CapExceeded above cap.
MeasureTable enumerate_measure(const WeightSequence& weights, long n,
                               long cap = oracle_default_cap);

/// sum over types of probability * functional(type).  Throws ZeroMeasure
/// when the whole of S_n has weight zero.
Rational oracle_expectation(const WeightSequence& weights, long n,
                            const std::function<Rational(const CycleType&)>& functional,
                            long cap = oracle_default_cap);

/// Coefficient c of the result = total weight of permutations of [n] with
/// exactly c cycles (an unnormalized counting polynomial in u).
std::vector<Rational> cycle_count_polynomial(const WeightSequence& weights, long n,
                                             long cap = oracle_default_cap);

/// All n! permutations of [n]; n <= 6 (sampler validation at the level of
/// individual permutations, not just types).
std::vector<Permutation> all_permutations(long n);

/// Exact probability of each permutation of [n]; same order as
/// all_permutations.  Throws ZeroMeasure if the total weight vanishes.
std::vector<std::pair<Permutation, Rational>> permutation_measure(const WeightSequence& weights,
                                                                  long n);

}  // namespace permprof
