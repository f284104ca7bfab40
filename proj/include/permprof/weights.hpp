#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permprof/rational.hpp"

namespace permprof {

enum class WeightKind { ewens, even_only, odd_only, multiples_of, explicit_list };

/// How an explicit weight list continues past its last entry.
enum class TailRule { zero, repeat_last, cycle };

/// A sequence sigma_1, sigma_2, ... of nonnegative per-cycle-length weights.
/// The weight of a permutation is the product of sigma_k over its cycles.
class WeightSequence {
  public:
    static WeightSequence ewens(const Rational& sigma);
    static WeightSequence even_only();  // sigma_k = [k even]
    static WeightSequence odd_only();   // sigma_k = [k odd]
    static WeightSequence multiples_of(long a);
    static WeightSequence explicit_list(std::vector<Rational> values, TailRule tail,
                                        std::optional<Rational> mean = std::nullopt);

    WeightKind kind() const { return kind_; }
    TailRule tail() const { return tail_; }

    /// sigma_k for k >= 1.  Throws DomainError for k < 1.
    Rational sigma(long k) const;
    /// Same value as sigma(k), converted once and cached per instance.
    double sigma_d(long k) const;

    /// Ewens parameter; only valid for kind() == ewens.
    const Rational& ewens_parameter() const;
    /// Modulus a; only valid for kind() == multiples_of.
    long modulus() const { return modulus_; }
    /// Listed values; only valid for kind() == explicit_list.
    const std::vector<Rational>& explicit_values() const;

    /// Cesaro mean of the sequence when one is known: the Ewens parameter,
    /// 1/2 for the parity kinds, 1/a for multiples, or the declared mean of
    /// an explicit list.  Empty if no mean was declared.
    std::optional<Rational> mean() const;

    /// Grammar string this sequence round-trips through, e.g. "ewens:1/2".
    /// Explicit lists render as "explicit[v1,v2,...;tail]".
    std::string describe() const;

    bool operator==(const WeightSequence& other) const = default;

  private:
    WeightSequence() = default;

    WeightKind kind_ = WeightKind::ewens;
    Rational ewens_sigma_;
    long modulus_ = 0;
    std::vector<Rational> values_;
    TailRule tail_ = TailRule::zero;
    std::optional<Rational> declared_mean_;

    double ewens_sigma_d_ = 0.0;
    std::vector<double> values_d_;
};

/// Parses "ewens:<p>/<q>", "ewens:<int>", "even", "odd", "mod:<a>", or
/// "file:<path>".  Throws ParseError on malformed input, DomainError on
/// out-of-domain parameters (negative sigma, a < 1).
WeightSequence parse_weight_spec(std::string_view spec);

/// Reads a JSON weight file: {"sigma": [...], "tail": "...", "mean": ...}.
/// Entries are rationals as "p/q" strings or nonnegative integers.
WeightSequence load_weight_file(const std::string& path);

}  // namespace permprof
