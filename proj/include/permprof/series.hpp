#pragma once

#include <string>
#include <utility>
#include <vector>

#include "permprof/rational.hpp"
#include "permprof/weights.hpp"

namespace permprof {

enum class SeriesMode { exact, floating };

/// Normalization coefficients w(0..N) with w(n) = [z^n] exp(sum sigma_k z^k / k),
/// built by the recurrence n w(n) = sum_{k=1}^{n} sigma_k w(n-k).
/// The total weight over S_n is W(n) = n! w(n).
class WeightedSeries {
  public:
    static WeightedSeries compute(const WeightSequence& weights, long n_max, SeriesMode mode);

    const WeightSequence& weights() const { return weights_; }
    SeriesMode mode() const { return mode_; }
    long max_n() const { return n_max_; }

    /// Exact mode only.
    const Rational& w_exact(long n) const;
    /// Either mode; exact coefficients are rounded to nearest.
    double w(long n) const;

    /// E X_k = (sigma_k / k) w(n-k) / w(n), the mean number of k-cycles.
    Rational expected_k_cycles_exact(long n, long k) const;
    double expected_k_cycles(long n, long k) const;

    /// E Y_k = k E X_k = sigma_k w(n-k) / w(n).
    Rational expected_elements_in_k_cycles_exact(long n, long k) const;
    double expected_elements_in_k_cycles(long n, long k) const;

    /// E prod_i (X_{k_i})_{m_i} for distinct k_i (falling factorial moments).
    /// Zero when sum m_i k_i > n.
    Rational factorial_moment_exact(long n, const std::vector<std::pair<long, long>>& spec) const;
    double factorial_moment(long n, const std::vector<std::pair<long, long>>& spec) const;

    Rational total_cycles_mean_exact(long n) const;
    double total_cycles_mean(long n) const;

    Rational total_cycles_variance_exact(long n) const;
    double total_cycles_variance(long n) const;

    /// Probability that a uniformly random element of [n] lies in a cycle of
    /// length in [gamma n, delta n] (closed endpoints, k clamped to 1..n).
    Rational bulk_profile_exact(long n, double gamma, double delta) const;
    double bulk_profile(long n, double gamma, double delta) const;

    /// CSV rows "n,w_exact,w_float"; w_exact column empty in float mode.
    std::string to_csv() const;

  private:
    explicit WeightedSeries(WeightSequence weights) : weights_(std::move(weights)) {}

    void require_n(long n) const;
    void require_exact() const;
    void require_positive_mass(long n) const;

    WeightSequence weights_;
    SeriesMode mode_ = SeriesMode::exact;
    long n_max_ = 0;
    std::vector<Rational> exact_;        // exact mode
    std::vector<Rational> sigma_cache_;  // sigma_k for 1..N, exact mode
    std::vector<double> approx_;         // both modes
    std::vector<double> sigma_cache_d_;
};

/// Summation bounds for the bulk window: k from max(1, ceil(gamma n)) to
/// min(n, floor(delta n)), with a 1e-9 snap so gamma*n hitting an integer
/// up to float noise is treated as exact.
std::pair<long, long> bulk_window(long n, double gamma, double delta);

}  // namespace permprof
