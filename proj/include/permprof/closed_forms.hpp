#pragma once

#include <string>
#include <utility>
#include <vector>

#include "permprof/rational.hpp"

namespace permprof {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// A truncated-series value together with the order of the neglected terms.
struct AsymptoticEstimate {
    double value = 0.0;
    std::string claimed_error_order;
};

enum class Parity { even, odd };

/// psi(x) = Gamma'(x)/Gamma(x), absolute error <= 1e-12 for x > 0.
double digamma(double x);

/// psi'(x), absolute error <= 1e-12 for x > 0.
double trigamma(double x);

/// Mean cycle count under the Ewens(sigma) measure on S_n:
/// sigma (psi(n + sigma) - psi(sigma)) = sum_{k=1}^n sigma/(sigma + k - 1).
double ewens_mean_cycles(double sigma, long n);

/// Cycle-count variance under Ewens(sigma):
/// sigma^2 (psi'(n + sigma) - psi'(sigma)) + sigma (psi(n + sigma) - psi(sigma)).
double ewens_var_cycles(double sigma, long n);

/// E X_k under Ewens(sigma), exactly: (sigma/k) (n)_k / (n + sigma - 1)_k.
Rational ewens_k_cycle_mean(const Rational& sigma, long n, long k);

/// Two-term expansion (sigma/k)(1 - (sigma-1)k/n) of the same mean.
AsymptoticEstimate ewens_k_cycle_mean_asymptotic(double sigma, long n, long k);

/// Limit of E Y_{alpha n} as n grows: sigma (1 - alpha)^(sigma - 1).
double ewens_long_cycle_limit(double sigma, double alpha);

/// E Y_k for the all-even / all-odd cycle measures, by the exact product
/// formulas; 0 when k has the wrong parity.
Rational parity_elements_in_k_cycles(Parity parity, long n, long k);

/// Normalization of the parity-constrained measures: w(n) and W(n) = n! w(n).
/// Even constraint on odd n gives (0, 0).
std::pair<Rational, BigInt> parity_count(Parity parity, long n);

/// Truncated mean/variance expansions of the parity-constrained cycle count.
/// Even parity expects the actual permutation size n2 = 2n.
std::pair<AsymptoticEstimate, AsymptoticEstimate> parity_asymptotics(Parity parity, long n);

/// Coefficients (index = cycle count) of u(u+2)(u+4)...(u+2n-2) * (2n-1)!!,
/// the counting polynomial of all-even-cycle permutations of [2n].
std::vector<BigInt> even_cycle_count_pgf(long n2);

/// Limiting bulk profile: (1-gamma)^sigma - (1-delta)^sigma.
double bulk_profile_limit(double sigma, double gamma, double delta);

/// Leading correction 1 + c/(2n) to E Y_k at fixed k under a parity constraint.
AsymptoticEstimate parity_k_cycle_asymptotic(Parity parity, long n, long k);

/// (1 - k/n)^(-1/2), the uniform scaling of E Y_k for all-even cycles.
double even_bulk_scaling(long n, long k);

/// H_n and H_n^(2) as exact rationals (test and report support).
Rational harmonic_number(long n);
Rational harmonic_number_2(long n);

}  // namespace permprof
