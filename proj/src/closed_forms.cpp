#include "permprof/closed_forms.hpp"

#include <cmath>

#include "permprof/errors.hpp"

namespace permprof {

namespace {
constexpr double pi = 3.14159265358979323846264338327950288;
}

// Recurrence psi(x+1) = psi(x) + 1/x pushes the argument past 20, where the
// truncated series below is accurate to ~1.6e-13.
double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma needs x > 0");
    double acc = 0.0;
    while (x < 20.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    return acc + std::log(x) - 0.5 * inv -
           inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

// psi'(x) = psi'(x+1) + 1/x^2, shifted past 50 for the shorter series.
double trigamma(double x) {
    if (!(x > 0.0)) throw DomainError("trigamma needs x > 0");
    double acc = 0.0;
    while (x < 50.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    return acc + inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 - inv2 / 30.0)));
}

double ewens_mean_cycles(double sigma, long n) {
    if (!(sigma > 0.0)) throw DomainError("ewens parameter must be > 0");
    if (n < 1) throw DomainError("n must be >= 1");
    return sigma * (digamma(static_cast<double>(n) + sigma) - digamma(sigma));
}

double ewens_var_cycles(double sigma, long n) {
    if (!(sigma > 0.0)) throw DomainError("ewens parameter must be > 0");
    if (n < 1) throw DomainError("n must be >= 1");
    const double nd = static_cast<double>(n);
    return sigma * sigma * (trigamma(nd + sigma) - trigamma(sigma)) +
           sigma * (digamma(nd + sigma) - digamma(sigma));
}

Rational ewens_k_cycle_mean(const Rational& sigma, long n, long k) {
    if (sigma <= 0) throw DomainError("ewens parameter must be > 0");
    if (k < 1 || k > n) throw DomainError("need 1 <= k <= n");
    const auto uk = static_cast<unsigned long>(k);
    return sigma / k * falling_factorial(Rational(n), uk) /
           falling_factorial(n + sigma - 1, uk);
}

AsymptoticEstimate ewens_k_cycle_mean_asymptotic(double sigma, long n, long k) {
    if (!(sigma > 0.0)) throw DomainError("ewens parameter must be > 0");
    if (k < 1 || k > n) throw DomainError("need 1 <= k <= n");
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    return {sigma / kd * (1.0 - (sigma - 1.0) * kd / nd), "O(n^-2)"};
}

double ewens_long_cycle_limit(double sigma, double alpha) {
    if (!(sigma > 0.0)) throw DomainError("ewens parameter must be > 0");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
    if (alpha == 1.0 && sigma < 1.0)
        throw DomainError("limit diverges at alpha = 1 for sigma < 1");
    return sigma * std::pow(1.0 - alpha, sigma - 1.0);
}

Rational parity_elements_in_k_cycles(Parity parity, long n, long k) {
    if (k < 1 || k > n) throw DomainError("need 1 <= k <= n");
    if (parity == Parity::even) {
        if (n % 2 != 0)
            throw ZeroMeasureError("no permutation of odd [n] has all cycle lengths even");
        if (k % 2 != 0) return 0;
        return make_rational(descending_step2_product(n, n - k + 2),
                             descending_step2_product(n - 1, n - k + 1));
    }
    if (k % 2 == 0) return 0;
    if (n % 2 == 0)
        return make_rational(descending_step2_product(n, n - k + 1),
                             descending_step2_product(n - 1, n - k));
    return make_rational(descending_step2_product(n - 1, n - k + 2),
                         descending_step2_product(n - 2, n - k + 1));
}

std::pair<Rational, BigInt> parity_count(Parity parity, long n) {
    if (n < 0) throw DomainError("n must be >= 0");
    BigInt total;
    if (parity == Parity::even) {
        if (n % 2 != 0) return {Rational(0), BigInt(0)};
        const BigInt d = double_factorial(n - 1);
        total = d * d;
    } else if (n % 2 == 0) {
        const BigInt d = double_factorial(n - 1);
        total = d * d;
    } else {
        total = double_factorial(n) * double_factorial(n - 2);
    }
    return {make_rational(total, factorial(static_cast<unsigned long>(n))), total};
}

std::pair<AsymptoticEstimate, AsymptoticEstimate> parity_asymptotics(Parity parity, long n) {
    if (n < 2) throw DomainError("n must be >= 2");
    if (parity == Parity::even) {
        if (n % 2 != 0) throw DomainError("even constraint needs even size");
        const double m = static_cast<double>(n) / 2.0;
        const double mean = 0.5 * std::log(m) + 0.5 * euler_gamma + std::log(2.0);
        return {{mean, "O(1/n)"}, {mean - pi * pi / 8.0, "O(1/n)"}};
    }
    const double nd = static_cast<double>(n);
    const double base = 0.5 * std::log(nd) + 0.5 * (euler_gamma + 3.0 * std::log(2.0));
    // Correction sign settled empirically against exact series values:
    // positive at even n, negative at odd n.
    const double corr = (euler_gamma + std::log(nd)) / (8.0 * nd);
    const double mean = base + (n % 2 == 0 ? corr : -corr);
    const double var =
        0.5 * std::log(nd) + (euler_gamma + 3.0 * std::log(2.0) - 4.0 * pi * pi) / 8.0;
    return {{mean, "O(log n/n^2)"}, {var, "O(log^2 n/n)"}};
}

std::vector<BigInt> even_cycle_count_pgf(long n2) {
    if (n2 < 2 || n2 % 2 != 0) throw DomainError("size must be even and >= 2");
    const long n = n2 / 2;
    std::vector<BigInt> poly{BigInt(0), BigInt(1)};  // u
    for (long j = 1; j < n; ++j) {
        std::vector<BigInt> next(poly.size() + 1, BigInt(0));
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] += 2 * j * poly[i];
        }
        poly = std::move(next);
    }
    const BigInt scale = double_factorial(2 * n - 1);
    for (auto& c : poly) c *= scale;
    return poly;
}

double bulk_profile_limit(double sigma, double gamma, double delta) {
    if (!(sigma > 0.0)) throw DomainError("limit parameter must be > 0");
    if (!(gamma >= 0.0 && delta >= gamma && delta <= 1.0))
        throw DomainError("need 0 <= gamma <= delta <= 1");
    return std::pow(1.0 - gamma, sigma) - std::pow(1.0 - delta, sigma);
}

AsymptoticEstimate parity_k_cycle_asymptotic(Parity parity, long n, long k) {
    if (k < 1 || n < 1) throw DomainError("need n, k >= 1");
    const double nd = static_cast<double>(n);
    if (parity == Parity::even) {
        if (n % 2 != 0 || k % 2 != 0) throw DomainError("even constraint needs even n and k");
        return {1.0 + static_cast<double>(k) / (2.0 * nd), "O(n^-2)"};
    }
    if (k % 2 == 0) throw DomainError("odd constraint needs odd k");
    const long shift = (n % 2 == 0) ? k + 1 : k - 1;
    return {1.0 + static_cast<double>(shift) / (2.0 * nd), "O(n^-2)"};
}

double even_bulk_scaling(long n, long k) {
    if (n % 2 != 0 || k % 2 != 0) throw DomainError("n and k must be even");
    if (k < 1 || k >= n) throw DomainError("need 0 < k/n < 1");
    return std::pow(1.0 - static_cast<double>(k) / static_cast<double>(n), -0.5);
}

Rational harmonic_number(long n) {
    Rational h = 0;
    for (long j = 1; j <= n; ++j) h += make_rational(1, j);
    return h;
}

Rational harmonic_number_2(long n) {
    Rational h = 0;
    for (long j = 1; j <= n; ++j) h += make_rational(1, j * j);
    return h;
}

}  // namespace permprof
