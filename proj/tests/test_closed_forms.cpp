#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "permprof/closed_forms.hpp"
#include "permprof/errors.hpp"
#include "permprof/series.hpp"
#include "permprof/weights.hpp"

using namespace permprof;

namespace {

constexpr double pi = 3.14159265358979323846;

// Durand-Kerner root finder; enough for the low-degree count polynomials.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
    const size_t deg = coeffs.size() - 1;
    const double lead = coeffs.back();
    std::vector<std::complex<double>> r(deg);
    for (size_t i = 0; i < deg; ++i)
        r[i] = std::pow(std::complex<double>(0.4, 0.9), static_cast<double>(i + 1));
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = 0;
        for (size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (size_t i = 0; i < deg; ++i) {
            std::complex<double> denom = lead;
            for (size_t j = 0; j < deg; ++j)
                if (j != i) denom *= r[i] - r[j];
            const std::complex<double> step = eval(r[i]) / denom;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-13) break;
    }
    return r;
}

}  // namespace

TEST_CASE("digamma reference values") {
    CHECK(digamma(1.0) == doctest::Approx(-euler_gamma).epsilon(1e-12));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - euler_gamma).epsilon(1e-12));
    CHECK(digamma(0.5) ==
          doctest::Approx(-euler_gamma - 2.0 * std::log(2.0)).epsilon(1e-12));
    // psi(n+1) = H_n - gamma_E, checked against the exact harmonic number.
    CHECK(digamma(11.0) ==
          doctest::Approx(to_double_nearest(harmonic_number(10)) - euler_gamma).epsilon(1e-12));
}

TEST_CASE("digamma recurrence") {
    for (double x : {0.3, 1.0, 3.7, 15.2, 40.0})
        CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-12));
    CHECK_THROWS_AS(digamma(0.0), DomainError);
    CHECK_THROWS_AS(digamma(-1.5), DomainError);
}

TEST_CASE("trigamma reference values and recurrence") {
    CHECK(trigamma(1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-12));
    CHECK(trigamma(0.5) == doctest::Approx(pi * pi / 2.0).epsilon(1e-12));
    CHECK(trigamma(5.0) ==
          doctest::Approx(pi * pi / 6.0 - to_double_nearest(harmonic_number_2(4))).epsilon(1e-12));
    for (double x : {0.4, 2.0, 9.3, 33.0})
        CHECK(trigamma(x + 1.0) == doctest::Approx(trigamma(x) - 1.0 / (x * x)).epsilon(1e-12));
    CHECK_THROWS_AS(trigamma(0.0), DomainError);
}

TEST_CASE("ewens cycle count moments vs exact series") {
    CHECK(ewens_mean_cycles(1.0, 5) ==
          doctest::Approx(to_double_nearest(harmonic_number(5))).epsilon(1e-12));
    // Uniform S_2: mean 3/2, second moment 5/2, variance 1/4.
    CHECK(ewens_var_cycles(1.0, 2) == doctest::Approx(0.25).epsilon(1e-12));

    const WeightSequence half = parse_weight_spec("ewens:1/2");
    const WeightedSeries s = WeightedSeries::compute(half, 100, SeriesMode::exact);
    for (long n : {10L, 100L}) {
        CHECK(std::abs(ewens_mean_cycles(0.5, n) -
                       to_double_nearest(s.total_cycles_mean_exact(n))) < 1e-9);
        CHECK(std::abs(ewens_var_cycles(0.5, n) -
                       to_double_nearest(s.total_cycles_variance_exact(n))) < 1e-9);
    }
}

TEST_CASE("ewens per-length mean: rational identity and expansion") {
    CHECK(ewens_k_cycle_mean(make_rational(1, 2), 4, 2) == make_rational(12, 35));
    const WeightSequence two = parse_weight_spec("ewens:2");
    const WeightedSeries s = WeightedSeries::compute(two, 12, SeriesMode::exact);
    for (long n = 1; n <= 12; ++n)
        for (long k = 1; k <= n; ++k)
            CHECK(ewens_k_cycle_mean(Rational(2), n, k) == s.expected_k_cycles_exact(n, k));

    const AsymptoticEstimate a = ewens_k_cycle_mean_asymptotic(2.0, 1000, 3);
    CHECK(a.claimed_error_order == "O(n^-2)");
    CHECK(std::abs(a.value - to_double_nearest(ewens_k_cycle_mean(Rational(2), 1000, 3))) <
          1e-4);
}

TEST_CASE("long cycle limit") {
    CHECK(ewens_long_cycle_limit(2.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ewens_long_cycle_limit(1.0, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ewens_long_cycle_limit(0.5, 0.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    // sigma < 1 diverges at alpha -> 1; alpha = 0 is outside the window.
    CHECK_THROWS_AS(ewens_long_cycle_limit(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(ewens_long_cycle_limit(0.5, 0.0), DomainError);
    CHECK(ewens_long_cycle_limit(2.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("parity per-length means") {
    CHECK(parity_elements_in_k_cycles(Parity::even, 10, 4) == make_rational(80, 63));
    CHECK(parity_elements_in_k_cycles(Parity::even, 10, 10) == make_rational(256, 63));
    CHECK(parity_elements_in_k_cycles(Parity::odd, 10, 3) == make_rational(80, 63));
    CHECK(parity_elements_in_k_cycles(Parity::even, 10, 3) == Rational(0));
    CHECK(parity_elements_in_k_cycles(Parity::odd, 10, 4) == Rational(0));
    CHECK(parity_elements_in_k_cycles(Parity::odd, 9, 9) == make_rational(128, 35));
    CHECK_THROWS_AS(parity_elements_in_k_cycles(Parity::even, 10, 11), DomainError);
    CHECK_THROWS_AS(parity_elements_in_k_cycles(Parity::even, 10, 0), DomainError);
    CHECK_THROWS_AS(parity_elements_in_k_cycles(Parity::even, 7, 2), ZeroMeasureError);
}

TEST_CASE("parity normalization counts") {
    CHECK(parity_count(Parity::even, 4) == std::pair<Rational, BigInt>{make_rational(3, 8), 9});
    CHECK(parity_count(Parity::even, 7).second == 0);
    CHECK(parity_count(Parity::odd, 4).second == 9);
    CHECK(parity_count(Parity::odd, 5).second == 45);
    CHECK(parity_count(Parity::odd, 5).first == make_rational(3, 8));
    CHECK(parity_count(Parity::even, 0) == std::pair<Rational, BigInt>{1, 1});

    // Count = n! w(n) against the series, both parities, n <= 12.
    for (const Parity parity : {Parity::even, Parity::odd}) {
        const char* spec = parity == Parity::even ? "even" : "odd";
        const WeightedSeries s =
            WeightedSeries::compute(parse_weight_spec(spec), 12, SeriesMode::exact);
        for (long n = 0; n <= 12; ++n) {
            const auto [w, count] = parity_count(parity, n);
            CHECK(w == s.w_exact(n));
            CHECK(Rational(count) == factorial(n) * s.w_exact(n));
        }
    }
}

TEST_CASE("parity cycle count expansions are close at moderate n") {
    const WeightedSeries even =
        WeightedSeries::compute(parse_weight_spec("even"), 100, SeriesMode::exact);
    const auto [mean_est, var_est] = parity_asymptotics(Parity::even, 100);
    CHECK(mean_est.claimed_error_order == "O(1/n)");
    const double mean_exact = to_double_nearest(even.total_cycles_mean_exact(100));
    const double var_exact = to_double_nearest(even.total_cycles_variance_exact(100));
    CHECK(std::abs(mean_est.value - mean_exact) < 0.02);
    CHECK(std::abs(var_est.value - var_exact) < 0.05);

    const WeightedSeries odd =
        WeightedSeries::compute(parse_weight_spec("odd"), 101, SeriesMode::exact);
    for (long n : {100L, 101L}) {
        const auto [om, ov] = parity_asymptotics(Parity::odd, n);
        CHECK(std::abs(om.value - to_double_nearest(odd.total_cycles_mean_exact(n))) < 0.02);
        (void)ov;  // the odd variance constant is exercised by the acceptance gate
    }
    CHECK_THROWS_AS(parity_asymptotics(Parity::even, 101), DomainError);
}

TEST_CASE("even-case count polynomial") {
    CHECK(even_cycle_count_pgf(4) == std::vector<BigInt>{0, 6, 3});
    CHECK(even_cycle_count_pgf(6) == std::vector<BigInt>{0, 120, 90, 15});
    BigInt total = 0;
    for (const BigInt& c : even_cycle_count_pgf(6)) total += c;
    CHECK(total == 225);  // (5!!)^2
    CHECK_THROWS_AS(even_cycle_count_pgf(5), DomainError);

    // All roots of p_{2n}(u)/u are real and negative (the even numbers
    // -2, ..., -(2n-2)), so the cycle count is a sum of Bernoullis.
    const auto coeffs = even_cycle_count_pgf(8);
    std::vector<double> c(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i)
        c[i - 1] = to_double_nearest(Rational(coeffs[i]));
    for (const auto& root : poly_roots(c)) {
        CHECK(std::abs(root.imag()) < 1e-8);
        CHECK(root.real() < 1e-8);
    }
}

TEST_CASE("even-case Bernoulli decomposition") {
    // mean = sum 1/(2k-1), variance = mean - sum 1/(2k-1)^2, exactly.
    const WeightedSeries even =
        WeightedSeries::compute(parse_weight_spec("even"), 12, SeriesMode::exact);
    for (long n2 = 2; n2 <= 12; n2 += 2) {
        Rational mean = 0, sq = 0;
        for (long k = 1; k <= n2 / 2; ++k) {
            mean += make_rational(1, 2 * k - 1);
            sq += make_rational(1, (2 * k - 1) * (2 * k - 1));
        }
        CHECK(even.total_cycles_mean_exact(n2) == mean);
        CHECK(even.total_cycles_variance_exact(n2) == mean - sq);
    }
}

TEST_CASE("bulk profile limit") {
    CHECK(bulk_profile_limit(1.0, 0.2, 0.7) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bulk_profile_limit(0.5, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bulk_profile_limit(0.5, 0.19, 0.51) ==
          doctest::Approx(std::sqrt(0.81) - std::sqrt(0.49)).epsilon(1e-14));
    CHECK(bulk_profile_limit(2.0, 0.0, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
    // Additive over adjacent windows.
    const double whole = bulk_profile_limit(0.7, 0.1, 0.9);
    const double split = bulk_profile_limit(0.7, 0.1, 0.4) + bulk_profile_limit(0.7, 0.4, 0.9);
    CHECK(std::abs(whole - split) < 1e-14);
    CHECK_THROWS_AS(bulk_profile_limit(1.0, -0.1, 0.5), DomainError);
    CHECK_THROWS_AS(bulk_profile_limit(1.0, 0.6, 0.5), DomainError);
}

TEST_CASE("fixed-length parity corrections") {
    CHECK(parity_k_cycle_asymptotic(Parity::even, 10, 4).value ==
          doctest::Approx(1.2).epsilon(1e-15));
    CHECK(parity_k_cycle_asymptotic(Parity::odd, 10, 3).value ==
          doctest::Approx(1.2).epsilon(1e-15));
    CHECK(parity_k_cycle_asymptotic(Parity::odd, 11, 3).value ==
          doctest::Approx(1.0 + 2.0 / 22.0).epsilon(1e-15));
    CHECK_THROWS_AS(parity_k_cycle_asymptotic(Parity::even, 9, 2), DomainError);
    CHECK_THROWS_AS(parity_k_cycle_asymptotic(Parity::even, 10, 3), DomainError);
    CHECK_THROWS_AS(parity_k_cycle_asymptotic(Parity::odd, 10, 4), DomainError);

    // The n^-2 claim, checked by doubling n at fixed k = 4.
    const Rational exact100 = parity_elements_in_k_cycles(Parity::even, 100, 4);
    const double err100 =
        std::abs(to_double_nearest(exact100) - parity_k_cycle_asymptotic(Parity::even, 100, 4).value);
    const Rational exact400 = parity_elements_in_k_cycles(Parity::even, 400, 4);
    const double err400 =
        std::abs(to_double_nearest(exact400) - parity_k_cycle_asymptotic(Parity::even, 400, 4).value);
    CHECK(err400 < err100 / 8.0);  // at least cubic-looking locally, n^-2 claimed
}

TEST_CASE("uniform scaling of the even-case profile") {
    CHECK(even_bulk_scaling(4, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(even_bulk_scaling(9, 2), DomainError);
    CHECK_THROWS_AS(even_bulk_scaling(10, 3), DomainError);
    CHECK_THROWS_AS(even_bulk_scaling(10, 10), DomainError);
    // Two-percent agreement with the exact ratio already at n = 100, k = 64.
    const double exact =
        to_double_nearest(parity_elements_in_k_cycles(Parity::even, 100, 64));
    CHECK(std::abs(even_bulk_scaling(100, 64) - exact) / exact < 0.02);
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic_number(0) == Rational(0));
    CHECK(harmonic_number(5) == make_rational(137, 60));
    CHECK(harmonic_number(10) == make_rational(7381, 2520));
    CHECK(harmonic_number_2(3) == make_rational(49, 36));
}
