#include "permprof/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "permprof/closed_forms.hpp"
#include "permprof/errors.hpp"
#include "permprof/oracle.hpp"
#include "permprof/samplers.hpp"
#include "permprof/series.hpp"
#include "permprof/stat_report.hpp"
#include "permprof/stats_tests.hpp"
#include "permprof/weights.hpp"

namespace permprof {

namespace {

constexpr double chi_square_alpha = 1e-3;

struct Suite {
    VerifyOptions opt;
    std::vector<CheckResult> results;

    void check(const std::string& name, const std::function<void()>& body) {
        CheckResult r;
        r.name = name;
        try {
            body();
            r.pass = true;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
};

struct CheckFailure : Error {
    explicit CheckFailure(const std::string& what) : Error(what) {}
};

void require(bool cond, const std::string& what) {
    if (!cond) throw CheckFailure(what);
}

void require_close(double a, double b, double tol, const std::string& what) {
    if (!(std::abs(a - b) <= tol))
        throw CheckFailure(what + ": " + format_double17(a) + " vs " + format_double17(b));
}

std::vector<std::pair<std::string, WeightSequence>> builtin_kinds() {
    return {{"ewens:1/2", WeightSequence::ewens(make_rational(1, 2))},
            {"ewens:1", WeightSequence::ewens(Rational(1))},
            {"ewens:2", WeightSequence::ewens(Rational(2))},
            {"ewens:5/2", WeightSequence::ewens(make_rational(5, 2))},
            {"even", WeightSequence::even_only()},
            {"odd", WeightSequence::odd_only()},
            {"mod:3", WeightSequence::multiples_of(3)}};
}

Rational poly_mean(const std::vector<Rational>& coeffs) {
    Rational total = 0, first = 0;
    for (size_t c = 0; c < coeffs.size(); ++c) {
        total += coeffs[c];
        first += Rational(static_cast<long>(c)) * coeffs[c];
    }
    return first / total;
}

Rational poly_variance(const std::vector<Rational>& coeffs) {
    Rational total = 0, first = 0, second = 0;
    for (size_t c = 0; c < coeffs.size(); ++c) {
        const auto cl = Rational(static_cast<long>(c));
        total += coeffs[c];
        first += cl * coeffs[c];
        second += cl * cl * coeffs[c];
    }
    const Rational mean = first / total;
    return second / total - mean * mean;
}

// ---- exact suites ---------------------------------------------------------

void add_oracle_equivalence(Suite& s) {
    for (const auto& [name, w] : builtin_kinds()) {
        const long n_max = s.opt.n_max;
        const WeightedSeries series = WeightedSeries::compute(w, n_max, SeriesMode::exact);

        s.check("oracle/total-weight/" + name, [&, &w = w] {
            for (long n = 0; n <= n_max; ++n) {
                const MeasureTable t = enumerate_measure(w, n);
                require(t.total_weight ==
                            factorial(static_cast<unsigned long>(n)) * series.w_exact(n),
                        "total weight mismatch at n = " + std::to_string(n));
                BigInt perms = 0;
                for (const auto& [type, e] : t.entries) perms += e.count;
                require(perms == factorial(static_cast<unsigned long>(n)),
                        "multiplicities do not cover S_n at n = " + std::to_string(n));
            }
        });

        s.check("oracle/k-cycle-means/" + name, [&, &w = w] {
            for (long n = 1; n <= n_max; ++n) {
                if (series.w_exact(n) == 0) continue;
                for (long k = 1; k <= n; ++k) {
                    const Rational lhs = series.expected_k_cycles_exact(n, k);
                    const Rational rhs = oracle_expectation(
                        w, n, [&](const CycleType& t) { return Rational(t.count_of(k)); });
                    require(lhs == rhs, "E X_k mismatch at n = " + std::to_string(n) +
                                            ", k = " + std::to_string(k));
                }
            }
        });

        s.check("oracle/mean-variance/" + name, [&, &w = w] {
            for (long n = 1; n <= n_max; ++n) {
                if (series.w_exact(n) == 0) continue;
                const Rational mean = oracle_expectation(
                    w, n, [](const CycleType& t) { return Rational(t.total_cycles()); });
                const Rational second = oracle_expectation(w, n, [](const CycleType& t) {
                    const long c = t.total_cycles();
                    return Rational(c * c);
                });
                require(series.total_cycles_mean_exact(n) == mean,
                        "mean mismatch at n = " + std::to_string(n));
                require(series.total_cycles_variance_exact(n) == second - mean * mean,
                        "variance mismatch at n = " + std::to_string(n));
            }
        });

        s.check("oracle/bulk-profile/" + name, [&, &w = w] {
            const std::vector<std::pair<double, double>> windows = {
                {0.0, 1.0}, {0.3, 0.7}, {0.5, 1.0}};
            for (long n = 1; n <= n_max; ++n) {
                if (series.w_exact(n) == 0) continue;
                for (const auto& [g, d] : windows) {
                    const auto [lo, hi] = bulk_window(n, g, d);
                    const Rational lhs = series.bulk_profile_exact(n, g, d);
                    const Rational rhs =
                        oracle_expectation(w, n, [&](const CycleType& t) -> Rational {
                            Rational in_range = 0;
                            for (const auto& [k, ck] : t.counts())
                                if (k >= lo && k <= hi) in_range += Rational(k) * ck;
                            return in_range / n;
                        });
                    require(lhs == rhs, "profile mismatch at n = " + std::to_string(n));
                }
            }
        });

        s.check("oracle/count-polynomial/" + name, [&, &w = w] {
            for (long n = 1; n <= n_max; ++n) {
                const auto poly = cycle_count_polynomial(w, n);
                Rational total = 0;
                for (const auto& c : poly) total += c;
                require(total == factorial(static_cast<unsigned long>(n)) * series.w_exact(n),
                        "polynomial total mismatch at n = " + std::to_string(n));
                if (series.w_exact(n) == 0) continue;
                require(poly_mean(poly) == series.total_cycles_mean_exact(n),
                        "polynomial mean mismatch at n = " + std::to_string(n));
                require(poly_variance(poly) == series.total_cycles_variance_exact(n),
                        "polynomial variance mismatch at n = " + std::to_string(n));
            }
        });

        s.check("series/completeness/" + name, [&] {
            for (long n = 1; n <= n_max; ++n) {
                if (series.w_exact(n) == 0) continue;
                Rational acc = 0;
                for (long k = 1; k <= n; ++k)
                    acc += Rational(k) * series.expected_k_cycles_exact(n, k);
                require(acc == n, "element count incomplete at n = " + std::to_string(n));
            }
        });
    }
}

void add_series_checks(Suite& s) {
    s.check("series/float-recurrence-residual", [&] {
        for (const auto& spec : {"ewens:1/2", "even"}) {
            const WeightSequence w = parse_weight_spec(spec);
            const WeightedSeries f = WeightedSeries::compute(w, 2000, SeriesMode::floating);
            for (long n : {1L, 7L, 100L, 1999L, 2000L}) {
                double rhs = 0.0;
                for (long k = 1; k <= n; ++k) rhs += w.sigma_d(k) * f.w(n - k);
                const double lhs = static_cast<double>(n) * f.w(n);
                require(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), 1.0),
                        std::string(spec) + ": residual too large at n = " + std::to_string(n));
            }
        }
    });

    s.check("series/exact-float-agreement", [&] {
        for (const auto& [name, w] : builtin_kinds()) {
            const WeightedSeries e = WeightedSeries::compute(w, 50, SeriesMode::exact);
            const WeightedSeries f = WeightedSeries::compute(w, 50, SeriesMode::floating);
            for (long n = 0; n <= 50; ++n)
                require(std::abs(e.w(n) - f.w(n)) <= 1e-12 * std::max(std::abs(e.w(n)), 1e-300),
                        name + ": modes disagree at n = " + std::to_string(n));
        }
    });

    s.check("series/zero-measure-signalling", [&] {
        const WeightedSeries even = WeightedSeries::compute(WeightSequence::even_only(), 7,
                                                            SeriesMode::exact);
        require(even.w_exact(7) == 0, "odd coefficient should vanish");
        try {
            even.total_cycles_mean_exact(7);
            require(false, "expected ZeroMeasure");
        } catch (const ZeroMeasureError&) {
        }
    });

    s.check("series/ewens-specialization", [&] {
        for (const auto& sigma : {make_rational(1, 2), Rational(2)}) {
            const WeightedSeries f =
                WeightedSeries::compute(WeightSequence::ewens(sigma), 8, SeriesMode::exact);
            for (long n = 1; n <= 8; ++n)
                for (long k = 1; k <= n; ++k)
                    require(f.expected_k_cycles_exact(n, k) == ewens_k_cycle_mean(sigma, n, k),
                            "falling-power identity fails at n = " + std::to_string(n));
        }
    });
}

void add_closed_form_checks(Suite& s) {
    s.check("closed/digamma-values", [&] {
        require_close(digamma(1.0), -euler_gamma, 1e-12, "psi(1)");
        require_close(digamma(2.0), 1.0 - euler_gamma, 1e-12, "psi(2)");
        const double h10 = to_double_nearest(harmonic_number(10));
        require_close(digamma(11.0), h10 - euler_gamma, 1e-12, "psi(11)");
    });

    s.check("closed/digamma-recurrence", [&] {
        for (double x : {0.3, 1.0, 5.0, 12.5, 20.0, 100.0})
            require_close(digamma(x + 1.0) - digamma(x), 1.0 / x, 1e-12,
                          "recurrence at x = " + format_double17(x));
    });

    s.check("closed/trigamma-values", [&] {
        const double pi2_6 = 1.6449340668482264365;
        require_close(trigamma(1.0), pi2_6, 1e-12, "psi'(1)");
        double partial = 0.0;
        for (long j = 1; j <= 100; ++j) partial += 1.0 / static_cast<double>(j * j);
        require_close(trigamma(101.0), pi2_6 - partial, 1e-12, "psi'(101)");
    });

    s.check("closed/trigamma-recurrence", [&] {
        for (double x : {1.0, 5.0, 20.0, 75.0})
            require_close(trigamma(x) - trigamma(x + 1.0), 1.0 / (x * x), 1e-12,
                          "recurrence at x = " + format_double17(x));
    });

    s.check("closed/ewens-mean-var-vs-exact", [&] {
        const WeightSequence w = WeightSequence::ewens(make_rational(1, 2));
        const WeightedSeries f = WeightedSeries::compute(w, 100, SeriesMode::exact);
        for (long n : {10L, 100L}) {
            require_close(ewens_mean_cycles(0.5, n),
                          to_double_nearest(f.total_cycles_mean_exact(n)), 1e-9,
                          "mean at n = " + std::to_string(n));
            require_close(ewens_var_cycles(0.5, n),
                          to_double_nearest(f.total_cycles_variance_exact(n)), 1e-9,
                          "variance at n = " + std::to_string(n));
        }
    });

    s.check("closed/ewens-bernoulli-forms", [&] {
        for (double sigma : {0.5, 1.0, 2.5}) {
            double mean = 0.0, var = 0.0;
            const long n = 137;
            for (long k = 1; k <= n; ++k) {
                const double p = sigma / (sigma + static_cast<double>(k - 1));
                mean += p;
                var += p * (1.0 - p);
            }
            require_close(ewens_mean_cycles(sigma, n), mean, 1e-9, "Bernoulli mean form");
            require_close(ewens_var_cycles(sigma, n), var, 1e-9, "Bernoulli variance form");
        }
    });

    s.check("closed/parity-formulas-vs-oracle", [&] {
        for (long n = 1; n <= s.opt.n_max; ++n) {
            for (long k = 1; k <= n; ++k) {
                if (n % 2 == 0) {
                    const Rational lhs = parity_elements_in_k_cycles(Parity::even, n, k);
                    const Rational rhs =
                        oracle_expectation(WeightSequence::even_only(), n,
                                           [&](const CycleType& t) -> Rational {
                                               return Rational(k) * t.count_of(k);
                                           });
                    require(lhs == rhs, "even E Y_k mismatch at n = " + std::to_string(n) +
                                            ", k = " + std::to_string(k));
                }
                const Rational lhs = parity_elements_in_k_cycles(Parity::odd, n, k);
                const Rational rhs = oracle_expectation(
                    WeightSequence::odd_only(), n,
                    [&](const CycleType& t) -> Rational { return Rational(k) * t.count_of(k); });
                require(lhs == rhs, "odd E Y_k mismatch at n = " + std::to_string(n) +
                                        ", k = " + std::to_string(k));
            }
        }
    });

    s.check("closed/parity-counts", [&] {
        for (long n = 0; n <= s.opt.n_max; ++n) {
            const auto [we, We] = parity_count(Parity::even, n);
            const auto [wo, Wo] = parity_count(Parity::odd, n);
            require(We == enumerate_measure(WeightSequence::even_only(), n).total_weight,
                    "even count mismatch at n = " + std::to_string(n));
            require(Wo == enumerate_measure(WeightSequence::odd_only(), n).total_weight,
                    "odd count mismatch at n = " + std::to_string(n));
            require(we * factorial(static_cast<unsigned long>(n)) == We &&
                        wo * factorial(static_cast<unsigned long>(n)) == Wo,
                    "w(n) and W(n) inconsistent at n = " + std::to_string(n));
        }
    });

    s.check("closed/even-pgf-vs-oracle", [&] {
        for (long n2 = 2; n2 <= s.opt.n_max; n2 += 2) {
            const auto pgf = even_cycle_count_pgf(n2);
            const auto oracle_poly = cycle_count_polynomial(WeightSequence::even_only(), n2);
            require(oracle_poly.size() >= pgf.size(), "length");
            for (size_t c = 0; c < oracle_poly.size(); ++c) {
                const Rational expect = c < pgf.size() ? Rational(pgf[c]) : Rational(0);
                require(oracle_poly[c] == expect,
                        "coefficient mismatch at n2 = " + std::to_string(n2) +
                            ", c = " + std::to_string(c));
            }
        }
    });

    s.check("closed/even-bernoulli-decomposition", [&] {
        const WeightedSeries f =
            WeightedSeries::compute(WeightSequence::even_only(), 12, SeriesMode::exact);
        for (long n2 = 2; n2 <= 12; n2 += 2) {
            Rational mean = 0, var = 0;
            for (long k = 1; k <= n2 / 2; ++k) {
                const Rational p = make_rational(1, 2 * k - 1);
                mean += p;
                var += p * (1 - p);
            }
            require(mean == f.total_cycles_mean_exact(n2),
                    "Bernoulli mean mismatch at n2 = " + std::to_string(n2));
            require(var == f.total_cycles_variance_exact(n2),
                    "Bernoulli variance mismatch at n2 = " + std::to_string(n2));
        }
    });

    s.check("closed/bulk-limit-values", [&] {
        require_close(bulk_profile_limit(0.5, 0.99, 1.0), 0.1, 1e-12, "tail window");
        require_close(bulk_profile_limit(2.0, 0.0, 1.0), 1.0, 1e-12, "full window");
        require_close(bulk_profile_limit(0.5, 0.0, 0.75), 0.5, 1e-12, "half window");
    });

    s.check("closed/bulk-limit-additivity", [&] {
        for (double sigma : {0.5, 1.0, 2.0, 3.7}) {
            const double a = bulk_profile_limit(sigma, 0.1, 0.4);
            const double b = bulk_profile_limit(sigma, 0.4, 0.9);
            const double c = bulk_profile_limit(sigma, 0.1, 0.9);
            require(std::abs(a + b - c) <= 1e-14, "additivity fails");
        }
    });

    s.check("closed/long-cycle-limit", [&] {
        require_close(ewens_long_cycle_limit(1.0, 0.37), 1.0, 1e-12, "uniform case");
        require_close(ewens_long_cycle_limit(2.0, 0.5), 1.0, 1e-12, "sigma 2");
        require_close(ewens_long_cycle_limit(0.5, 0.75), 1.0, 1e-12, "sigma 1/2");
        try {
            ewens_long_cycle_limit(0.5, 1.0);
            require(false, "expected DomainError at alpha = 1");
        } catch (const DomainError&) {
        }
    });

    s.check("closed/parity-k-cycle-correction", [&] {
        for (long n : {100L, 200L, 400L}) {
            const Rational exact = parity_elements_in_k_cycles(Parity::even, n, 4);
            const double approx = parity_k_cycle_asymptotic(Parity::even, n, 4).value;
            const double diff = std::abs(to_double_nearest(exact) - approx);
            require(diff * static_cast<double>(n) * static_cast<double>(n) < 6.0,
                    "diff not O(1/n^2) at n = " + std::to_string(n));
        }
    });

    s.check("closed/even-bulk-scaling", [&] {
        const double claimed = even_bulk_scaling(100, 64);
        const double exact = to_double_nearest(parity_elements_in_k_cycles(Parity::even, 100, 64));
        require(std::abs(claimed - exact) / exact < 0.02, "scaling off by more than 2%");
    });

    s.check("report/exact-rounding-invariant", [&] {
        StatReport report;
        report.add_exact("w", make_rational(3, 8));
        report.add_exact("third", make_rational(1, 3));
        for (const auto& e : report.entries())
            require(e.exact.has_value() && e.approx == to_double_nearest(*e.exact),
                    "approx is not the rounded exact value");
    });

    s.check("weights/spec-grammar", [&] {
        require(parse_weight_spec("ewens:1/2").sigma(7) == make_rational(1, 2), "ewens:1/2");
        require(parse_weight_spec("ewens:3").sigma(2) == 3, "ewens:3");
        require(parse_weight_spec("even").sigma(4) == 1 && parse_weight_spec("even").sigma(3) == 0,
                "even");
        require(parse_weight_spec("mod:3").sigma(6) == 1 && parse_weight_spec("mod:3").sigma(4) == 0,
                "mod:3");
        try {
            parse_weight_spec("nonsense");
            require(false, "expected ParseError");
        } catch (const ParseError&) {
        }
    });

    s.check("weights/sigma-totality", [&] {
        for (const auto& [name, w] : builtin_kinds())
            for (long k : {1L, 2L, 999L, 1000000L})
                require(w.sigma(k) >= 0, name + ": sigma negative at k = " + std::to_string(k));
    });
}

// ---- sampler suites -------------------------------------------------------

std::map<std::vector<long>, long> empirical_images(
    const std::function<Permutation(RandomStream&)>& draw, long reps, std::uint64_t seed,
    std::uint64_t stream) {
    RandomStream rng({seed, stream});
    std::map<std::vector<long>, long> freq;
    for (long r = 0; r < reps; ++r) freq[draw(rng).image()] += 1;
    return freq;
}

void chi_square_against_measure(const WeightSequence& w, long n,
                                const std::function<Permutation(RandomStream&)>& draw, long reps,
                                std::uint64_t seed, std::uint64_t stream) {
    const auto measure = permutation_measure(w, n);
    const auto freq = empirical_images(draw, reps, seed, stream);
    std::vector<long> observed;
    std::vector<double> expected;
    long covered = 0;
    for (const auto& [perm, prob] : measure) {
        const auto it = freq.find(perm.image());
        const long count = it == freq.end() ? 0 : it->second;
        if (prob == 0) {
            require(count == 0, "sampler produced a zero-probability permutation");
            continue;
        }
        observed.push_back(count);
        expected.push_back(to_double_nearest(prob) * static_cast<double>(reps));
        covered += count;
    }
    require(covered == reps, "draws outside S_n support");
    const auto r = chi_square_gof(observed, expected);
    require(r.p_value >= chi_square_alpha,
            "chi-square rejected: stat = " + format_double17(r.statistic) +
                ", p = " + format_double17(r.p_value));
}

void add_sampler_checks(Suite& s) {
    const long reps = s.opt.reps;
    const std::uint64_t seed = s.opt.seed;

    s.check("sampler/crp-uniform-s4", [&] {
        chi_square_against_measure(
            WeightSequence::ewens(Rational(1)), 4,
            [&](RandomStream& rng) { return crp_sample(1.0, 4, rng); }, reps, seed, 1);
    });

    s.check("sampler/crp-half-s4", [&] {
        chi_square_against_measure(
            WeightSequence::ewens(make_rational(1, 2)), 4,
            [&](RandomStream& rng) { return crp_sample(0.5, 4, rng); }, reps, seed, 2);
    });

    s.check("sampler/exact-even-s4", [&] {
        const WeightedSeries f =
            WeightedSeries::compute(WeightSequence::even_only(), 4, SeriesMode::exact);
        const ExactWeightedSampler sampler(f, 4);
        chi_square_against_measure(
            WeightSequence::even_only(), 4,
            [&](RandomStream& rng) { return sampler.sample(rng); }, reps, seed, 3);
    });

    s.check("sampler/exact-odd-s5", [&] {
        const WeightedSeries f =
            WeightedSeries::compute(WeightSequence::odd_only(), 5, SeriesMode::exact);
        const ExactWeightedSampler sampler(f, 5);
        chi_square_against_measure(
            WeightSequence::odd_only(), 5,
            [&](RandomStream& rng) { return sampler.sample(rng); }, reps, seed, 4);
    });

    s.check("sampler/exact-ewens-half-s4", [&] {
        const WeightedSeries f = WeightedSeries::compute(WeightSequence::ewens(make_rational(1, 2)),
                                                         4, SeriesMode::exact);
        const ExactWeightedSampler sampler(f, 4);
        chi_square_against_measure(
            WeightSequence::ewens(make_rational(1, 2)), 4,
            [&](RandomStream& rng) { return sampler.sample(rng); }, reps, seed, 5);
    });

    s.check("sampler/exact-zero-measure", [&] {
        const WeightedSeries f =
            WeightedSeries::compute(WeightSequence::even_only(), 3, SeriesMode::exact);
        RandomStream rng({seed, 6});
        try {
            exact_weighted_sample(f, 3, rng);
            require(false, "expected ZeroMeasure");
        } catch (const ZeroMeasureError&) {
        }
    });

    const auto count_law_check = [&](const WeightSequence& w, long n, std::uint64_t stream) {
        const auto poly = cycle_count_polynomial(w, n);
        Rational total = 0;
        for (const auto& c : poly) total += c;
        RandomStream rng({seed, stream});
        std::vector<long> observed(poly.size(), 0);
        for (long r = 0; r < reps; ++r)
            observed[static_cast<size_t>(bernoulli_count_sample(w, n, rng))] += 1;
        std::vector<long> obs_cells;
        std::vector<double> exp_cells;
        for (size_t c = 0; c < poly.size(); ++c) {
            if (poly[c] == 0) {
                require(observed[c] == 0, "impossible cycle count drawn");
                continue;
            }
            obs_cells.push_back(observed[c]);
            exp_cells.push_back(to_double_nearest(poly[c] / total) * static_cast<double>(reps));
        }
        const auto r = chi_square_gof(obs_cells, exp_cells);
        require(r.p_value >= chi_square_alpha,
                "count law rejected: p = " + format_double17(r.p_value));
    };

    s.check("sampler/bernoulli-count-ewens1-n5",
            [&] { count_law_check(WeightSequence::ewens(Rational(1)), 5, 7); });
    s.check("sampler/bernoulli-count-even-n6",
            [&] { count_law_check(WeightSequence::even_only(), 6, 8); });

    s.check("sampler/crp-count-marginal-matches-bernoulli", [&] {
        // CRP cycle counts vs the Bernoulli decomposition, same law.
        const long n = 6;
        const WeightSequence w = WeightSequence::ewens(make_rational(1, 2));
        const auto poly = cycle_count_polynomial(w, n);
        Rational total = 0;
        for (const auto& c : poly) total += c;
        RandomStream rng({seed, 9});
        std::vector<long> observed(poly.size(), 0);
        for (long r = 0; r < reps; ++r) {
            const Permutation p = crp_sample(0.5, n, rng);
            observed[static_cast<size_t>(cycle_type(p).total_cycles())] += 1;
        }
        std::vector<long> obs_cells;
        std::vector<double> exp_cells;
        for (size_t c = 0; c < poly.size(); ++c) {
            if (poly[c] == 0) continue;
            obs_cells.push_back(observed[c]);
            exp_cells.push_back(to_double_nearest(poly[c] / total) * static_cast<double>(reps));
        }
        const auto r = chi_square_gof(obs_cells, exp_cells);
        require(r.p_value >= chi_square_alpha, "p = " + format_double17(r.p_value));
    });

    s.check("boltzmann/empty-probability", [&] {
        const BoltzmannSampler sampler(WeightSequence::ewens(Rational(1)), 0.5);
        RandomStream rng({seed, 10});
        long empty = 0;
        for (long r = 0; r < reps; ++r)
            if (sampler.sample_counts(rng).first == 0) ++empty;
        const double p = 0.5;  // exp(-log 2)
        const double se = std::sqrt(p * (1.0 - p) * static_cast<double>(reps));
        require(std::abs(static_cast<double>(empty) - p * static_cast<double>(reps)) <= 4.0 * se,
                "P(empty) off: " + std::to_string(empty));
    });

    s.check("boltzmann/geometric-size-law", [&] {
        // Ewens(1): P(N = n) = (1 - x) x^n.
        const BoltzmannSampler sampler(WeightSequence::ewens(Rational(1)), 0.5);
        RandomStream rng({seed, 11});
        const long cells = 12;
        std::vector<long> observed(static_cast<size_t>(cells) + 1, 0);
        for (long r = 0; r < reps; ++r) {
            const long n = sampler.sample_counts(rng).first;
            observed[static_cast<size_t>(std::min(n, cells))] += 1;
        }
        std::vector<double> expected;
        double tail = 1.0;
        for (long n = 0; n < cells; ++n) {
            const double p = 0.5 * std::pow(0.5, static_cast<double>(n));
            expected.push_back(p * static_cast<double>(reps));
            tail -= p;
        }
        expected.push_back(tail * static_cast<double>(reps));
        const auto r = chi_square_gof(observed, expected);
        require(r.p_value >= chi_square_alpha, "p = " + format_double17(r.p_value));
    });

    s.check("boltzmann/poisson-dispersion-per-length", [&] {
        const BoltzmannSampler sampler(WeightSequence::ewens(Rational(1)), 0.5);
        RandomStream rng({seed, 12});
        const long kk = 5;
        std::vector<std::vector<double>> counts(static_cast<size_t>(kk) + 1);
        for (long r = 0; r < reps; ++r) {
            const BoltzmannDraw d = sampler.sample(rng);
            const CycleType t = cycle_type(d.permutation);
            for (long k = 1; k <= kk; ++k)
                counts[static_cast<size_t>(k)].push_back(static_cast<double>(t.count_of(k)));
        }
        for (long k = 1; k <= kk; ++k) {
            const auto sum = summarize(counts[static_cast<size_t>(k)]);
            const double lambda = std::pow(0.5, static_cast<double>(k)) / static_cast<double>(k);
            const double se_mean = std::sqrt(lambda / static_cast<double>(reps));
            require(std::abs(sum.mean - lambda) <= 4.0 * se_mean,
                    "Poisson mean off at k = " + std::to_string(k));
            // Dispersion statistic: Var(s^2/mean) ~ 2/reps for a Poisson law.
            const double vmr = sum.variance / sum.mean;
            const double se_vmr = std::sqrt(2.0 / static_cast<double>(reps - 1));
            require(std::abs(vmr - 1.0) <= 3.0 * se_vmr,
                    "variance-to-mean off at k = " + std::to_string(k));
        }
    });

    s.check("boltzmann/conditioned-law-s4", [&] {
        const BoltzmannSampler sampler(WeightSequence::ewens(Rational(1)), 0.5);
        RandomStream rng({seed, 13});
        std::map<std::vector<long>, long> freq;
        long conditioned = 0;
        for (long r = 0; r < reps; ++r) {
            const BoltzmannDraw d = sampler.sample(rng);
            if (d.size != 4) continue;
            ++conditioned;
            freq[d.permutation.image()] += 1;
        }
        require(conditioned > 1000, "too few conditioned draws");
        const auto measure = permutation_measure(WeightSequence::ewens(Rational(1)), 4);
        std::vector<long> observed;
        std::vector<double> expected;
        for (const auto& [perm, prob] : measure) {
            const auto it = freq.find(perm.image());
            observed.push_back(it == freq.end() ? 0 : it->second);
            expected.push_back(to_double_nearest(prob) * static_cast<double>(conditioned));
        }
        const auto r = chi_square_gof(observed, expected);
        require(r.p_value >= chi_square_alpha, "p = " + format_double17(r.p_value));
    });

    s.check("boltzmann/moments-closed-forms", [&] {
        const auto em = boltzmann_moments(WeightSequence::ewens(make_rational(1, 2)), 0.75);
        require_close(em.mean_size, 0.5 * 0.75 / 0.25, 1e-12, "ewens mean size");
        require_close(em.mean_cycles, 0.5 * std::log(4.0), 1e-12, "ewens mean cycles");
        const auto ev = boltzmann_moments(WeightSequence::even_only(), 0.6);
        require_close(ev.mean_size, 0.36 / 0.64, 1e-12, "even mean size");
        require_close(ev.mean_cycles, -0.5 * std::log1p(-0.36), 1e-12, "even mean cycles");
        const auto od = boltzmann_moments(WeightSequence::odd_only(), 0.6);
        require_close(od.mean_size, 0.6 / 0.64, 1e-12, "odd mean size");
        require_close(od.mean_cycles, std::atanh(0.6), 1e-12, "odd mean cycles");
        // Explicit periodic list reproducing mod:2 = even weights.
        const WeightSequence cyc = WeightSequence::explicit_list(
            {Rational(0), Rational(1)}, TailRule::cycle, make_rational(1, 2));
        const auto ex = boltzmann_moments(cyc, 0.6);
        require_close(ex.mean_size, ev.mean_size, 1e-11, "periodic explicit vs even size");
        require_close(ex.mean_cycles, ev.mean_cycles, 1e-11, "periodic explicit vs even cycles");
    });

    s.check("boltzmann/calibration", [&] {
        require_close(calibrate_x(WeightSequence::ewens(Rational(1)), 1.0), 0.5, 1e-9,
                      "ewens:1 mu=1");
        require_close(calibrate_x(WeightSequence::ewens(Rational(2)), 2.0), 0.5, 1e-9,
                      "ewens:2 mu=2");
        const double x = calibrate_x(WeightSequence::even_only(), 1000.0);
        require_close(x * x / (1.0 - x * x), 1000.0, 1e-5, "even mu=1000");
        const WeightSequence finite =
            WeightSequence::explicit_list({Rational(1), Rational(1)}, TailRule::zero);
        try {
            calibrate_x(finite, 10.0);
            require(false, "expected CalibrationError");
        } catch (const CalibrationError&) {
        }
    });

    s.check("rng/reproducibility", [&] {
        RandomStream a({seed, 42});
        RandomStream b({seed, 42});
        const Permutation pa = crp_sample(0.5, 30, a);
        const Permutation pb = crp_sample(0.5, 30, b);
        require(pa == pb, "identical handles must reproduce identical draws");
        RandomStream e({seed, 42});
        RandomStream f({seed, 43});
        int same = 0;
        for (int i = 0; i < 64; ++i)
            if (e.next_u64() == f.next_u64()) ++same;
        require(same == 0, "distinct streams look identical");
    });

    s.check("rng/uniform-below-range", [&] {
        RandomStream rng({seed, 44});
        for (int i = 0; i < 10000; ++i) {
            const auto v = rng.uniform_below(7);
            require(v < 7, "out of range");
        }
    });
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    Suite s;
    s.opt = options;
    if (s.opt.n_max < 1 || s.opt.n_max > oracle_default_cap)
        throw DomainError("verification depth must lie in 1..9");
    if (s.opt.reps < 1000) throw DomainError("need at least 1000 replicates");
    add_oracle_equivalence(s);
    add_series_checks(s);
    add_closed_form_checks(s);
    add_sampler_checks(s);
    return s.results;
}

}  // namespace permprof
