#include "permprof/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "permprof/errors.hpp"

namespace permprof {

WeightedSeries WeightedSeries::compute(const WeightSequence& weights, long n_max,
                                       SeriesMode mode) {
    if (n_max < 0) throw DomainError("series length must be >= 0");
    WeightedSeries s(weights);
    s.mode_ = mode;
    s.n_max_ = n_max;

    const size_t len = static_cast<size_t>(n_max) + 1;
    s.sigma_cache_d_.assign(len, 0.0);
    for (long k = 1; k <= n_max; ++k)
        s.sigma_cache_d_[static_cast<size_t>(k)] = weights.sigma_d(k);

    if (mode == SeriesMode::exact) {
        s.sigma_cache_.assign(len, Rational(0));
        for (long k = 1; k <= n_max; ++k)
            s.sigma_cache_[static_cast<size_t>(k)] = weights.sigma(k);
        s.exact_.assign(len, Rational(0));
        s.exact_[0] = 1;
        for (long n = 1; n <= n_max; ++n) {
            Rational acc = 0;
            for (long k = 1; k <= n; ++k) {
                const Rational& sk = s.sigma_cache_[static_cast<size_t>(k)];
                if (sk == 0) continue;
                acc += sk * s.exact_[static_cast<size_t>(n - k)];
            }
            s.exact_[static_cast<size_t>(n)] = acc / n;
        }
        s.approx_.assign(len, 0.0);
        for (size_t i = 0; i < len; ++i) s.approx_[i] = to_double_nearest(s.exact_[i]);
    } else {
        s.approx_.assign(len, 0.0);
        s.approx_[0] = 1.0;
        const double* sig = s.sigma_cache_d_.data();
        for (long n = 1; n <= n_max; ++n) {
            double acc = 0.0;
            const double* wlo = s.approx_.data();
            for (long k = 1; k <= n; ++k) acc += sig[k] * wlo[n - k];
            const double wn = acc / static_cast<double>(n);
            if (!std::isfinite(wn))
                throw DomainError("float-mode coefficient overflowed at n = " + std::to_string(n));
            s.approx_[static_cast<size_t>(n)] = wn;
        }
    }
    return s;
}

void WeightedSeries::require_n(long n) const {
    if (n < 0 || n > n_max_) throw DomainError("n outside computed series range");
}

void WeightedSeries::require_exact() const {
    if (mode_ != SeriesMode::exact) throw DomainError("series was computed in float mode");
}

void WeightedSeries::require_positive_mass(long n) const {
    require_n(n);
    if (mode_ == SeriesMode::exact ? (exact_[static_cast<size_t>(n)] == 0)
                                   : (approx_[static_cast<size_t>(n)] == 0.0))
        throw ZeroMeasureError("total weight of S_" + std::to_string(n) + " is zero");
}

const Rational& WeightedSeries::w_exact(long n) const {
    require_n(n);
    require_exact();
    return exact_[static_cast<size_t>(n)];
}

double WeightedSeries::w(long n) const {
    require_n(n);
    return approx_[static_cast<size_t>(n)];
}

Rational WeightedSeries::expected_k_cycles_exact(long n, long k) const {
    require_exact();
    if (k < 1 || k > n) throw DomainError("need 1 <= k <= n");
    require_positive_mass(n);
    return sigma_cache_[static_cast<size_t>(k)] / k * w_exact(n - k) / w_exact(n);
}

double WeightedSeries::expected_k_cycles(long n, long k) const {
    if (k < 1 || k > n) throw DomainError("need 1 <= k <= n");
    require_positive_mass(n);
    return sigma_cache_d_[static_cast<size_t>(k)] / static_cast<double>(k) * w(n - k) / w(n);
}

Rational WeightedSeries::expected_elements_in_k_cycles_exact(long n, long k) const {
    return k * expected_k_cycles_exact(n, k);
}

double WeightedSeries::expected_elements_in_k_cycles(long n, long k) const {
    return static_cast<double>(k) * expected_k_cycles(n, k);
}

namespace {
long moment_drop(const std::vector<std::pair<long, long>>& spec) {
    std::set<long> seen;
    long drop = 0;
    for (const auto& [k, m] : spec) {
        if (k < 1 || m < 0) throw DomainError("moment spec needs k >= 1, m >= 0");
        if (!seen.insert(k).second) throw InvalidSpecError("repeated cycle length in moment spec");
        drop += m * k;
    }
    return drop;
}
}  // namespace

Rational WeightedSeries::factorial_moment_exact(
    long n, const std::vector<std::pair<long, long>>& spec) const {
    require_exact();
    require_positive_mass(n);
    const long drop = moment_drop(spec);
    if (drop > n) return 0;
    Rational factor = 1;
    for (const auto& [k, m] : spec)
        if (m > 0) factor *= rational_pow(weights_.sigma(k) / k, static_cast<unsigned long>(m));
    return factor * w_exact(n - drop) / w_exact(n);
}

double WeightedSeries::factorial_moment(long n,
                                        const std::vector<std::pair<long, long>>& spec) const {
    require_positive_mass(n);
    const long drop = moment_drop(spec);
    if (drop > n) return 0.0;
    double factor = 1.0;
    for (const auto& [k, m] : spec)
        if (m > 0)
            factor *= std::pow(weights_.sigma_d(k) / static_cast<double>(k), static_cast<double>(m));
    return factor * w(n - drop) / w(n);
}

Rational WeightedSeries::total_cycles_mean_exact(long n) const {
    require_exact();
    require_positive_mass(n);
    Rational acc = 0;
    for (long k = 1; k <= n; ++k) {
        const Rational& sk = sigma_cache_[static_cast<size_t>(k)];
        if (sk == 0) continue;
        acc += sk / k * w_exact(n - k);
    }
    return acc / w_exact(n);
}

double WeightedSeries::total_cycles_mean(long n) const {
    require_positive_mass(n);
    double acc = 0.0;
    for (long k = 1; k <= n; ++k)
        acc += sigma_cache_d_[static_cast<size_t>(k)] / static_cast<double>(k) * w(n - k);
    return acc / w(n);
}

// E[X(X-1)] = sum over ordered pairs (j,k), j+k <= n, of
// (sigma_j sigma_k / (j k)) w(n-j-k) / w(n); assembled by the
// convolution A(m) = sum_{j+k=m} s_j s_k with s_j = sigma_j / j.
Rational WeightedSeries::total_cycles_variance_exact(long n) const {
    require_exact();
    require_positive_mass(n);
    std::vector<Rational> s(static_cast<size_t>(n) + 1, Rational(0));
    for (long j = 1; j <= n; ++j) s[static_cast<size_t>(j)] = sigma_cache_[static_cast<size_t>(j)] / j;
    Rational pair_sum = 0;
    for (long m = 2; m <= n; ++m) {
        Rational a = 0;
        for (long j = 1; j < m; ++j) {
            const Rational& sj = s[static_cast<size_t>(j)];
            if (sj == 0) continue;
            a += sj * s[static_cast<size_t>(m - j)];
        }
        if (a != 0) pair_sum += a * w_exact(n - m);
    }
    const Rational mean = total_cycles_mean_exact(n);
    return pair_sum / w_exact(n) + mean - mean * mean;
}

double WeightedSeries::total_cycles_variance(long n) const {
    require_positive_mass(n);
    std::vector<double> s(static_cast<size_t>(n) + 1, 0.0);
    for (long j = 1; j <= n; ++j)
        s[static_cast<size_t>(j)] = sigma_cache_d_[static_cast<size_t>(j)] / static_cast<double>(j);
    double pair_sum = 0.0;
    for (long m = 2; m <= n; ++m) {
        double a = 0.0;
        for (long j = 1; j < m; ++j) a += s[static_cast<size_t>(j)] * s[static_cast<size_t>(m - j)];
        pair_sum += a * w(n - m);
    }
    const double mean = total_cycles_mean(n);
    return pair_sum / w(n) + mean - mean * mean;
}

std::pair<long, long> bulk_window(long n, double gamma, double delta) {
    if (!(gamma >= 0.0 && delta >= gamma && delta <= 1.0))
        throw DomainError("need 0 <= gamma <= delta <= 1");
    constexpr double snap = 1e-9;
    long lo = static_cast<long>(std::ceil(gamma * static_cast<double>(n) - snap));
    long hi = static_cast<long>(std::floor(delta * static_cast<double>(n) + snap));
    lo = std::max(lo, 1L);
    hi = std::min(hi, n);
    return {lo, hi};
}

Rational WeightedSeries::bulk_profile_exact(long n, double gamma, double delta) const {
    require_exact();
    require_positive_mass(n);
    const auto [lo, hi] = bulk_window(n, gamma, delta);
    Rational acc = 0;
    for (long k = lo; k <= hi; ++k) {
        const Rational& sk = sigma_cache_[static_cast<size_t>(k)];
        if (sk == 0) continue;
        acc += sk * w_exact(n - k);
    }
    return acc / w_exact(n) / n;
}

double WeightedSeries::bulk_profile(long n, double gamma, double delta) const {
    require_positive_mass(n);
    const auto [lo, hi] = bulk_window(n, gamma, delta);
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) acc += sigma_cache_d_[static_cast<size_t>(k)] * w(n - k);
    return acc / w(n) / static_cast<double>(n);
}

std::string WeightedSeries::to_csv() const {
    std::ostringstream out;
    out << "n,w_exact,w_float\n";
    for (long n = 0; n <= n_max_; ++n) {
        out << n << ",";
        if (mode_ == SeriesMode::exact) out << format_rational(exact_[static_cast<size_t>(n)]);
        out << "," << format_double17(approx_[static_cast<size_t>(n)]) << "\n";
    }
    return out.str();
}

}  // namespace permprof
