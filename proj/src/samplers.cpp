#include "permprof/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "permprof/errors.hpp"

namespace permprof {

Permutation crp_sample(double sigma, long n, RandomStream& rng) {
    if (!(sigma > 0.0)) throw DomainError("crp needs sigma > 0");
    if (n < 1) throw DomainError("crp needs n >= 1");
    // next[j] = successor of j in its cycle; inserting j after e splices it in.
    std::vector<long> next(static_cast<size_t>(n) + 1, 0);
    for (long j = 1; j <= n; ++j) {
        const double p_new = sigma / (sigma + static_cast<double>(j - 1));
        if (j == 1 || rng.bernoulli(p_new)) {
            next[static_cast<size_t>(j)] = j;
        } else {
            const long e = 1 + static_cast<long>(rng.uniform_below(static_cast<uint64_t>(j - 1)));
            next[static_cast<size_t>(j)] = next[static_cast<size_t>(e)];
            next[static_cast<size_t>(e)] = j;
        }
    }
    return Permutation::from_image({next.begin() + 1, next.end()});
}

ExactWeightedSampler::ExactWeightedSampler(const WeightedSeries& series, long n) : n_(n) {
    if (n < 0 || n > series.max_n()) throw DomainError("series does not cover n");
    if (series.mode() != SeriesMode::exact)
        throw DomainError("exact sampler needs an exact-mode series");
    if (series.w_exact(n) == 0)
        throw ZeroMeasureError("total weight of S_" + std::to_string(n) + " is zero");

    cdf_.resize(static_cast<size_t>(n) + 1);
    for (long m = 1; m <= n; ++m) {
        if (series.w_exact(m) == 0) continue;
        const double wm = series.w(m);
        auto& cdf = cdf_[static_cast<size_t>(m)];
        cdf.resize(static_cast<size_t>(m));
        double acc = 0.0;
        for (long k = 1; k <= m; ++k) {
            acc += series.weights().sigma_d(k) * series.w(m - k) /
                   (static_cast<double>(m) * wm);
            cdf[static_cast<size_t>(k - 1)] = acc;
        }
        // The recurrence makes acc = 1 up to rounding; normalize it away.
        for (auto& c : cdf) c /= acc;
    }
}

Permutation ExactWeightedSampler::sample(RandomStream& rng) const {
    std::vector<long> remaining(static_cast<size_t>(n_));
    for (long i = 0; i < n_; ++i) remaining[static_cast<size_t>(i)] = i + 1;
    std::vector<long> image(static_cast<size_t>(n_) + 1, 0);

    while (!remaining.empty()) {
        const size_t m = remaining.size();
        // Anchor the cycle at the smallest remaining label.
        std::iter_swap(remaining.begin(),
                       std::min_element(remaining.begin(), remaining.end()));
        const auto& cdf = cdf_[m];
        if (cdf.empty()) throw ZeroMeasureError("reached a zero-weight residual state");
        const double u = rng.uniform_double();
        // upper_bound so flat (zero-probability) lengths are never selected.
        const size_t k =
            1 + static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        // Uniform ordered (k-1)-selection from the m-1 non-anchor labels.
        for (size_t i = 1; i < k; ++i) {
            const size_t j = i + static_cast<size_t>(rng.uniform_below(m - i));
            std::swap(remaining[i], remaining[j]);
        }
        for (size_t i = 0; i + 1 < k; ++i)
            image[static_cast<size_t>(remaining[i])] = remaining[i + 1];
        image[static_cast<size_t>(remaining[k - 1])] = remaining[0];
        remaining.erase(remaining.begin(), remaining.begin() + static_cast<long>(k));
    }
    return Permutation::from_image({image.begin() + 1, image.end()});
}

Permutation exact_weighted_sample(const WeightedSeries& series, long n, RandomStream& rng) {
    return ExactWeightedSampler(series, n).sample(rng);
}

long bernoulli_count_sample(const WeightSequence& weights, long n, RandomStream& rng) {
    if (weights.kind() == WeightKind::ewens) {
        if (n < 1) throw DomainError("need n >= 1");
        const double sigma = to_double_nearest(weights.ewens_parameter());
        if (!(sigma > 0.0)) throw DomainError("need sigma > 0");
        long count = 0;
        for (long k = 1; k <= n; ++k)
            if (rng.bernoulli(sigma / (sigma + static_cast<double>(k - 1)))) ++count;
        return count;
    }
    if (weights.kind() == WeightKind::even_only) {
        if (n < 2 || n % 2 != 0) throw DomainError("all-even family needs even n >= 2");
        long count = 0;
        for (long k = 1; k <= n / 2; ++k)
            if (rng.bernoulli(1.0 / static_cast<double>(2 * k - 1))) ++count;
        return count;
    }
    throw DomainError("no Bernoulli cycle-count decomposition for this weight kind");
}

namespace {

// sum sigma_k x^k (or x^k/k) over an explicit list and its tail: the zero
// and repeat-last tails have closed forms, the periodic tail is summed with
// a geometric bound certifying relative error <= 1e-12.
double explicit_sum(const WeightSequence& w, double x, bool by_k) {
    const long len = static_cast<long>(w.explicit_values().size());
    double acc = 0.0;
    double xk = 1.0;
    for (long k = 1; k <= len; ++k) {
        xk *= x;
        acc += w.sigma_d(k) * xk / (by_k ? static_cast<double>(k) : 1.0);
    }
    switch (w.tail()) {
        case TailRule::zero:
            return acc;
        case TailRule::repeat_last: {
            const double s = w.sigma_d(len);
            if (!by_k) return acc + s * xk * x / (1.0 - x);
            double head = 0.0;
            double xj = 1.0;
            for (long j = 1; j <= len; ++j) {
                xj *= x;
                head += xj / static_cast<double>(j);
            }
            return acc + s * (-std::log1p(-x) - head);
        }
        case TailRule::cycle: {
            double sup = 0.0;
            for (long j = 1; j <= len; ++j) sup = std::max(sup, w.sigma_d(j));
            long k = len;
            for (;;) {
                ++k;
                xk *= x;
                acc += w.sigma_d(k) * xk / (by_k ? static_cast<double>(k) : 1.0);
                double bound = sup * xk * x / (1.0 - x);
                if (by_k) bound /= static_cast<double>(k + 1);
                if (bound <= 1e-12 * std::max(acc, 1e-300)) return acc;
                if (k >= 100'000'000)
                    throw TailError("periodic-tail sum does not certify at x = " +
                                    std::to_string(x));
            }
        }
    }
    throw DomainError("unreachable tail rule");
}

}  // namespace

BoltzmannMoments boltzmann_moments(const WeightSequence& weights, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("Boltzmann parameter must lie in (0, 1)");
    BoltzmannMoments m;
    switch (weights.kind()) {
        case WeightKind::ewens: {
            const double s = to_double_nearest(weights.ewens_parameter());
            m.mean_size = s * x / (1.0 - x);
            m.mean_cycles = -s * std::log1p(-x);
            break;
        }
        case WeightKind::even_only: {
            const double x2 = x * x;
            m.mean_size = x2 / (1.0 - x2);
            m.mean_cycles = -0.5 * std::log1p(-x2);
            break;
        }
        case WeightKind::odd_only: {
            const double x2 = x * x;
            m.mean_size = x / (1.0 - x2);
            m.mean_cycles = std::atanh(x);
            break;
        }
        case WeightKind::multiples_of: {
            const double xa = std::pow(x, static_cast<double>(weights.modulus()));
            m.mean_size = xa / (1.0 - xa);
            m.mean_cycles = -std::log1p(-xa) / static_cast<double>(weights.modulus());
            break;
        }
        case WeightKind::explicit_list: {
            m.mean_size = explicit_sum(weights, x, false);
            m.mean_cycles = explicit_sum(weights, x, true);
            break;
        }
    }
    m.var_cycles = m.mean_cycles;
    return m;
}

BoltzmannSampler::BoltzmannSampler(const WeightSequence& weights, double x)
    : BoltzmannSampler(weights, x, 0) {}

BoltzmannSampler::BoltzmannSampler(const WeightSequence& weights, double x, long cutoff)
    : weights_(weights), x_(x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("Boltzmann parameter must lie in (0, 1)");

    // sup of sigma_k over any tail; built-in kinds are 0/1-valued or constant.
    double sigma_sup = 1.0;
    switch (weights.kind()) {
        case WeightKind::ewens:
            sigma_sup = to_double_nearest(weights.ewens_parameter());
            break;
        case WeightKind::even_only:
        case WeightKind::odd_only:
        case WeightKind::multiples_of:
            sigma_sup = 1.0;
            break;
        case WeightKind::explicit_list: {
            sigma_sup = 0.0;
            for (long k = 1; k <= 512; ++k) sigma_sup = std::max(sigma_sup, weights.sigma_d(k));
            break;
        }
    }

    constexpr long cutoff_cap = 1L << 24;
    const auto tail_rate_bound = [&](long K) {
        // sum_{k>K} sigma_k x^k / k <= sigma_sup x^{K+1} / ((K+1)(1-x))
        return sigma_sup * std::pow(x, static_cast<double>(K + 1)) /
               (static_cast<double>(K + 1) * (1.0 - x));
    };

    long K = std::max<long>(cutoff, 16);
    while (tail_rate_bound(K) > 1e-12 && K < cutoff_cap) K *= 2;
    if (tail_rate_bound(K) > 1e-12)
        throw TailError("cannot certify the Poisson tail below 1e-12 at cutoff " +
                        std::to_string(K));
    cutoff_ = K;
    tail_bound_ = tail_rate_bound(K);

    cum_rate_.resize(static_cast<size_t>(K));
    double acc = 0.0;
    double xk = 1.0;
    for (long k = 1; k <= K; ++k) {
        xk *= x;
        acc += weights.sigma_d(k) * xk / static_cast<double>(k);
        cum_rate_[static_cast<size_t>(k - 1)] = acc;
    }
    total_rate_ = acc;
}

std::vector<long> BoltzmannSampler::draw_lengths(RandomStream& rng) const {
    // Total count ~ Poisson(Lambda), lengths i.i.d. proportional to the
    // per-length rates: jointly equivalent to independent Poisson counts per
    // length (superposition).
    const long count = rng.poisson(total_rate_);
    std::vector<long> lengths;
    lengths.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double u = rng.uniform_double() * total_rate_;
        const auto it = std::upper_bound(cum_rate_.begin(), cum_rate_.end(), u);
        lengths.push_back(
            1 + static_cast<long>(std::min(it - cum_rate_.begin(),
                                           static_cast<std::ptrdiff_t>(cutoff_ - 1))));
    }
    if (!rng.bernoulli(-std::expm1(-tail_bound_))) return lengths;
    // A tail event fired (probability < 1e-12): redo with a larger cutoff.
    BoltzmannSampler wider(weights_, x_, cutoff_ * 4);
    return wider.draw_lengths(rng);
}

std::pair<long, long> BoltzmannSampler::sample_counts(RandomStream& rng) const {
    const auto lengths = draw_lengths(rng);
    long size = 0;
    for (long len : lengths) size += len;
    return {size, static_cast<long>(lengths.size())};
}

BoltzmannDraw BoltzmannSampler::sample(RandomStream& rng) const {
    auto lengths = draw_lengths(rng);
    BoltzmannDraw draw;
    draw.cycle_count = static_cast<long>(lengths.size());
    draw.permutation = assemble_uniform_permutation(std::move(lengths), rng);
    draw.size = draw.permutation.size();
    return draw;
}

BoltzmannDraw boltzmann_sample(const WeightSequence& weights, double x, RandomStream& rng) {
    return BoltzmannSampler(weights, x).sample(rng);
}

Permutation assemble_uniform_permutation(std::vector<long> lengths, RandomStream& rng) {
    long n = 0;
    for (long len : lengths) {
        if (len < 1) throw DomainError("cycle lengths must be >= 1");
        n += len;
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    std::vector<long> labels(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) labels[static_cast<size_t>(i)] = i + 1;
    rng.shuffle_prefix(labels, labels.size());

    std::vector<long> image(static_cast<size_t>(n) + 1, 0);
    size_t at = 0;
    for (long len : lengths) {
        const auto first = labels.begin() + static_cast<long>(at);
        const auto last = first + len;
        // Anchor each cycle at its minimum label; the stream order of the
        // rest is already uniform.
        std::rotate(first, std::min_element(first, last), last);
        for (long i = 0; i + 1 < len; ++i)
            image[static_cast<size_t>(*(first + i))] = *(first + i + 1);
        image[static_cast<size_t>(*(last - 1))] = *first;
        at += static_cast<size_t>(len);
    }
    return Permutation::from_image({image.begin() + 1, image.end()});
}

double calibrate_x(const WeightSequence& weights, double mu) {
    if (!(mu > 0.0)) throw DomainError("target mean size must be > 0");
    const auto mean_size = [&](double x) { return boltzmann_moments(weights, x).mean_size; };
    double lo = 1e-15;
    double hi = 1.0 - 1e-15;
    if (mean_size(hi) < mu)
        throw CalibrationError("mean size is bounded below the target " + std::to_string(mu));
    if (mean_size(lo) > mu) return lo;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double v = mean_size(mid);
        if (std::abs(v - mu) <= 1e-9 * mu) return mid;
        (v < mu ? lo : hi) = mid;
    }
    const double mid = 0.5 * (lo + hi);
    if (std::abs(mean_size(mid) - mu) <= 1e-9 * mu) return mid;
    throw CalibrationError("bisection failed to reach the target tolerance");
}

}  // namespace permprof
