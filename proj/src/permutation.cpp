#include "permprof/permutation.hpp"

#include <sstream>

#include "permprof/errors.hpp"

namespace permprof {

Permutation Permutation::identity(long n) {
    if (n < 0) throw DomainError("permutation size must be >= 0");
    Permutation p;
    p.image_.resize(static_cast<size_t>(n));
    for (long i = 1; i <= n; ++i) p.image_[static_cast<size_t>(i - 1)] = i;
    return p;
}

Permutation Permutation::from_image(std::vector<long> image) {
    const long n = static_cast<long>(image.size());
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (long v : image) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v - 1)])
            throw DomainError("image is not a bijection on {1..n}");
        seen[static_cast<size_t>(v - 1)] = 1;
    }
    Permutation p;
    p.image_ = std::move(image);
    return p;
}

std::vector<std::vector<long>> Permutation::cycles() const {
    std::vector<std::vector<long>> out;
    const long n = size();
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (long start = 1; start <= n; ++start) {
        if (seen[static_cast<size_t>(start - 1)]) continue;
        std::vector<long> cyc;
        long at = start;
        do {
            seen[static_cast<size_t>(at - 1)] = 1;
            cyc.push_back(at);
            at = apply(at);
        } while (at != start);
        out.push_back(std::move(cyc));
    }
    return out;
}

std::string Permutation::to_cycle_string() const {
    if (size() == 0) return "()";
    std::ostringstream out;
    for (const auto& cyc : cycles()) {
        out << "(";
        for (size_t i = 0; i < cyc.size(); ++i) {
            if (i) out << " ";
            out << cyc[i];
        }
        out << ")";
    }
    return out.str();
}

CycleType CycleType::from_counts(std::map<long, long> counts) {
    CycleType t;
    long n = 0;
    for (auto it = counts.begin(); it != counts.end();) {
        if (it->first < 1 || it->second < 0) throw DomainError("bad cycle type entry");
        if (it->second == 0) {
            it = counts.erase(it);
            continue;
        }
        n += it->first * it->second;
        ++it;
    }
    t.counts_ = std::move(counts);
    t.n_ = n;
    return t;
}

long CycleType::count_of(long k) const {
    const auto it = counts_.find(k);
    return it == counts_.end() ? 0 : it->second;
}

long CycleType::total_cycles() const {
    long c = 0;
    for (const auto& [k, ck] : counts_) c += ck;
    return c;
}

BigInt CycleType::permutation_count() const {
    BigInt denom = 1;
    for (const auto& [k, ck] : counts_) {
        BigInt kp;
        mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k),
                      static_cast<unsigned long>(ck));
        denom *= kp * factorial(static_cast<unsigned long>(ck));
    }
    return factorial(static_cast<unsigned long>(n_)) / denom;
}

Rational CycleType::weight(const WeightSequence& weights) const {
    Rational w = 1;
    for (const auto& [k, ck] : counts_) {
        const Rational s = weights.sigma(k);
        if (s == 0) return 0;
        w *= rational_pow(s, static_cast<unsigned long>(ck));
    }
    return w;
}

std::string CycleType::to_string() const {
    if (counts_.empty()) return "-";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, ck] : counts_) {
        if (!first) out << " ";
        out << k << "^" << ck;
        first = false;
    }
    return out.str();
}

CycleType cycle_type(const Permutation& p) {
    std::map<long, long> counts;
    for (const auto& cyc : p.cycles()) counts[static_cast<long>(cyc.size())] += 1;
    return CycleType::from_counts(std::move(counts));
}

}  // namespace permprof
