#include "permprof/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "permprof/errors.hpp"

namespace permprof {

namespace {

void partitions_rec(long remaining, long max_part, std::map<long, long>& counts,
                    const std::function<void(const CycleType&)>& visit) {
    if (remaining == 0) {
        visit(CycleType::from_counts(counts));
        return;
    }
    for (long part = std::min(remaining, max_part); part >= 1; --part) {
        counts[part] += 1;
        partitions_rec(remaining - part, part, counts, visit);
        if (--counts[part] == 0) counts.erase(part);
    }
}

}  // namespace

void for_each_cycle_type(long n, const std::function<void(const CycleType&)>& visit) {
    if (n < 0) throw DomainError("n must be >= 0");
    std::map<long, long> counts;
    partitions_rec(n, n, counts, visit);
}

MeasureTable enumerate_measure(const WeightSequence& weights, long n, long cap) {
    if (n < 0) throw DomainError("n must be >= 0");
    if (n > cap)
        throw CapExceededError("enumeration capped at n = " + std::to_string(cap) +
                               ", asked for " + std::to_string(n));
    MeasureTable table;
    table.n = n;
    table.total_weight = 0;
    for_each_cycle_type(n, [&](const CycleType& type) {
        MeasureTable::Entry e;
        e.count = type.permutation_count();
        e.weight = type.weight(weights);
        e.probability = 0;
        table.total_weight += e.count * e.weight;
        table.entries.emplace(type, std::move(e));
    });
    if (table.total_weight != 0)
        for (auto& [type, e] : table.entries)
            e.probability = e.count * e.weight / table.total_weight;
    return table;
}

std::string MeasureTable::to_csv() const {
    std::ostringstream out;
    out << "cycle_type,count,weight,probability\n";
    for (const auto& [type, e] : entries)
        out << type.to_string() << "," << e.count.get_str() << "," << format_rational(e.weight)
            << "," << format_rational(e.probability) << "\n";
    return out.str();
}

Rational oracle_expectation(const WeightSequence& weights, long n,
                            const std::function<Rational(const CycleType&)>& functional,
                            long cap) {
    const MeasureTable table = enumerate_measure(weights, n, cap);
    if (table.total_weight == 0)
        throw ZeroMeasureError("total weight of S_" + std::to_string(n) + " is zero");
    Rational acc = 0;
    for (const auto& [type, e] : table.entries) {
        if (e.probability == 0) continue;
        acc += e.probability * functional(type);
    }
    return acc;
}

std::vector<Rational> cycle_count_polynomial(const WeightSequence& weights, long n, long cap) {
    if (n < 0) throw DomainError("n must be >= 0");
    if (n > cap)
        throw CapExceededError("enumeration capped at n = " + std::to_string(cap) +
                               ", asked for " + std::to_string(n));
    std::vector<Rational> coeffs(static_cast<size_t>(n) + 1, Rational(0));
    for_each_cycle_type(n, [&](const CycleType& type) {
        coeffs[static_cast<size_t>(type.total_cycles())] +=
            type.permutation_count() * type.weight(weights);
    });
    return coeffs;
}

std::vector<Permutation> all_permutations(long n) {
    if (n < 0 || n > 6) throw CapExceededError("permutation-level enumeration capped at n = 6");
    std::vector<long> image(static_cast<size_t>(n));
    std::iota(image.begin(), image.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_image(image));
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

std::vector<std::pair<Permutation, Rational>> permutation_measure(const WeightSequence& weights,
                                                                  long n) {
    auto perms = all_permutations(n);
    Rational total = 0;
    std::vector<Rational> w;
    w.reserve(perms.size());
    for (const auto& p : perms) {
        w.push_back(cycle_type(p).weight(weights));
        total += w.back();
    }
    if (total == 0) throw ZeroMeasureError("total weight of S_" + std::to_string(n) + " is zero");
    std::vector<std::pair<Permutation, Rational>> out;
    out.reserve(perms.size());
    for (size_t i = 0; i < perms.size(); ++i)
        out.emplace_back(std::move(perms[i]), w[i] / total);
    return out;
}

}  // namespace permprof
