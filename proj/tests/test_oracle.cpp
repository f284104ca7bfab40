#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>
#include <vector>

#include "permprof/closed_forms.hpp"
#include "permprof/errors.hpp"
#include "permprof/oracle.hpp"
#include "permprof/series.hpp"
#include "permprof/weights.hpp"

using namespace permprof;

TEST_CASE("partition enumeration") {
    long count = 0;
    for_each_cycle_type(4, [&](const CycleType& t) {
        CHECK(t.n() == 4);
        ++count;
    });
    CHECK(count == 5);

    count = 0;
    for_each_cycle_type(9, [&](const CycleType&) { ++count; });
    CHECK(count == 30);

    // n = 0 has exactly the empty type.
    count = 0;
    for_each_cycle_type(0, [&](const CycleType& t) {
        CHECK(t.n() == 0);
        ++count;
    });
    CHECK(count == 1);
}

TEST_CASE("class sizes partition the symmetric group") {
    for (long n = 1; n <= 7; ++n) {
        BigInt total = 0;
        for_each_cycle_type(n, [&](const CycleType& t) { total += t.permutation_count(); });
        CHECK(total == factorial(static_cast<unsigned long>(n)));
    }
}

TEST_CASE("measure tables") {
    const MeasureTable uniform = enumerate_measure(parse_weight_spec("ewens:1"), 4);
    CHECK(uniform.n == 4);
    CHECK(uniform.total_weight == Rational(24));
    Rational prob_sum = 0;
    for (const auto& [type, entry] : uniform.entries) {
        CHECK(entry.probability == Rational(entry.count) / 24);
        prob_sum += entry.probability;
    }
    CHECK(prob_sum == Rational(1));

    const MeasureTable even = enumerate_measure(parse_weight_spec("even"), 4);
    CHECK(even.total_weight == Rational(9));
    CHECK(even.entries.at(CycleType::from_counts({{2, 2}})).probability == make_rational(1, 3));
    CHECK(even.entries.at(CycleType::from_counts({{4, 1}})).probability == make_rational(2, 3));
    CHECK(even.entries.at(CycleType::from_counts({{1, 4}})).probability == Rational(0));

    CHECK_THROWS_AS(enumerate_measure(parse_weight_spec("ewens:1"), 10), CapExceededError);
}

TEST_CASE("measure csv") {
    const MeasureTable even = enumerate_measure(parse_weight_spec("even"), 4);
    std::istringstream in(even.to_csv());
    std::string line;
    std::getline(in, line);
    CHECK(line == "cycle_type,count,weight,probability");
    std::set<std::string> lines;
    while (std::getline(in, line)) lines.insert(line);
    CHECK(lines.count("2^2,3,1/1,1/3") == 1);
    CHECK(lines.count("4^1,6,1/1,2/3") == 1);
    CHECK(lines.count("1^4,1,0/1,0/1") == 1);
}

TEST_CASE("oracle expectations agree with independent derivations") {
    // Mean cycle count of uniform S_5 is H_5.
    const Rational mean =
        oracle_expectation(parse_weight_spec("ewens:1"), 5,
                           [](const CycleType& t) { return Rational(t.total_cycles()); });
    CHECK(mean == harmonic_number(5));
    CHECK(mean == make_rational(137, 60));

    // Elements in 4-cycles under the even-only measure at n = 10, against
    // both the product formula and the series quotient.
    const Rational y4 =
        oracle_expectation(parse_weight_spec("even"), 10,
                           [](const CycleType& t) { return Rational(4 * t.count_of(4)); },
                           /*cap=*/10);
    CHECK(y4 == make_rational(80, 63));
    CHECK(y4 == parity_elements_in_k_cycles(Parity::even, 10, 4));

    CHECK_THROWS_AS(oracle_expectation(parse_weight_spec("even"), 5,
                                       [](const CycleType&) { return Rational(1); }),
                    ZeroMeasureError);
}

TEST_CASE("count polynomials") {
    CHECK(cycle_count_polynomial(parse_weight_spec("odd"), 5) ==
          std::vector<Rational>{0, 24, 0, 20, 0, 1});
    CHECK(cycle_count_polynomial(parse_weight_spec("even"), 4) ==
          std::vector<Rational>{0, 6, 3, 0, 0});
    // Signless Stirling numbers for the uniform measure.
    CHECK(cycle_count_polynomial(parse_weight_spec("ewens:1"), 3) ==
          std::vector<Rational>{0, 2, 3, 1});

    // The dedicated even-case construction matches enumeration.
    for (long n2 = 2; n2 <= 8; n2 += 2) {
        const auto fast = even_cycle_count_pgf(n2);
        const auto slow = cycle_count_polynomial(parse_weight_spec("even"), n2);
        for (size_t c = 0; c < slow.size(); ++c) {
            const Rational expect = c < fast.size() ? Rational(fast[c]) : Rational(0);
            CHECK(slow[c] == expect);
        }
    }

    // Total weight identity: sum of coefficients is n! w(n).
    const WeightedSeries s =
        WeightedSeries::compute(parse_weight_spec("ewens:1/2"), 7, SeriesMode::exact);
    for (long n = 0; n <= 7; ++n) {
        Rational total = 0;
        for (const auto& c : cycle_count_polynomial(parse_weight_spec("ewens:1/2"), n)) total += c;
        CHECK(total == factorial(static_cast<unsigned long>(n)) * s.w_exact(n));
    }
}

TEST_CASE("permutation-level enumeration") {
    const auto perms = all_permutations(3);
    CHECK(perms.size() == 6);
    CHECK(std::set<Permutation>(perms.begin(), perms.end()).size() == 6);
    CHECK_THROWS_AS(all_permutations(7), CapExceededError);

    const auto uniform = permutation_measure(parse_weight_spec("ewens:1"), 3);
    CHECK(uniform.size() == 6);
    for (const auto& [p, prob] : uniform) CHECK(prob == make_rational(1, 6));

    const auto even = permutation_measure(parse_weight_spec("even"), 4);
    Rational total = 0;
    long four_cycles = 0;
    for (const auto& [p, prob] : even) {
        total += prob;
        const CycleType t = cycle_type(p);
        if (t.count_of(4) == 1) {
            CHECK(prob == make_rational(1, 9));
            ++four_cycles;
        } else if (t.count_of(2) != 2) {
            CHECK(prob == Rational(0));
        }
    }
    CHECK(total == Rational(1));
    CHECK(four_cycles == 6);

    CHECK_THROWS_AS(permutation_measure(parse_weight_spec("even"), 3), ZeroMeasureError);
}
