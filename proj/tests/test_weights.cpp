#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "permprof/errors.hpp"
#include "permprof/rational.hpp"
#include "permprof/weights.hpp"

using namespace permprof;

namespace {

// Writes content to a throwaway file in the working directory and removes it
// when the guard dies.
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream(path) << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/4") == make_rational(3, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("-2/6") == make_rational(-1, 3));
    CHECK(format_rational(make_rational(6, 8)) == "3/4");
    CHECK(format_rational(Rational(5)) == "5/1");
    CHECK(format_rational(Rational(0)) == "0/1");
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("rounding picks the nearest double") {
    CHECK(to_double_nearest(make_rational(1, 2)) == 0.5);
    CHECK(to_double_nearest(make_rational(1, 3)) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    // 1/3 is not representable; nearest-double must beat plain truncation on
    // at least one of the neighbours.
    const Rational third = make_rational(1, 3);
    const double d = to_double_nearest(third);
    const Rational err = abs(Rational(d) - third);
    CHECK(err <= abs(Rational(std::nextafter(d, 0.0)) - third));
    CHECK(err <= abs(Rational(std::nextafter(d, 1.0)) - third));
}

TEST_CASE("factorial helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(5) == 15);
    CHECK(double_factorial(6) == 48);
    CHECK(descending_step2_product(9, 5) == 9 * 7 * 5);
    CHECK(descending_step2_product(4, 6) == 1);  // empty product
    CHECK(rising_factorial(make_rational(1, 2), 3) == make_rational(15, 8));
    CHECK(falling_factorial(Rational(5), 2) == Rational(20));
    CHECK(rational_pow(make_rational(2, 3), 3) == make_rational(8, 27));
    CHECK(rational_pow(make_rational(2, 3), 0) == Rational(1));
}

TEST_CASE("spec grammar round-trips") {
    const WeightSequence half = parse_weight_spec("ewens:1/2");
    CHECK(half.kind() == WeightKind::ewens);
    CHECK(half.sigma(1) == make_rational(1, 2));
    CHECK(half.sigma(97) == make_rational(1, 2));
    CHECK(half.describe() == "ewens:1/2");

    const WeightSequence three = parse_weight_spec("ewens:3");
    CHECK(three.sigma(5) == Rational(3));

    const WeightSequence even = parse_weight_spec("even");
    CHECK(even.kind() == WeightKind::even_only);
    CHECK(even.sigma(2) == Rational(1));
    CHECK(even.sigma(3) == Rational(0));
    CHECK(even.describe() == "even");

    const WeightSequence odd = parse_weight_spec("odd");
    CHECK(odd.sigma(1) == Rational(1));
    CHECK(odd.sigma(4) == Rational(0));

    const WeightSequence mod3 = parse_weight_spec("mod:3");
    CHECK(mod3.kind() == WeightKind::multiples_of);
    CHECK(mod3.modulus() == 3);
    CHECK(mod3.sigma(3) == Rational(1));
    CHECK(mod3.sigma(4) == Rational(0));
    CHECK(mod3.sigma(6) == Rational(1));
    CHECK(mod3.describe() == "mod:3");

    for (const char* s : {"ewens:1/2", "ewens:3", "even", "odd", "mod:7"}) {
        const WeightSequence w = parse_weight_spec(s);
        CHECK(parse_weight_spec(w.describe()) == w);
    }
}

TEST_CASE("spec grammar rejections") {
    CHECK_THROWS_AS(parse_weight_spec(""), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("bogus"), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("ewens:"), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("ewens:x"), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("ewens:-1"), DomainError);
    CHECK_THROWS_AS(parse_weight_spec("mod:0"), DomainError);
    CHECK_THROWS_AS(parse_weight_spec("mod:2/3"), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("mod:x"), ParseError);
    CHECK_THROWS_AS(parse_weight_spec("file:/no/such/file.json"), ParseError);
}

TEST_CASE("sigma domain and cached doubles") {
    const WeightSequence w = parse_weight_spec("ewens:1/3");
    CHECK_THROWS_AS(w.sigma(0), DomainError);
    CHECK_THROWS_AS(w.sigma(-2), DomainError);
    CHECK(w.sigma_d(11) == to_double_nearest(w.sigma(11)));
    CHECK(parse_weight_spec("even").sigma_d(3) == 0.0);
}

TEST_CASE("declared means") {
    CHECK(*parse_weight_spec("ewens:5/3").mean() == make_rational(5, 3));
    CHECK(*parse_weight_spec("even").mean() == make_rational(1, 2));
    CHECK(*parse_weight_spec("odd").mean() == make_rational(1, 2));
    CHECK(*parse_weight_spec("mod:4").mean() == make_rational(1, 4));
    const WeightSequence noMean =
        WeightSequence::explicit_list({Rational(1), Rational(2)}, TailRule::zero);
    CHECK(!noMean.mean().has_value());
}

TEST_CASE("explicit lists and tail rules") {
    const WeightSequence zero =
        WeightSequence::explicit_list({Rational(2), make_rational(1, 2)}, TailRule::zero);
    CHECK(zero.sigma(1) == Rational(2));
    CHECK(zero.sigma(2) == make_rational(1, 2));
    CHECK(zero.sigma(3) == Rational(0));
    CHECK(zero.sigma(1000) == Rational(0));

    const WeightSequence rep =
        WeightSequence::explicit_list({Rational(2), make_rational(1, 2)}, TailRule::repeat_last);
    CHECK(rep.sigma(3) == make_rational(1, 2));
    CHECK(rep.sigma(1000) == make_rational(1, 2));

    const WeightSequence cyc =
        WeightSequence::explicit_list({Rational(0), Rational(1)}, TailRule::cycle);
    CHECK(cyc.sigma(1) == Rational(0));
    CHECK(cyc.sigma(2) == Rational(1));
    CHECK(cyc.sigma(3) == Rational(0));
    CHECK(cyc.sigma(4) == Rational(1));
    // The {0,1} cycle is exactly the even-only sequence.
    const WeightSequence even = parse_weight_spec("even");
    for (long k = 1; k <= 40; ++k) CHECK(cyc.sigma(k) == even.sigma(k));

    CHECK_THROWS_AS(WeightSequence::explicit_list({}, TailRule::zero), InvalidSpecError);
    CHECK_THROWS_AS(WeightSequence::explicit_list({Rational(-1)}, TailRule::zero), DomainError);
}

TEST_CASE("weight files") {
    const TempFile ok("tmp_weights_ok.json",
                      R"({"sigma": ["1/2", 2], "tail": "repeat-last", "mean": "3/4"})");
    const WeightSequence w = parse_weight_spec("file:" + ok.path);
    CHECK(w.kind() == WeightKind::explicit_list);
    CHECK(w.tail() == TailRule::repeat_last);
    CHECK(w.sigma(1) == make_rational(1, 2));
    CHECK(w.sigma(2) == Rational(2));
    CHECK(w.sigma(9) == Rational(2));
    CHECK(*w.mean() == make_rational(3, 4));

    const TempFile defaults("tmp_weights_default.json", R"({"sigma": [1]})");
    const WeightSequence d = load_weight_file(defaults.path);
    CHECK(d.tail() == TailRule::zero);
    CHECK(d.sigma(2) == Rational(0));
    CHECK(!d.mean().has_value());

    const TempFile cyc("tmp_weights_cycle.json", R"({"sigma": [0, 1], "tail": "cycle"})");
    CHECK(load_weight_file(cyc.path).sigma(4) == Rational(1));
}

TEST_CASE("weight file rejections") {
    const auto expect_parse_error = [](const std::string& body) {
        const TempFile f("tmp_weights_bad.json", body);
        CHECK_THROWS_AS(load_weight_file(f.path), ParseError);
    };
    expect_parse_error("not json at all");
    expect_parse_error(R"([1, 2])");
    expect_parse_error(R"({"sigma": []})");
    expect_parse_error(R"({"sigma": [1], "unknown_key": 1})");
    expect_parse_error(R"({"sigma": [1.5]})");
    expect_parse_error(R"({"sigma": ["1/2x"]})");
    expect_parse_error(R"({"sigma": [1], "tail": "forever"})");
    expect_parse_error(R"({"sigma": [1], "tail": "repeat_last"})");  // hyphen, not underscore
    expect_parse_error(R"({"sigma": [1], "tail": 3})");
    expect_parse_error(R"({"tail": "zero"})");

    const TempFile neg("tmp_weights_neg.json", R"({"sigma": ["-1/2"]})");
    CHECK_THROWS_AS(load_weight_file(neg.path), DomainError);
    CHECK_THROWS_AS(load_weight_file("definitely_missing.json"), ParseError);
}
