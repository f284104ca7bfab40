#include "permprof/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <cstring>
#include <limits>

#include "permprof/errors.hpp"

namespace permprof {

namespace {
bool even_mantissa(double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    return (bits & 1u) == 0;
}
}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den) {
    return make_rational(BigInt(num), BigInt(den));
}

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto is_int = [](std::string_view s) {
        if (!s.empty() && s.front() == '-') s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) throw ParseError("bad integer literal: " + std::string(text));
        return Rational(BigInt(std::string(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-')
        throw ParseError("bad rational literal: " + std::string(text));
    BigInt d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator: " + std::string(text));
    return make_rational(BigInt(std::string(num)), d);
}

std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_double17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double to_double_nearest(const Rational& q) {
    const double t = q.get_d();
    if (!std::isfinite(t)) return t;
    // get_d truncates toward zero, so the true value lies within one ulp.
    // Compare the trunc result and its neighbors exactly in rational arithmetic.
    const double lo = std::nextafter(t, -std::numeric_limits<double>::infinity());
    const double hi = std::nextafter(t, std::numeric_limits<double>::infinity());
    double best = t;
    Rational best_err = abs(q - Rational(t));
    for (double cand : {lo, hi}) {
        if (!std::isfinite(cand)) continue;
        Rational err = abs(q - Rational(cand));
        if (err < best_err || (err == best_err && even_mantissa(cand) && !even_mantissa(best))) {
            best = cand;
            best_err = err;
        }
    }
    return best;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt double_factorial(long n) {
    if (n <= 0) return 1;
    BigInt r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

BigInt descending_step2_product(long hi, long lo) {
    BigInt r = 1;
    for (long v = hi; v >= lo && v >= 1; v -= 2) r *= v;
    return r;
}

Rational rational_pow(const Rational& q, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), q.get_den().get_mpz_t(), e);
    return r;
}

Rational rising_factorial(const Rational& x, unsigned long n) {
    Rational r = 1;
    for (unsigned long i = 0; i < n; ++i) r *= x + static_cast<long>(i);
    return r;
}

Rational falling_factorial(const Rational& x, unsigned long n) {
    Rational r = 1;
    for (unsigned long i = 0; i < n; ++i) r *= x - static_cast<long>(i);
    return r;
}

}  // namespace permprof
