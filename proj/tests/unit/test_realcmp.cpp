#include <doctest.h>

#include "multab/realcmp.hpp"

#include <cmath>

using namespace multab;
using namespace multab::realcmp;

TEST_SUITE_BEGIN("realcmp");

TEST_CASE("cmp_with_log against known rationals") {
    // log 2 = 0.693147...: 7/10 > log 2 > 9/13
    CHECK(cmp_with_log(BigRat(7, 10), BigRat(2)) > 0);
    CHECK(cmp_with_log(BigRat(9, 13), BigRat(2)) < 0);
    // log 1 = 0 exactly
    CHECK(cmp_with_log(BigRat(0), BigRat(1)) == 0);
    CHECK(cmp_with_log(BigRat(1, 1000000), BigRat(1)) > 0);
    CHECK(cmp_with_log(BigRat(-1, 1000000), BigRat(1)) < 0);
    // log(1/2) = -log 2
    CHECK(cmp_with_log(BigRat(-9, 13), BigRat(1, 2)) > 0);
    CHECK(cmp_with_log(BigRat(-7, 10), BigRat(1, 2)) < 0);
}

TEST_CASE("cmp_with_log resolves razor-thin margins") {
    // 25469/36744 < log 2 with error < 1e-10; 31138/44921 > log 2
    CHECK(cmp_with_log(BigRat(25469, 36744), BigRat(2)) < 0);
    CHECK(cmp_with_log(BigRat(31138, 44921), BigRat(2)) > 0);
    // 45-decimal-digit truncation of log 2: off by ~4e-46, which no double
    // or 128-bit pass can separate -- forces precision escalation
    const BigInt den = pow_big(10, 45);
    const BigInt num("693147180559945309417232121458176568075500134");
    BigRat below(num, den);
    below.canonicalize();
    BigRat above(num + 1, den);
    above.canonicalize();
    CHECK(cmp_with_log(below, BigRat(2)) < 0);
    CHECK(cmp_with_log(above, BigRat(2)) > 0);
    CHECK(cmp_with_log2(below) < 0);
    CHECK(cmp_with_log2(above) > 0);
}

TEST_CASE("cmp_with_log2 is consistent with cmp_with_log") {
    for (int num = 60; num <= 80; ++num) {
        BigRat x(num, 100);
        x.canonicalize();
        CHECK(cmp_with_log2(x) == cmp_with_log(x, BigRat(2)));
    }
}

TEST_CASE("log_bracket encloses tightly") {
    for (int v : {2, 3, 10, 1000}) {
        const Bracket br = log_bracket(BigRat(v));
        CHECK(br.lo <= br.hi);
        CHECK(br.hi - br.lo <= 1e-12 * std::abs(br.hi));
        CHECK(br.lo <= std::log(double(v)));
        CHECK(std::log(double(v)) <= br.hi * (1 + 1e-15));
    }
}

TEST_CASE("to_double_bracket directs the rounding") {
    // 1/3 is not a double: lo < hi and both adjacent
    const Bracket third = to_double_bracket(BigRat(1, 3));
    CHECK(third.lo < third.hi);
    CHECK(std::nextafter(third.lo, 1.0) == third.hi);
    // 1/4 is exact: lo == hi
    const Bracket quarter = to_double_bracket(BigRat(1, 4));
    CHECK(quarter.lo == 0.25);
    CHECK(quarter.hi == 0.25);
}

TEST_SUITE_END();
