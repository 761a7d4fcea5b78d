#include "doctest.h"
#include "ergo/rational.hpp"

using namespace ergo;

TEST_CASE("make_ratio canonicalizes") {
    CHECK(make_ratio(2, 4) == make_ratio(1, 2));
    CHECK(make_ratio(-2, 4) == make_ratio(1, -2));
    CHECK(to_string(make_ratio(6, -4)) == "-3/2");
    CHECK(to_string(make_ratio(8, 4)) == "2");
    CHECK_THROWS_AS(make_ratio(1, 0), std::invalid_argument);
}

TEST_CASE("parse and serialize round-trip") {
    for (const char* text : {"0", "-7", "3/4", "-22/7", "123456789123456789/2"}) {
        CHECK(to_string(parse_rational(text)) == text);
    }
    CHECK(to_string(parse_rational("4/8")) == "1/2");
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("parts and absolute value") {
    CHECK(positive_part(make_ratio(3, 2)) == make_ratio(3, 2));
    CHECK(positive_part(make_ratio(-3, 2)) == 0);
    CHECK(negative_part(make_ratio(-3, 2)) == make_ratio(3, 2));
    CHECK(negative_part(make_ratio(3, 2)) == 0);
    CHECK(rational_abs(make_ratio(-5, 3)) == make_ratio(5, 3));
    SUBCASE("x = x+ - x-") {
        for (long num : {-7L, -1L, 0L, 2L, 9L}) {
            const Rational q = make_ratio(num, 3);
            CHECK(positive_part(q) - negative_part(q) == q);
        }
    }
}

TEST_CASE("ceiling") {
    CHECK(ceil_to_long(make_ratio(7, 2)) == 4);
    CHECK(ceil_to_long(make_ratio(-7, 2)) == -3);
    CHECK(ceil_to_long(make_ratio(6, 2)) == 3);
    CHECK(ceil_to_long(Rational(0)) == 0);
}

TEST_CASE("exactness survives long chains") {
    Rational q = 0;
    for (long k = 1; k <= 200; ++k) q += make_ratio(1, k);
    Rational r = 0;
    for (long k = 200; k >= 1; --k) r += make_ratio(1, k);
    CHECK(q == r);  // harmonic sum, order independent
}
