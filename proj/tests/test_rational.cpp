#include "heatlaw/errors.hpp"
#include "heatlaw/rational.hpp"

#include <catch_amalgamated.hpp>

using namespace heatlaw;

TEST_CASE("parse_rational reads integers, fractions and decimals exactly") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-7/14") == Rational(-1, 2));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("  1/3 ") == Rational(1, 3));
    CHECK(parse_rational("1E2") == 100);
}

TEST_CASE("parse_rational rejects malformed input") {
    for (const char* bad : {"", "abc", "1/0", "1//2", "1.2.3", "3/", "e5"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_rational(bad), ValidationError);
    }
}

TEST_CASE("to_string gives canonical p/q") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-4/2")) == "-2");
    CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("polynomial helpers") {
    const RationalVec a{1, 2};
    const RationalVec b{Rational(1, 2), 0, 1};
    CHECK(poly_multiply(a, b) == RationalVec{Rational(1, 2), 1, 1, 2});
    CHECK(poly_add(a, b) == RationalVec{Rational(3, 2), 2, 1});
    CHECK(trim_trailing_zeros({1, 0, 0}) == RationalVec{1});
    CHECK(trim_trailing_zeros({0, 0}).empty());
}
