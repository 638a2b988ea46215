#include <asplag/rational.hpp>

#include <catch_amalgamated.hpp>

using asplag::Rational;

TEST_CASE("rationals stay reduced", "[rational]") {
    Rational r(6, 8);
    CHECK(r.num() == 3);
    CHECK(r.den() == 4);
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(9, 30).str() == "3/10");
}

TEST_CASE("rational arithmetic and ordering", "[rational]") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
    CHECK(Rational(7, 10) < Rational(3, 4));
    CHECK(Rational(19, 20) > Rational(9, 10));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing is exact", "[rational]") {
    CHECK(Rational::parse("0.95") == Rational(19, 20));
    CHECK(Rational::parse("1.0") == Rational(1));
    CHECK(Rational::parse("2/3") == Rational(2, 3));
    CHECK(Rational::parse("1") == Rational(1));
    CHECK(Rational::parse(".5") == Rational(1, 2));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse(""));
}
