#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "f2lab/rat.hpp"

using namespace f2lab;

TEST_CASE("rat normalization and compare") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, 4) == Rat(1, -2));
    CHECK(Rat(3, 7) < Rat(1, 2));
    CHECK(Rat(5, 16) >= Rat(5, 16));
    CHECK(Rat(0, 5) == Rat(0));
    CHECK(Rat(7, 3).to_string() == "7/3");
    CHECK(Rat(-4, 2).to_string() == "-2");
}

TEST_CASE("rat arithmetic") {
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
    CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
    CHECK(Rat(1, 2) / Rat(1, 8) == Rat(4));
    CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}

TEST_CASE("rat compares survive large cross products") {
    // magnitudes near 2^84 on both sides, as inner_product_mu produces:
    // 1 + 1/(2^84-1) vs 1 + 1/2^84 differ only past the 84th bit
    Rat a(int128(1) << 84, (int128(1) << 84) - 1);
    Rat b((int128(1) << 84) + 1, int128(1) << 84);
    CHECK(b < a);
    CHECK(a > b);
    CHECK(a != b);
}

TEST_CASE("parse_rat") {
    CHECK(parse_rat("3/8") == Rat(3, 8));
    CHECK(parse_rat("-5") == Rat(-5));
    CHECK(parse_rat("10/4") == Rat(5, 2));
    CHECK_THROWS(parse_rat("x/2"));
    CHECK_THROWS(parse_rat(""));
}

TEST_CASE("ell: least m >= 1 with 2^m a >= 1") {
    CHECK(ell(Rat(1)) == 1);       // the m >= 1 constraint binds
    CHECK(ell(Rat(1, 8)) == 3);    // 2^3 * 1/8 = 1
    CHECK(ell(Rat(3, 10)) == 2);   // 2*0.3 < 1 <= 4*0.3
    CHECK(ell(Rat(2)) == 1);
    CHECK(ell(Rat(1, 1024)) == 10);
    CHECK(ell(0.3) == 2);
    CHECK_THROWS_AS(ell(Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(ell(-1.0), std::invalid_argument);
    CHECK(Lvalue::of(Rat(1, 40)).m == 6);
}

TEST_CASE("u256 compare") {
    U256 a = umul256(uint128(1) << 100, uint128(1) << 20);
    U256 b = umul256(uint128(1) << 60, uint128(1) << 61);
    CHECK(cmp_u256(a, b) < 0);  // 2^120 < 2^121
    CHECK(cmp_u256(a, a) == 0);
}
