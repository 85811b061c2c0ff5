#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "f2lab/group.hpp"

using namespace f2lab;

TEST_CASE("GroupSpec construction") {
    GroupSpec g = GroupSpec::make(2, 5);
    CHECK(g.order == 32);
    CHECK(g.binary());
    GroupSpec h = GroupSpec::make(3, 4);
    CHECK(h.order == 81);
    CHECK_THROWS_AS(GroupSpec::make(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec::make(2, 40), std::invalid_argument);  // above cap
    CHECK(GroupSpec::make(2, 30, std::uint64_t(1) << 30).order == (1u << 30));
}

TEST_CASE("binary point arithmetic is xor") {
    GroupSpec g = GroupSpec::make(2, 6);
    CHECK(g.add(0b101010, 0b011011) == (0b101010 ^ 0b011011));
    CHECK(g.sub(13, 13) == 0);
    CHECK(g.neg(9) == 9);
    CHECK(g.scale(7, 3) == 7);  // 3 mod 2 = 1
    CHECK(g.scale(7, 2) == 0);
}

TEST_CASE("general p digit arithmetic") {
    GroupSpec g = GroupSpec::make(3, 2);
    // (1,2) + (2,2) = (0,1)
    point_t x = g.from_digits(std::vector<std::uint32_t>{1, 2});
    point_t y = g.from_digits(std::vector<std::uint32_t>{2, 2});
    point_t z = g.add(x, y);
    CHECK(g.digit(z, 0) == 0);
    CHECK(g.digit(z, 1) == 1);
    CHECK(g.add(x, g.neg(x)) == 0);
    CHECK(g.sub(y, y) == 0);
    // 2*(1,2) = (2,1)
    point_t w = g.scale(x, 2);
    CHECK(g.digit(w, 0) == 2);
    CHECK(g.digit(w, 1) == 1);
    CHECK(g.inv_mod_p(2) == 2);  // 2*2 = 4 = 1 mod 3
    GroupSpec g7 = GroupSpec::make(7, 1);
    CHECK(g7.inv_mod_p(3) == 5);
    CHECK(g7.dot(3, 4) == 12 % 7);
}

TEST_CASE("digits round trip") {
    GroupSpec g = GroupSpec::make(5, 3);
    for (point_t x = 0; x < g.order; ++x)
        CHECK(g.from_digits(g.digits(x)) == x);
    CHECK_THROWS_AS(g.from_digits(std::vector<std::uint32_t>{5, 0, 0}),
                    std::invalid_argument);
}

namespace {
// independent oracle: product formula evaluated in unsigned 128-bit
std::uint64_t gauss_oracle(unsigned n, unsigned k, unsigned p) {
    if (k > n) return 0;
    unsigned __int128 num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        unsigned __int128 pn = 1, pk = 1;
        for (unsigned j = 0; j < n - i; ++j) pn *= p;
        for (unsigned j = 0; j < k - i; ++j) pk *= p;
        num *= pn - 1;
        den *= pk - 1;
    }
    return std::uint64_t(num / den);
}
}  // namespace

TEST_CASE("gaussian binomial against product-formula oracle") {
    for (unsigned p : {2u, 3u})
        for (unsigned n = 0; n <= 6; ++n)
            for (unsigned k = 0; k <= n; ++k)
                CHECK(gaussian_binomial_u64(n, k, p) == gauss_oracle(n, k, p));
    CHECK(gaussian_binomial_u64(6, 3, 2) == 1395);
    CHECK(gaussian_binomial_u64(3, 1, 2) == 7);
    CHECK(gaussian_binomial_u64(100, 50, 2) == UINT64_MAX);  // saturates
}
