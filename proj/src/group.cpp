#include "f2lab/group.hpp"

namespace f2lab {

bool is_prime_u32(std::uint32_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

GroupSpec GroupSpec::make(std::uint32_t p, std::uint32_t n,
                          std::uint64_t max_order) {
    if (!is_prime_u32(p))
        throw std::invalid_argument("GroupSpec: p must be prime");
    GroupSpec g;
    g.p = p;
    g.n = n;
    g.order = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (g.order > max_order / p)
            throw std::invalid_argument(
                "GroupSpec: p^n exceeds the configured dense-array cap");
        g.order *= p;
    }
    return g;
}

std::uint64_t GroupSpec::pow(std::uint32_t k) const {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < k; ++i) r *= p;
    return r;
}

std::uint32_t GroupSpec::digit(point_t x, std::uint32_t i) const {
    if (p == 2) return (x >> i) & 1;
    for (std::uint32_t j = 0; j < i; ++j) x /= p;
    return std::uint32_t(x % p);
}

point_t GroupSpec::add(point_t x, point_t y) const {
    if (p == 2) return x ^ y;
    point_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t d = std::uint32_t(x % p + y % p) % p;
        r += d * mul;
        mul *= p;
        x /= p;
        y /= p;
    }
    return r;
}

point_t GroupSpec::sub(point_t x, point_t y) const {
    if (p == 2) return x ^ y;
    return add(x, neg(y));
}

point_t GroupSpec::neg(point_t x) const {
    if (p == 2) return x;
    point_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t d = std::uint32_t(x % p);
        r += (d == 0 ? 0 : p - d) * mul;
        mul *= p;
        x /= p;
    }
    return r;
}

point_t GroupSpec::scale(point_t x, std::uint32_t c) const {
    c %= p;
    if (p == 2) return c ? x : 0;
    point_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        r += (std::uint64_t(x % p) * c % p) * mul;
        mul *= p;
        x /= p;
    }
    return r;
}

std::uint32_t GroupSpec::dot(point_t u, point_t x) const {
    if (p == 2) return std::uint32_t(__builtin_popcountll(u & x) & 1);
    std::uint64_t acc = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        acc += (u % p) * (x % p);
        u /= p;
        x /= p;
    }
    return std::uint32_t(acc % p);
}

point_t GroupSpec::from_digits(std::span<const std::uint32_t> ds) const {
    if (ds.size() != n)
        throw std::invalid_argument("GroupSpec: digit count mismatch");
    point_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (ds[i] >= p)
            throw std::invalid_argument("GroupSpec: digit out of range");
        r += ds[i] * mul;
        mul *= p;
    }
    return r;
}

std::vector<std::uint32_t> GroupSpec::digits(point_t x) const {
    std::vector<std::uint32_t> ds(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        ds[i] = std::uint32_t(x % p);
        x /= p;
    }
    return ds;
}

std::uint32_t GroupSpec::inv_mod_p(std::uint32_t c) const {
    c %= p;
    if (c == 0) throw std::invalid_argument("inv_mod_p: zero has no inverse");
    // p is small; scan
    for (std::uint32_t d = 1; d < p; ++d)
        if (std::uint64_t(c) * d % p == 1) return d;
    return 1;  // p = 2
}

std::uint64_t gaussian_binomial_u64(std::uint32_t n, std::uint32_t k,
                                    std::uint32_t p) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    // product of (p^(n-i) - 1)/(p^(k-i) - 1); evaluate as exact integers
    // via iterated multiply/divide in 128 bits, saturating on overflow
    uint128 num = 1, den = 1;
    const uint128 cap = ~uint128(0) >> 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        uint128 top = 1, bot = 1;
        for (std::uint32_t j = 0; j < n - i; ++j) {
            if (top > cap / p) return UINT64_MAX;
            top *= p;
        }
        for (std::uint32_t j = 0; j < k - i; ++j) bot *= p;
        top -= 1;
        bot -= 1;
        if (num > cap / top) return UINT64_MAX;
        num *= top;
        den *= bot;
        uint128 g = [](uint128 a, uint128 b) {
            while (b) {
                uint128 t = a % b;
                a = b;
                b = t;
            }
            return a;
        }(num, den);
        num /= g;
        den /= g;
    }
    if (den != 1) return UINT64_MAX;  // cannot happen for true binomials
    if (num > UINT64_MAX) return UINT64_MAX;
    return std::uint64_t(num);
}

}  // namespace f2lab
