#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "f2lab/rat.hpp"

namespace f2lab {

/// Group elements are stored as mixed-radix indices in [0, p^n):
/// digit i of x (the coefficient of e_i) is (x / p^i) % p. For p = 2 the
/// index IS the bit mask and addition is XOR. The canonical order on
/// elements used throughout (coset representatives, tie-breaks,
/// enumeration) is plain index order.
using point_t = std::uint64_t;

/// The ambient group F_p^n. Dense-array operations refuse orders above
/// max_order (default 2^28) so nothing accidentally allocates beyond
/// desk scale.
struct GroupSpec {
    std::uint32_t p = 2;
    std::uint32_t n = 0;
    std::uint64_t order = 1;

    static constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t(1) << 28;

    static GroupSpec make(std::uint32_t p, std::uint32_t n,
                          std::uint64_t max_order = kDefaultMaxOrder);

    bool binary() const { return p == 2; }

    bool operator==(const GroupSpec& o) const {
        return p == o.p && n == o.n;
    }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }

    std::uint64_t pow(std::uint32_t k) const;  // p^k, k <= n

    std::uint32_t digit(point_t x, std::uint32_t i) const;

    point_t add(point_t x, point_t y) const;
    point_t sub(point_t x, point_t y) const;
    point_t neg(point_t x) const;
    /// c * x with c taken mod p.
    point_t scale(point_t x, std::uint32_t c) const;

    /// Standard dot product <u, x> = sum u_i x_i mod p.
    std::uint32_t dot(point_t u, point_t x) const;

    point_t from_digits(std::span<const std::uint32_t> ds) const;
    std::vector<std::uint32_t> digits(point_t x) const;

    /// Multiplicative inverse of c mod p, c in [1, p).
    std::uint32_t inv_mod_p(std::uint32_t c) const;
};

bool is_prime_u32(std::uint32_t v);

/// Exact Gaussian binomial [n choose k]_p as a saturating uint64:
/// returns UINT64_MAX if the true value does not fit. (The Ramsey layer
/// carries its own big-integer version for bound certification.)
std::uint64_t gaussian_binomial_u64(std::uint32_t n, std::uint32_t k,
                                    std::uint32_t p);

}  // namespace f2lab
