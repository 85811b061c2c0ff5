#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace f2lab {

using int128 = __int128;
using uint128 = unsigned __int128;

/// 256-bit unsigned product of two 128-bit values, for overflow-free
/// cross-multiplication compares.
struct U256 {
    uint128 hi = 0;
    uint128 lo = 0;
};

U256 umul256(uint128 a, uint128 b);
int cmp_u256(const U256& a, const U256& b);

/// Exact rational with 128-bit numerator/denominator. Always normalized:
/// den > 0, gcd(|num|, den) = 1. Comparisons go through 256-bit products,
/// so any two representable values compare exactly. Arithmetic asserts
/// against overflow; the quantities in this codebase (densities, counts
/// scaled by group orders <= 2^28) stay far below the limits.
struct Rat {
    int128 num = 0;
    int128 den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(int128 n, int128 d);

    static Rat of_counts(std::uint64_t n, std::uint64_t d) {
        return Rat(static_cast<int128>(n), static_cast<int128>(d));
    }

    bool is_zero() const { return num == 0; }
    double to_double() const;
    std::string to_string() const;  // "P/Q" (or "P" when Q = 1)

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b);
    friend bool operator<=(const Rat& a, const Rat& b);
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }
};

/// Parses "P/Q" or "P" (decimal, optional leading '-').
Rat parse_rat(const std::string& s);

/// The paper-style logarithmic cost: least m >= 1 with 2^m * a >= 1.
int ell(const Rat& a);
int ell(double a);

/// Pairs a with its cost, mirroring how the two travel together in reports.
struct Lvalue {
    Rat a;
    int m;
    static Lvalue of(const Rat& a) { return Lvalue{a, ell(a)}; }
};

std::string to_string_i128(int128 v);

}  // namespace f2lab
