#include "f2lab/rat.hpp"

#include <algorithm>

namespace f2lab {

U256 umul256(uint128 a, uint128 b) {
    const uint128 mask = (uint128(1) << 64) - 1;
    uint128 a0 = a & mask, a1 = a >> 64;
    uint128 b0 = b & mask, b1 = b >> 64;

    uint128 p00 = a0 * b0;
    uint128 p01 = a0 * b1;
    uint128 p10 = a1 * b0;
    uint128 p11 = a1 * b1;

    uint128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    U256 r;
    r.lo = (p00 & mask) | (mid << 64);
    r.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    return r;
}

int cmp_u256(const U256& a, const U256& b) {
    if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
    if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
    return 0;
}

namespace {

uint128 u128_abs(int128 v) {
    return v < 0 ? uint128(-(v + 1)) + 1 : uint128(v);
}

uint128 gcd_u128(uint128 a, uint128 b) {
    while (b != 0) {
        uint128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// sign-aware compare of a.num*b.den vs b.num*a.den
int cross_cmp(const Rat& a, const Rat& b) {
    int sa = a.num < 0 ? -1 : (a.num > 0 ? 1 : 0);
    int sb = b.num < 0 ? -1 : (b.num > 0 ? 1 : 0);
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    U256 lhs = umul256(u128_abs(a.num), u128_abs(b.den));
    U256 rhs = umul256(u128_abs(b.num), u128_abs(a.den));
    int c = cmp_u256(lhs, rhs);
    return sa > 0 ? c : -c;
}

}  // namespace

Rat::Rat(int128 n, int128 d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    uint128 g = gcd_u128(u128_abs(n), uint128(d));
    if (g > 1) {
        bool neg = n < 0;
        uint128 an = u128_abs(n) / g;
        n = neg ? -int128(an) : int128(an);
        d = int128(uint128(d) / g);
    }
    num = n;
    den = d;
}

double Rat::to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string to_string_i128(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    uint128 u = neg ? uint128(-(v + 1)) + 1 : uint128(v);
    std::string s;
    while (u != 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

std::string Rat::to_string() const {
    if (den == 1) return to_string_i128(num);
    return to_string_i128(num) + "/" + to_string_i128(den);
}

namespace {

// overflow-checked __int128 multiply; inputs in this codebase keep the
// products well inside range, the check catches misuse early
int128 mul_checked(int128 a, int128 b) {
    if (a == 0 || b == 0) return 0;
    uint128 ua = u128_abs(a), ub = u128_abs(b);
    if (ua > (~uint128(0) >> 1) / ub)
        throw std::overflow_error("Rat: 128-bit overflow");
    int128 r = a * b;
    return r;
}

}  // namespace

Rat operator+(const Rat& a, const Rat& b) {
    return Rat(mul_checked(a.num, b.den) + mul_checked(b.num, a.den),
               mul_checked(a.den, b.den));
}

Rat operator-(const Rat& a, const Rat& b) {
    return Rat(mul_checked(a.num, b.den) - mul_checked(b.num, a.den),
               mul_checked(a.den, b.den));
}

Rat operator*(const Rat& a, const Rat& b) {
    // cross-reduce first to keep magnitudes down
    Rat x(a.num, b.den), y(b.num, a.den);
    return Rat(mul_checked(x.num, y.num), mul_checked(x.den, y.den));
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::invalid_argument("Rat: division by zero");
    return a * Rat(b.den, b.num);
}

bool operator<(const Rat& a, const Rat& b) { return cross_cmp(a, b) < 0; }
bool operator<=(const Rat& a, const Rat& b) { return cross_cmp(a, b) <= 0; }

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    auto parse_int = [](const std::string& t) -> int128 {
        if (t.empty()) throw std::invalid_argument("Rat: empty component");
        size_t i = 0;
        bool neg = false;
        if (t[0] == '-' || t[0] == '+') {
            neg = t[0] == '-';
            i = 1;
        }
        if (i == t.size()) throw std::invalid_argument("Rat: bad integer");
        int128 v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9')
                throw std::invalid_argument("Rat: bad digit in '" + t + "'");
            v = v * 10 + (t[i] - '0');
        }
        return neg ? -v : v;
    };
    if (slash == std::string::npos) return Rat(parse_int(s), 1);
    return Rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

int ell(const Rat& a) {
    if (!(a > Rat(0))) throw std::invalid_argument("ell: requires a > 0");
    Rat v = a;
    int m = 1;
    v = v + v;
    while (v < Rat(1)) {
        v = v + v;
        ++m;
        if (m > 512) throw std::overflow_error("ell: argument too small");
    }
    return m;
}

int ell(double a) {
    if (!(a > 0)) throw std::invalid_argument("ell: requires a > 0");
    int m = 1;
    double v = 2 * a;
    while (v < 1) {
        v *= 2;
        ++m;
        if (m > 4096) throw std::overflow_error("ell: argument too small");
    }
    return m;
}

}  // namespace f2lab
