#include "f2lab/spectral.hpp"

#include <cmath>

namespace f2lab {

namespace {

void check_same_ambient(const GroupSet& a, const GroupSet& b,
                        const char* who) {
    if (a.spec() != b.spec())
        throw std::invalid_argument(std::string(who) + ": ambient mismatch");
}

constexpr std::uint64_t kTransformCutoff = std::uint64_t(1) << 12;

}  // namespace

ConvCounts conv_counts_direct(const GroupSet& a, const GroupSet& b) {
    check_same_ambient(a, b, "conv_counts");
    const GroupSpec& g = a.spec();
    ConvCounts cc{g, std::vector<std::uint64_t>(g.order, 0), a.card(), b.card()};
    auto bpts = b.points();
    a.for_each([&](point_t x) {
        for (point_t y : bpts) ++cc.counts[g.sub(y, x)];
    });
    return cc;
}

void wht_i64(std::vector<std::int64_t>& v) {
    const size_t n = v.size();
    for (size_t h = 1; h < n; h <<= 1)
        for (size_t i = 0; i < n; i += h << 1)
            for (size_t j = i; j < i + h; ++j) {
                std::int64_t x = v[j], y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
}

namespace {

void wht_i128(std::vector<int128>& v) {
    const size_t n = v.size();
    for (size_t h = 1; h < n; h <<= 1)
        for (size_t i = 0; i < n; i += h << 1)
            for (size_t j = i; j < i + h; ++j) {
                int128 x = v[j], y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
}

ConvCounts conv_binary_transform(const GroupSet& a, const GroupSet& b) {
    const GroupSpec& g = a.spec();
    const std::uint64_t n = g.order;
    std::vector<std::int64_t> fa(n, 0), fb(n, 0);
    a.for_each([&](point_t x) { fa[x] = 1; });
    b.for_each([&](point_t x) { fb[x] = 1; });
    wht_i64(fa);
    if (&a != &b) wht_i64(fb);
    const std::vector<std::int64_t>& fbr = (&a == &b) ? fa : fb;
    // counts = (1/2^n) W(Wa * Wb); the second pass can reach 2^{3n}, so
    // accumulate in 128 bits once 3n strains int64
    if (3 * g.n <= 62) {
        std::vector<std::int64_t> prod(n);
        for (std::uint64_t i = 0; i < n; ++i) prod[i] = fa[i] * fbr[i];
        wht_i64(prod);
        ConvCounts cc{g, std::vector<std::uint64_t>(n), a.card(), b.card()};
        for (std::uint64_t i = 0; i < n; ++i) {
            if (prod[i] % std::int64_t(n) != 0 || prod[i] < 0)
                throw std::logic_error("conv transform: non-integral count");
            cc.counts[i] = std::uint64_t(prod[i] / std::int64_t(n));
        }
        return cc;
    }
    std::vector<int128> prod(n);
    for (std::uint64_t i = 0; i < n; ++i)
        prod[i] = int128(fa[i]) * int128(fbr[i]);
    wht_i128(prod);
    ConvCounts cc{g, std::vector<std::uint64_t>(n), a.card(), b.card()};
    for (std::uint64_t i = 0; i < n; ++i) {
        if (prod[i] % int128(n) != 0 || prod[i] < 0)
            throw std::logic_error("conv transform: non-integral count");
        cc.counts[i] = std::uint64_t(prod[i] / int128(n));
    }
    return cc;
}

// axis-wise DFT; dir = +1 forward (omega^{+<s,x>}), -1 conjugate
void dft_axes(const GroupSpec& g, std::vector<std::complex<double>>& v,
              int dir) {
    const std::uint32_t p = g.p;
    std::vector<std::complex<double>> w(p);
    for (std::uint32_t k = 0; k < p; ++k)
        w[k] = std::polar(1.0, dir * 2.0 * M_PI * k / p);
    std::vector<std::complex<double>> tmp(p);
    std::uint64_t stride = 1;
    for (std::uint32_t axis = 0; axis < g.n; ++axis) {
        for (std::uint64_t base = 0; base < g.order; ++base) {
            // process each line along this axis once: base must have
            // digit 0 on the axis
            if ((base / stride) % p != 0) continue;
            for (std::uint32_t s = 0; s < p; ++s) {
                std::complex<double> acc = 0;
                for (std::uint32_t x = 0; x < p; ++x)
                    acc += v[base + x * stride] * w[std::uint32_t(std::uint64_t(s) * x % p)];
                tmp[s] = acc;
            }
            for (std::uint32_t s = 0; s < p; ++s) v[base + s * stride] = tmp[s];
        }
        stride *= p;
    }
}

ConvCounts conv_general_transform(const GroupSet& a, const GroupSet& b) {
    const GroupSpec& g = a.spec();
    std::vector<std::complex<double>> fa(g.order, 0.0), fb(g.order, 0.0);
    a.for_each([&](point_t x) { fa[x] = 1.0; });
    b.for_each([&](point_t x) { fb[x] = 1.0; });
    dft_axes(g, fa, +1);
    dft_axes(g, fb, +1);
    for (std::uint64_t i = 0; i < g.order; ++i) fa[i] = std::conj(fa[i]) * fb[i];
    dft_axes(g, fa, +1);
    // F(corr)[s] = conj(FA) FB; one more forward transform evaluates the
    // inverse up to order and an index negation: undo both
    ConvCounts cc{g, std::vector<std::uint64_t>(g.order), a.card(), b.card()};
    double worst = 0;
    for (std::uint64_t i = 0; i < g.order; ++i) {
        double real = fa[g.neg(i)].real() / double(g.order);
        double r = std::round(real);
        worst = std::max(worst, std::fabs(real - r));
        if (r < -0.25) throw std::logic_error("conv transform: negative count");
        cc.counts[i] = std::uint64_t(r);
    }
    std::uint64_t total = 0;
    for (auto c : cc.counts) total += c;
    if (worst > 0.25 || total != a.card() * b.card())
        // rounding not trustworthy at this size; fall back
        return conv_counts_direct(a, b);
    return cc;
}

}  // namespace

ConvCounts conv_counts_transform(const GroupSet& a, const GroupSet& b) {
    check_same_ambient(a, b, "conv_counts");
    if (a.spec().p == 2) return conv_binary_transform(a, b);
    return conv_general_transform(a, b);
}

ConvCounts conv_counts(const GroupSet& a, const GroupSet& b) {
    check_same_ambient(a, b, "conv_counts");
    if (a.spec().order >= kTransformCutoff) return conv_counts_transform(a, b);
    return conv_counts_direct(a, b);
}

GroupSet sumset_via_transform(const GroupSet& a, const GroupSet& b) {
    // b - (-a) = b + a
    ConvCounts cc = conv_counts_transform(
        a.spec().p == 2 ? a : dilate(a, a.spec().p - 1), b);
    GroupSet out(a.spec());
    for (std::uint64_t x = 0; x < cc.counts.size(); ++x)
        if (cc.counts[x] > 0) out.set(x);
    return out;
}

bool popular_at_threshold(const ConvCounts& cc, point_t v,
                          std::uint64_t card_v) {
    // 2 |G|^3 c >= |A|^2 |V|^2
    uint128 g3 = uint128(cc.spec.order) * cc.spec.order * cc.spec.order;
    U256 lhs = umul256(2 * uint128(cc.counts[v]), g3);
    U256 rhs = umul256(uint128(cc.card_a) * cc.card_a,
                       uint128(card_v) * card_v);
    return cmp_u256(lhs, rhs) >= 0;
}

GroupSet popular_difference_set(const GroupSet& a, const Subspace& v) {
    if (a.empty())
        throw std::invalid_argument("popular_difference_set: empty A");
    if (a.spec() != v.ambient())
        throw std::invalid_argument("popular_difference_set: ambient mismatch");
    ConvCounts cc = conv_counts(a, a);
    GroupSet d(a.spec());
    const std::uint64_t vsize = v.size();
    for (std::uint64_t i = 0; i < vsize; ++i) {
        point_t x = v.element(i);
        if (popular_at_threshold(cc, x, vsize)) d.set(x);
    }
    return d;
}

Rat inner_product_mu(const GroupSet& a, const GroupSet& c) {
    check_same_ambient(a, c, "inner_product_mu");
    if (a.empty() || c.empty())
        throw std::invalid_argument("inner_product_mu: empty set");
    ConvCounts cc = conv_counts(a, a);
    std::uint64_t sum = 0;
    c.for_each([&](point_t x) { sum += cc.counts[x]; });
    // |G| * sum / (|A|^2 |C|)
    return Rat(int128(sum) * int128(a.spec().order),
               int128(a.card()) * int128(a.card()) * int128(c.card()));
}

Spectrum transform(const GroupSpec& g, std::span<const double> f) {
    if (f.size() != g.order)
        throw std::invalid_argument("transform: length mismatch");
    Spectrum s{g, std::vector<std::complex<double>>(f.begin(), f.end())};
    dft_axes(g, s.coeffs, +1);
    return s;
}

Spectrum transform_conj(const GroupSpec& g,
                        std::span<const std::complex<double>> f) {
    if (f.size() != g.order)
        throw std::invalid_argument("transform: length mismatch");
    Spectrum s{g, std::vector<std::complex<double>>(f.begin(), f.end())};
    dft_axes(g, s.coeffs, -1);
    return s;
}

}  // namespace f2lab
