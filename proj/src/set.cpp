#include "f2lab/set.hpp"

#include <algorithm>
#include <cmath>

#include "f2lab/normal.hpp"

namespace f2lab {

GroupSet GroupSet::full(const GroupSpec& g) {
    GroupSet s(g);
    for (std::uint64_t x = 0; x < g.order; ++x) s.set(x);
    return s;
}

GroupSet GroupSet::of_points(const GroupSpec& g, std::span<const point_t> pts) {
    GroupSet s(g);
    for (point_t x : pts) {
        if (x >= g.order)
            throw std::invalid_argument("of_points: point outside group");
        s.set(x);
    }
    return s;
}

std::vector<point_t> GroupSet::points() const {
    std::vector<point_t> out;
    out.reserve(card_);
    for_each([&](point_t x) { out.push_back(x); });
    return out;
}

GroupSet GroupSet::complement() const {
    GroupSet s(g_);
    for (std::uint64_t x = 0; x < g_.order; ++x)
        if (!test(x)) s.set(x);
    return s;
}

GroupSet GroupSet::unioned(const GroupSet& o) const {
    if (g_ != o.g_) throw std::invalid_argument("union: ambient mismatch");
    GroupSet s(g_);
    o.for_each([&](point_t x) { s.set(x); });
    for_each([&](point_t x) { s.set(x); });
    return s;
}

std::uint64_t GroupSet::intersection_card(const GroupSet& o) const {
    if (g_ != o.g_) throw std::invalid_argument("intersection: ambient mismatch");
    std::uint64_t c = 0;
    for (size_t i = 0; i < words_.size(); ++i)
        c += std::uint64_t(__builtin_popcountll(words_[i] & o.words_[i]));
    return c;
}

Rat density(const GroupSet& a, const GroupSet& x) {
    if (a.spec() != x.spec())
        throw std::invalid_argument("density: ambient mismatch");
    if (x.empty()) throw std::invalid_argument("density: empty X");
    return Rat::of_counts(a.intersection_card(x), x.card());
}

Rat density(const GroupSet& a, const Subspace& v) {
    if (a.spec() != v.ambient())
        throw std::invalid_argument("density: ambient mismatch");
    std::uint64_t hits = 0, sz = v.size();
    for (std::uint64_t i = 0; i < sz; ++i)
        if (a.test(v.element(i))) ++hits;
    return Rat::of_counts(hits, sz);
}

Rat density(const GroupSet& a) {
    return Rat::of_counts(a.card(), a.spec().order);
}

MaxDensityResult maximal_density(const GroupSet& s, const Subspace& v) {
    if (s.spec() != v.ambient())
        throw std::invalid_argument("maximal_density: ambient mismatch");
    if (s.empty()) return {Rat(0), 0};
    CosetIndexer idx(v);
    std::vector<std::uint64_t> counts(idx.num_cosets(), 0);
    s.for_each([&](point_t x) { ++counts[idx.index_of(x)]; });
    std::uint64_t best = 0;
    for (auto c : counts) best = std::max(best, c);
    point_t shift = 0;
    bool first = true;
    for (std::uint64_t ci = 0; ci < counts.size(); ++ci) {
        if (counts[ci] != best) continue;
        point_t rep = idx.min_rep(ci);
        if (first || rep < shift) {
            shift = rep;
            first = false;
        }
    }
    return {Rat::of_counts(best, v.size()), shift};
}

// defined in spectral.cpp; counts-backed support computation
GroupSet sumset_via_transform(const GroupSet& a, const GroupSet& b);

GroupSet sumset(const GroupSet& a, const GroupSet& b) {
    if (a.spec() != b.spec())
        throw std::invalid_argument("sumset: ambient mismatch");
    const GroupSpec& g = a.spec();
    if (a.card() * b.card() > (std::uint64_t(1) << 22) &&
        g.order >= (std::uint64_t(1) << 12))
        return sumset_via_transform(a, b);
    GroupSet out(g);
    a.for_each([&](point_t x) {
        b.for_each([&](point_t y) { out.set(g.add(x, y)); });
    });
    return out;
}

GroupSet difference_set(const GroupSet& a, const GroupSet& b) {
    if (a.spec().p == 2) return sumset(a, b);
    return sumset(a, dilate(b, a.spec().p - 1));
}

std::optional<SumViolation> sum_free_violation(const GroupSet& s) {
    const GroupSpec& g = s.spec();
    auto pts = s.points();
    for (size_t i = 0; i < pts.size(); ++i) {
        size_t jstart = g.p == 2 ? i + 1 : i;  // p=2 excludes the diagonal
        for (size_t j = jstart; j < pts.size(); ++j) {
            point_t z = g.add(pts[i], pts[j]);
            if (s.test(z)) return SumViolation{pts[i], pts[j], z};
        }
    }
    return std::nullopt;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> is_solution_free(
    const GroupSet& s) {
    const GroupSpec& g = s.spec();
    auto pts = s.points();
    for (std::uint32_t a = 1; a < g.p; ++a) {
        for (std::uint32_t b = 1; b < g.p; ++b) {
            // z = a b^{-1} (x - y) must avoid S for all x, y in S
            std::uint32_t ab = std::uint32_t(std::uint64_t(a) * g.inv_mod_p(b) % g.p);
            bool solution = false;
            for (size_t i = 0; i < pts.size() && !solution; ++i)
                for (size_t j = 0; j < pts.size(); ++j) {
                    point_t z = g.scale(g.sub(pts[i], pts[j]), ab);
                    if (s.test(z)) {
                        solution = true;
                        break;
                    }
                }
            if (!solution) return std::make_pair(a, b);
        }
    }
    return std::nullopt;
}

GroupSet dilate(const GroupSet& a, std::uint32_t c) {
    const GroupSpec& g = a.spec();
    if (c % g.p == 0)
        throw std::invalid_argument("dilate: scalar not a unit mod p");
    GroupSet out(g);
    a.for_each([&](point_t x) { out.set(g.scale(x, c)); });
    return out;
}

NiveauSet niveau_set(std::uint32_t n, const Rat& alpha) {
    if (!(alpha > Rat(0)) || !(alpha < Rat(1, 2)))
        throw std::invalid_argument("niveau_set: alpha must lie in (0, 1/2)");
    GroupSpec g = GroupSpec::make(2, n);
    // least w with cumulative binomial count >= alpha * 2^n
    std::uint64_t cum = 0, binom = 1;
    std::uint32_t w = 0;
    for (;; ++w) {
        cum += binom;
        if (Rat::of_counts(cum, g.order) >= alpha) break;
        binom = binom * (n - w) / (w + 1);
    }
    GroupSet out(g);
    for (std::uint64_t x = 0; x < g.order; ++x)
        if (std::uint32_t(__builtin_popcountll(x)) <= w) out.set(x);
    return NiveauSet{std::move(out), w, Rat::of_counts(cum, g.order),
                     -inverse_normal_cdf(alpha.to_double())};
}

namespace {

// residue interval [lo, hi] in [1, p-1]; the class {x : x_i in I} is
// sum-free iff I + I (mod p) misses I
bool interval_sum_avoiding(std::uint32_t lo, std::uint32_t hi, std::uint32_t p) {
    for (std::uint32_t a = lo; a <= hi; ++a)
        for (std::uint32_t b = a; b <= hi; ++b)
            if ((a + b) % p >= lo && (a + b) % p <= hi) return false;
    return true;
}

}  // namespace

DyadicCover dyadic_sumfree_cover(std::uint32_t p, std::uint32_t n) {
    if (p < 3)
        throw std::invalid_argument("dyadic_sumfree_cover: requires p >= 3");
    GroupSpec g = GroupSpec::make(p, n);

    // residue intervals: {1} plus the dyadic levels (2^j, 2^{j+1}],
    // truncated at p-1 and split into singletons whenever a level wraps
    // back into itself mod p
    std::vector<std::pair<std::uint32_t, std::uint32_t>> intervals;
    intervals.emplace_back(1, 1);
    for (std::uint32_t j = 0; (1u << j) + 1 <= p - 1; ++j) {
        std::uint32_t lo = (1u << j) + 1;
        std::uint32_t hi = std::min(p - 1, 1u << (j + 1));
        if (interval_sum_avoiding(lo, hi, p)) {
            intervals.emplace_back(lo, hi);
        } else {
            for (std::uint32_t c = lo; c <= hi; ++c) intervals.emplace_back(c, c);
        }
        if (hi == p - 1) break;
    }

    DyadicCover cover;
    cover.bound = std::uint64_t(4.0 * std::log2(double(p)) * n) + 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (auto [lo, hi] : intervals) {
            GroupSet cls(g);
            for (std::uint64_t x = 0; x < g.order; ++x) {
                std::uint32_t d = g.digit(x, i);
                if (d >= lo && d <= hi) cls.set(x);
            }
            if (!is_sum_free(cls))
                throw std::logic_error(
                    "dyadic_sumfree_cover: emitted class failed verification");
            cover.classes.push_back(std::move(cls));
        }
    }
    return cover;
}

std::vector<std::uint8_t> anti_doubling_coloring(std::uint32_t n) {
    GroupSpec g = GroupSpec::make(3, n);
    std::vector<std::uint8_t> colors(g.order, 0);
    for (std::uint64_t x = 1; x < g.order; ++x) {
        if (colors[x]) continue;
        point_t y = g.scale(x, 2);
        colors[x] = 1;
        colors[y] = 2;
    }
    return colors;
}

}  // namespace f2lab
