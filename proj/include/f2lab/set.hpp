#pragma once

#include <optional>

#include "f2lab/subspace.hpp"

namespace f2lab {

/// Dense bitset-backed subset of F_p^n with cached cardinality.
/// Treat as immutable once built; every operation below is pure.
class GroupSet {
  public:
    explicit GroupSet(const GroupSpec& g)
        : g_(g), words_((g.order + 63) / 64, 0) {}

    static GroupSet full(const GroupSpec& g);
    static GroupSet of_points(const GroupSpec& g, std::span<const point_t> pts);

    const GroupSpec& spec() const { return g_; }
    std::uint64_t card() const { return card_; }
    bool empty() const { return card_ == 0; }

    bool test(point_t x) const {
        return (words_[x >> 6] >> (x & 63)) & 1;
    }
    void set(point_t x) {
        std::uint64_t& w = words_[x >> 6];
        std::uint64_t bit = std::uint64_t(1) << (x & 63);
        if (!(w & bit)) {
            w |= bit;
            ++card_;
        }
    }
    void reset(point_t x) {
        std::uint64_t& w = words_[x >> 6];
        std::uint64_t bit = std::uint64_t(1) << (x & 63);
        if (w & bit) {
            w &= ~bit;
            --card_;
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = unsigned(__builtin_ctzll(w));
                f(point_t(wi * 64 + b));
                w &= w - 1;
            }
        }
    }
    std::vector<point_t> points() const;

    GroupSet complement() const;
    GroupSet unioned(const GroupSet& o) const;
    std::uint64_t intersection_card(const GroupSet& o) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const GroupSet& o) const {
        return g_ == o.g_ && words_ == o.words_;
    }

  private:
    GroupSpec g_;
    std::vector<std::uint64_t> words_;
    std::uint64_t card_ = 0;
};

/// |A cap X| / |X|, exact. Throws on empty X or ambient mismatch.
Rat density(const GroupSet& a, const GroupSet& x);
Rat density(const GroupSet& a, const Subspace& v);
/// Plain density in the whole group; 0 for the empty set.
Rat density(const GroupSet& a);

struct MaxDensityResult {
    Rat value;
    point_t argmax_shift;  // index-least shift attaining the maximum
};

/// mu*_V(S) = max_g |(g+V) cap S| / |V| with the canonical argmax.
MaxDensityResult maximal_density(const GroupSet& s, const Subspace& v);

/// {a + b : a in A, b in B}.
GroupSet sumset(const GroupSet& a, const GroupSet& b);
/// {a - b : a in A, b in B}; equals sumset for p = 2.
GroupSet difference_set(const GroupSet& a, const GroupSet& b);

struct SumViolation {
    point_t x, y, z;  // x + y = z, all in S
};

/// Sum-free test. For p = 2 the pattern is x, y, x+y with x != y (the
/// diagonal is excluded); for p >= 3 the diagonal counts.
std::optional<SumViolation> sum_free_violation(const GroupSet& s);
inline bool is_sum_free(const GroupSet& s) {
    return !sum_free_violation(s).has_value();
}

/// Some (a, b) in [1,p-1]^2 admitting no x,y,z in S with a(x-y) = bz,
/// or nullopt if every pair has a solution.
std::optional<std::pair<std::uint32_t, std::uint32_t>> is_solution_free(
    const GroupSet& s);

/// a * A for a unit mod p.
GroupSet dilate(const GroupSet& a, std::uint32_t c);

struct NiveauSet {
    GroupSet set;
    std::uint32_t weight_threshold;  // smallest w with cum. density >= alpha
    Rat density;
    double c_alpha;  // P(X < -C_alpha) = alpha for standard normal X
};

/// Hamming-ball niveau set over F_2^n: {x : wt(x) <= w} for the least w
/// whose cumulative density reaches alpha.
NiveauSet niveau_set(std::uint32_t n, const Rat& alpha);

struct DyadicCover {
    std::vector<GroupSet> classes;
    std::uint64_t bound;  // the documented C * log2(p) * n bound (C = 4)
};

/// Sum-free classes covering F_p^n \ {0}, built from per-coordinate
/// dyadic residue intervals (split down to singletons where an interval
/// fails); every emitted class is re-verified sum-free.
DyadicCover dyadic_sumfree_cover(std::uint32_t p, std::uint32_t n);

/// 2-coloring C of F_3^n \ {0} with C(v) != C(2v); colors[x] in {1,2},
/// colors[0] = 0.
std::vector<std::uint8_t> anti_doubling_coloring(std::uint32_t n);

}  // namespace f2lab
