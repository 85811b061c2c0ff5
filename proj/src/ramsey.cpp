#include "f2lab/ramsey.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace f2lab {

using boost::multiprecision::cpp_int;

point_t canonical_generator(const GroupSpec& g, point_t x) {
    if (x == 0) throw std::invalid_argument("canonical_generator: zero");
    if (g.p == 2) return x;
    // scale so the most significant nonzero digit is 1
    std::uint32_t top = 0;
    point_t t = x;
    for (std::uint32_t i = 0; i < g.n; ++i) {
        if (t % g.p != 0) top = i;
        t /= g.p;
    }
    std::uint32_t lead = g.digit(x, top);
    return g.scale(x, g.inv_mod_p(lead));
}

std::vector<point_t> projective_points(const GroupSpec& g) {
    std::vector<point_t> pts;
    for (point_t x = 1; x < g.order; ++x)
        if (canonical_generator(g, x) == x) pts.push_back(x);
    return pts;
}

int Coloring::color_of(point_t x) const {
    if (spec.p == 2) return colors_by_rank[size_t(x - 1)];
    point_t c = canonical_generator(spec, x);
    auto pts = projective_points(spec);
    auto it = std::lower_bound(pts.begin(), pts.end(), c);
    return colors_by_rank[size_t(it - pts.begin())];
}

namespace {

// DFS for a d-space whose projective points all pass `ok`; candidates
// are enumerated in increasing index order with span-closure checks
std::optional<Subspace> mono_dfs(const GroupSpec& g,
                                 const std::function<bool(point_t)>& ok,
                                 std::uint32_t d) {
    if (d == 0) return Subspace(g);
    std::vector<point_t> basis;
    std::vector<point_t> span_elems{0};
    std::optional<Subspace> found;

    auto extend_ok = [&](point_t v) {
        for (std::uint32_t c = 1; c < g.p; ++c) {
            point_t cv = g.scale(v, c);
            for (point_t w : span_elems) {
                point_t y = g.add(cv, w);
                if (y != 0 && !ok(y)) return false;
            }
        }
        return true;
    };

    std::function<bool(point_t)> rec = [&](point_t from) {
        if (basis.size() == d) {
            found = Subspace::span(g, basis);
            return true;
        }
        for (point_t v = from; v < g.order; ++v) {
            if (!ok(v)) continue;
            bool in_span = false;
            for (point_t w : span_elems)
                if (w == v) { in_span = true; break; }
            if (in_span) continue;
            if (!extend_ok(v)) continue;
            size_t old = span_elems.size();
            for (std::uint32_t c = 1; c < g.p; ++c) {
                point_t cv = g.scale(v, c);
                for (size_t i = 0; i < old; ++i)
                    span_elems.push_back(g.add(cv, span_elems[i]));
            }
            basis.push_back(v);
            if (rec(v + 1)) return true;
            basis.pop_back();
            span_elems.resize(old);
        }
        return false;
    };
    rec(1);
    return found;
}

}  // namespace

std::optional<Witness> mono_witness(const Coloring& c, int color,
                                    std::uint32_t d) {
    const GroupSpec& g = c.spec;
    if (d > g.n) return std::nullopt;
    auto pts = projective_points(g);
    std::vector<std::int8_t> colmap(g.order, 0);
    for (size_t k = 0; k < pts.size(); ++k)
        colmap[pts[k]] = std::int8_t(c.colors_by_rank[k]);
    auto ok = [&](point_t x) {
        return colmap[canonical_generator(g, x)] == color;
    };
    auto sp = mono_dfs(g, ok, d);
    if (!sp) return std::nullopt;
    return Witness{color, std::move(*sp)};
}

bool verify_witness(const Coloring& c, const Witness& w) {
    const Subspace& v = w.space;
    for (std::uint64_t i = 1; i < v.size(); ++i)
        if (c.color_of(v.element(i)) != w.color) return false;
    return true;
}

std::optional<Subspace> mono_point_witness(const GroupSpec& g,
                                           std::span<const std::uint8_t> colors,
                                           std::uint8_t color, std::uint32_t d) {
    if (d > g.n) return std::nullopt;
    auto ok = [&](point_t x) { return colors[x] == color; };
    return mono_dfs(g, ok, d);
}

namespace {

struct ColoringDfs {
    const GroupSpec& g;
    std::span<const std::uint32_t> dims;
    const std::vector<point_t>& pts;
    // spaces grouped per distinct dim with their point-rank lists
    struct SpaceGroup {
        std::uint32_t dim;
        std::vector<std::vector<std::uint32_t>> members;  // rank lists
    };
    std::vector<SpaceGroup> groups;
    // incidence: rank -> (group, space) pairs
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> incidence;
    // per space per color counts + assigned totals
    std::vector<std::vector<std::vector<std::uint32_t>>> counts;  // [g][s][color]
    std::vector<std::vector<std::uint32_t>> assigned;              // [g][s]

    std::vector<std::uint8_t> colors;  // by rank, 0 = unassigned
    std::uint64_t nodes = 0;
    std::uint64_t node_limit;
    bool exhausted = false;
    bool lex_leader = false;
    std::vector<std::vector<std::uint32_t>> perms;  // rank permutations

    // color classes with equal dims are interchangeable: first-use order
    std::vector<std::uint32_t> class_of_color;      // -> class id
    std::vector<std::uint32_t> class_used;          // colors used per class
    std::vector<std::vector<std::uint8_t>> class_members;

    ColoringDfs(const GroupSpec& g_, std::span<const std::uint32_t> dims_,
                const std::vector<point_t>& pts_, std::uint64_t limit)
        : g(g_), dims(dims_), pts(pts_), node_limit(limit) {
        std::vector<std::uint32_t> rank_of(g.order, UINT32_MAX);
        for (size_t k = 0; k < pts.size(); ++k) rank_of[pts[k]] = std::uint32_t(k);
        std::vector<std::uint32_t> distinct;
        for (auto d : dims)
            if (d <= g.n && std::find(distinct.begin(), distinct.end(), d) == distinct.end())
                distinct.push_back(d);
        incidence.resize(pts.size());
        for (std::uint32_t d : distinct) {
            SpaceGroup grp;
            grp.dim = d;
            enumerate_subspaces(Subspace::whole(g), d, [&](const Subspace& v) {
                std::vector<std::uint32_t> ranks;
                std::vector<bool> seen(pts.size(), false);
                for (std::uint64_t i = 1; i < v.size(); ++i) {
                    std::uint32_t rk = rank_of[canonical_generator(g, v.element(i))];
                    if (!seen[rk]) {
                        seen[rk] = true;
                        ranks.push_back(rk);
                    }
                }
                std::sort(ranks.begin(), ranks.end());
                grp.members.push_back(std::move(ranks));
                return true;
            });
            groups.push_back(std::move(grp));
        }
        for (std::uint32_t gi = 0; gi < groups.size(); ++gi)
            for (std::uint32_t si = 0; si < groups[gi].members.size(); ++si)
                for (std::uint32_t rk : groups[gi].members[si])
                    incidence[rk].emplace_back(gi, si);
        counts.resize(groups.size());
        assigned.resize(groups.size());
        for (std::uint32_t gi = 0; gi < groups.size(); ++gi) {
            counts[gi].assign(groups[gi].members.size(),
                              std::vector<std::uint32_t>(dims.size() + 1, 0));
            assigned[gi].assign(groups[gi].members.size(), 0);
        }
        colors.assign(pts.size(), 0);

        // color classes
        class_of_color.assign(dims.size(), 0);
        std::vector<std::uint32_t> class_dim;
        for (size_t c = 0; c < dims.size(); ++c) {
            auto it = std::find(class_dim.begin(), class_dim.end(), dims[c]);
            if (it == class_dim.end()) {
                class_of_color[c] = std::uint32_t(class_dim.size());
                class_dim.push_back(dims[c]);
                class_members.push_back({std::uint8_t(c + 1)});
            } else {
                class_of_color[c] = std::uint32_t(it - class_dim.begin());
                class_members[size_t(it - class_dim.begin())].push_back(
                    std::uint8_t(c + 1));
            }
        }
        class_used.assign(class_dim.size(), 0);
    }

    // violation iff some space of dim d_c is fully colored c
    bool assign(std::uint32_t rk, std::uint8_t c) {
        bool ok = true;
        for (auto [gi, si] : incidence[rk]) {
            ++counts[gi][si][c];
            ++assigned[gi][si];
            if (counts[gi][si][c] == groups[gi].members[si].size() &&
                dims[c - 1] == groups[gi].dim)
                ok = false;
        }
        colors[rk] = c;
        return ok;
    }
    void unassign(std::uint32_t rk, std::uint8_t c) {
        for (auto [gi, si] : incidence[rk]) {
            --counts[gi][si][c];
            --assigned[gi][si];
        }
        colors[rk] = 0;
    }

    // lex-leader prune: some transposition image of the assigned prefix
    // is lexicographically smaller
    bool lex_pruned(std::uint32_t t) const {
        for (const auto& perm : perms) {
            // prefix-preserving check
            bool pres = true;
            for (std::uint32_t x = 0; x <= t && pres; ++x)
                if (perm[x] > t) pres = false;
            if (!pres) continue;
            for (std::uint32_t x = 0; x <= t; ++x) {
                std::uint8_t img = colors[perm[x]];
                if (img == colors[x]) continue;
                if (img < colors[x]) return true;
                break;
            }
        }
        return false;
    }

    bool run(std::uint32_t rk) {
        if (rk == pts.size()) return true;
        if (++nodes > node_limit) {
            exhausted = true;
            return false;
        }
        for (std::uint8_t c = 1; c <= dims.size(); ++c) {
            // first-use order inside interchangeable classes
            std::uint32_t cls = class_of_color[c - 1];
            std::uint32_t pos_in_class = UINT32_MAX;
            for (std::uint32_t j = 0; j < class_members[cls].size(); ++j)
                if (class_members[cls][j] == c) pos_in_class = j;
            if (pos_in_class > class_used[cls]) continue;  // skip ahead-of-order
            bool newly_used = pos_in_class == class_used[cls];

            if (!assign(rk, c)) {
                unassign(rk, c);
                continue;
            }
            if (newly_used) ++class_used[cls];
            if (!(lex_leader && lex_pruned(rk))) {
                if (run(rk + 1)) return true;
                if (exhausted) {
                    if (newly_used) --class_used[cls];
                    unassign(rk, c);
                    return false;
                }
            }
            if (newly_used) --class_used[cls];
            unassign(rk, c);
        }
        return false;
    }
};

}  // namespace

ColoringSearchResult search_coloring(const GroupSpec& g,
                                     std::span<const std::uint32_t> dims,
                                     const SearchBudget& budget,
                                     bool lex_leader) {
    if (dims.empty()) throw std::invalid_argument("search_coloring: r >= 1");
    if (dims.size() > 200)
        throw std::invalid_argument("search_coloring: too many colors");
    auto pts = projective_points(g);
    ColoringDfs dfs(g, dims, pts, budget.node_limit);
    dfs.lex_leader = lex_leader;
    if (lex_leader && g.p == 2) {
        // coordinate transpositions as rank permutations
        std::vector<std::uint32_t> rank_of(g.order, UINT32_MAX);
        for (size_t k = 0; k < pts.size(); ++k) rank_of[pts[k]] = std::uint32_t(k);
        for (std::uint32_t i = 0; i < g.n; ++i)
            for (std::uint32_t j = i + 1; j < g.n; ++j) {
                std::vector<std::uint32_t> perm(pts.size());
                for (size_t k = 0; k < pts.size(); ++k) {
                    point_t x = pts[k];
                    std::uint64_t bi = (x >> i) & 1, bj = (x >> j) & 1;
                    point_t y = x & ~((point_t(1) << i) | (point_t(1) << j));
                    y |= bi << j;
                    y |= bj << i;
                    perm[k] = rank_of[y];
                }
                dfs.perms.push_back(std::move(perm));
            }
    }
    bool found = dfs.run(0);
    if (found) {
        Coloring c{g, int(dims.size()), dfs.colors};
        return {SearchStatus::Found, std::move(c), dfs.nodes};
    }
    if (dfs.exhausted) return {SearchStatus::Exhausted, std::nullopt, dfs.nodes};
    return {SearchStatus::None, std::nullopt, dfs.nodes};
}

namespace {

bool coloring_valid(const Coloring& c, std::span<const std::uint32_t> dims) {
    for (size_t i = 0; i < dims.size(); ++i)
        if (dims[i] <= c.spec.n && mono_witness(c, int(i + 1), dims[i]))
            return false;
    return true;
}

}  // namespace

BridgeRecord bridge_coloring_to_set(const Coloring& c, std::uint32_t d,
                                    GroupSet& s_out) {
    const GroupSpec& g = c.spec;
    if (g.p != 2)
        throw std::invalid_argument("bridge: p = 2 only");
    std::uint32_t dims_arr[2] = {2, d};
    if (!coloring_valid(c, dims_arr)) {
        return {false, "coloring is not valid for dims=(2,d)", Rat(0)};
    }
    GroupSet s(g);
    auto pts = projective_points(g);
    for (size_t k = 0; k < pts.size(); ++k)
        if (c.colors_by_rank[k] == 1) s.set(pts[k]);
    s_out = s;
    BridgeRecord rec;
    rec.mu = density(s);
    if (sum_free_violation(s)) {
        return {false, "S is not sum-free", rec.mu};
    }
    GroupSet ss = sumset(s, s);
    if (ss.test(0)) {
        auto ms = max_subspace_in(ss);
        if (ms && std::uint32_t(ms->dim) >= d)
            return {false, "S+S contains a d-space", rec.mu};
    }
    auto msc = max_subspace_in(s.complement());
    if (msc && std::uint32_t(msc->dim) >= d)
        return {false, "S^c contains a d-space", rec.mu};
    if (d <= g.n && rec.mu < Rat(1, int128(1) << d))
        return {false, "mu(S) < 2^-d", rec.mu};
    rec.ok = true;
    return rec;
}

BridgeRecord bridge_set_to_coloring(const GroupSet& s, std::uint32_t d,
                                    std::optional<Coloring>& coloring_out) {
    const GroupSpec& g = s.spec();
    if (g.p != 2) throw std::invalid_argument("bridge: p = 2 only");
    BridgeRecord rec;
    rec.mu = density(s);
    if (s.test(0)) return {false, "0 lies in S", rec.mu};
    if (sum_free_violation(s))
        return {false, "S is not sum-free", rec.mu};
    auto msc = max_subspace_in(s.complement());
    if (msc && std::uint32_t(msc->dim) >= d)
        return {false, "G\\S contains a d-space", rec.mu};
    auto pts = projective_points(g);
    Coloring c{g, 2, std::vector<std::uint8_t>(pts.size(), 2)};
    for (size_t k = 0; k < pts.size(); ++k)
        if (s.test(pts[k])) c.colors_by_rank[k] = 1;
    std::uint32_t dims_arr[2] = {2, d};
    if (!coloring_valid(c, dims_arr))
        return {false, "emitted coloring failed validity", rec.mu};
    coloring_out = std::move(c);
    rec.ok = true;
    return rec;
}

RamseyResult ramsey_value(std::uint32_t p, std::span<const std::uint32_t> dims,
                          std::uint32_t n_max, const SearchBudget& budget) {
    RamseyResult res;
    res.dims.assign(dims.begin(), dims.end());
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        GroupSpec g = GroupSpec::make(p, n);
        auto sr = search_coloring(g, dims, budget);
        if (sr.status == SearchStatus::Found) {
            res.lo = int(n) + 1;
            res.witnesses.emplace_back(int(n), *sr.coloring);
            res.log.push_back("n=" + std::to_string(n) + ": witness found, nodes=" +
                              std::to_string(sr.nodes));
        } else if (sr.status == SearchStatus::None) {
            res.exact = int(n);
            res.hi = int(n);
            res.log.push_back("n=" + std::to_string(n) + ": UNSAT by exhaustive DFS, nodes=" +
                              std::to_string(sr.nodes));
            return res;
        } else {
            res.log.push_back("n=" + std::to_string(n) + ": budget exhausted, nodes=" +
                              std::to_string(sr.nodes));
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// union bound certification

namespace {

cpp_int gaussian_binomial_big(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0;
    cpp_int num = 1, den = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        num *= (cpp_int(1) << (n - i)) - 1;
        den *= (cpp_int(1) << (k - i)) - 1;
    }
    return num / den;
}

// round-up dyadic float: value = m * 2^e with m in [2^63, 2^64) or m = 0.
// Every operation rounds up, so computed values bound the true ones from
// above and "sum < 1" certifications are sound.
struct UBF {
    std::uint64_t m = 0;
    std::int64_t e = 0;

    static UBF zero() { return {0, 0}; }
    static UBF from_u64(std::uint64_t v) {
        if (v == 0) return zero();
        int lz = __builtin_clzll(v);
        return {v << lz, -std::int64_t(lz)};
    }
    static UBF from_big(const cpp_int& v) {
        if (v == 0) return zero();
        std::size_t bits = boost::multiprecision::msb(v) + 1;
        if (bits <= 64) return from_u64(v.convert_to<std::uint64_t>());
        cpp_int top = v >> (bits - 64);
        std::uint64_t m = top.convert_to<std::uint64_t>();
        bool trunc = (v - (top << (bits - 64))) != 0;
        UBF r{m, std::int64_t(bits) - 64};
        if (trunc) r = r.next_up();
        return r;
    }
    UBF next_up() const {
        if (m == UINT64_MAX) return {std::uint64_t(1) << 63, e + 1};
        return {m + 1, e};
    }
    UBF scale2(std::int64_t k) const { return {m, e + k}; }

    friend UBF mul_up(const UBF& a, const UBF& b) {
        if (a.m == 0 || b.m == 0) return zero();
        uint128 p = uint128(a.m) * b.m;  // in [2^126, 2^128)
        int shift = (p >> 127) ? 64 : 63;
        std::uint64_t m = std::uint64_t(p >> shift);
        bool trunc = (p & ((uint128(1) << shift) - 1)) != 0;
        UBF r{m, a.e + b.e + shift};
        if (trunc) r = r.next_up();
        return r;
    }
    friend UBF add_up(const UBF& a, const UBF& b) {
        if (a.m == 0) return b;
        if (b.m == 0) return a;
        const UBF& hi = a.e >= b.e ? a : b;
        const UBF& lo = a.e >= b.e ? b : a;
        std::int64_t d = hi.e - lo.e;
        if (d >= 64) return hi.next_up();  // lo < ulp(hi)
        std::uint64_t shifted = lo.m >> d;
        bool trunc = d > 0 && (lo.m & ((std::uint64_t(1) << d) - 1)) != 0;
        uint128 sum = uint128(hi.m) + shifted + (trunc ? 1 : 0);
        if (sum >> 64) {
            std::uint64_t m = std::uint64_t(sum >> 1);
            bool t2 = (sum & 1) != 0;
            UBF r{m, hi.e + 1};
            return t2 ? r.next_up() : r;
        }
        return {std::uint64_t(sum), hi.e};
    }
    bool less_than_one() const { return m == 0 || e <= -64; }
};

// upper bound of base^exp by square-and-multiply, all round-up
UBF pow_up(UBF base, std::uint64_t exp) {
    UBF acc = UBF::from_u64(1);
    while (exp) {
        if (exp & 1) acc = mul_up(acc, base);
        base = mul_up(base, base);
        exp >>= 1;
    }
    return acc;
}

struct UnionBoundCache {
    std::uint32_t d;
    UBF g2, gd;  // upper bounds of the two counts at the current n
};

// certified: exists q on the grid with G2 q^3 + Gd (1-q)^(2^d-1) < 1
bool union_feasible(std::uint32_t n, std::uint32_t d) {
    UBF g2 = UBF::from_big(gaussian_binomial_big(n, 2));
    UBF gd = UBF::from_big(gaussian_binomial_big(n, std::min(d, n)));
    if (d > n) gd = UBF::zero();
    const std::uint64_t expo = (std::uint64_t(1) << std::min<std::uint32_t>(d, 62)) - 1;

    auto sum_at = [&](std::uint64_t k, std::int64_t e) -> UBF {
        // q = k * 2^-e, 1-q = (2^e - k) * 2^-e exactly
        UBF q = UBF::from_u64(k).scale2(-e);
        UBF one_minus_q = UBF::from_big((cpp_int(1) << e) - k).scale2(-e);
        UBF t1 = mul_up(g2, mul_up(q, mul_up(q, q)));
        UBF t2 = mul_up(gd, pow_up(one_minus_q, expo));
        return add_up(t1, t2);
    };
    auto less = [](const UBF& a, const UBF& b) {
        if (a.m == 0) return b.m != 0;
        if (b.m == 0) return false;
        if (a.e != b.e) return a.e < b.e;
        return a.m < b.m;
    };

    const std::int64_t e_max = std::int64_t(d) + 24;
    for (std::int64_t e = 16; e <= e_max; ++e) {
        // the true sum is convex in q; ternary over the mantissa, plus a
        // coarse sweep in case rounding dents the shape
        std::uint64_t lo = std::uint64_t(1) << 15, hi = (std::uint64_t(1) << 16) - 1;
        while (hi - lo > 2) {
            std::uint64_t m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            UBF s1 = sum_at(m1, e), s2 = sum_at(m2, e);
            if (s1.less_than_one() || s2.less_than_one()) return true;
            if (less(s1, s2))
                hi = m2;
            else
                lo = m1;
        }
        for (std::uint64_t k = lo; k <= hi; ++k)
            if (sum_at(k, e).less_than_one()) return true;
        for (std::uint64_t k = std::uint64_t(1) << 15;
             k < (std::uint64_t(1) << 16); k += 1024)
            if (sum_at(k, e).less_than_one()) return true;
    }
    return false;
}

}  // namespace

int union_bound_lower(std::uint32_t d) {
    if (d < 2) throw std::invalid_argument("union_bound_lower: d >= 2");
    int best = 0;
    for (std::uint32_t n = 1;; ++n) {
        if (union_feasible(n, d))
            best = int(n);
        else
            return best;  // feasibility is monotone decreasing in n
        if (n > 4 * d + 64) return best;  // safety stop
    }
}

std::vector<BoundRow> bound_table(std::uint32_t d, const Rat& c) {
    if (!(c > Rat(0))) throw std::invalid_argument("bound_table: c > 0");
    std::vector<BoundRow> rows;
    double cd = c.to_double();
    for (std::uint32_t k = 1; k <= d; ++k) {
        BoundRow r;
        r.d = k;
        r.sanders = double(k) / cd * std::pow(2.0, double(k));
        r.nn = double(k + 1) * std::pow(2.0, double(k));
        r.fy = std::pow(1.566, double(k));
        r.poly = cd * std::pow(double(k), 7.0);
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------

PipelineCertificate multicolor_pipeline(std::span<const GroupSet> as,
                                        std::uint32_t d) {
    if (as.empty()) throw std::invalid_argument("pipeline: no sets");
    const GroupSpec& g = as[0].spec();
    const std::uint32_t r = std::uint32_t(as.size());
    PipelineCertificate cert(g);

    std::vector<GroupSet> dilated;
    for (std::uint32_t i = 0; i < r; ++i) {
        if (as[i].spec() != g)
            throw PipelineError("ambient", "pipeline: ambient mismatch");
        if (as[i].test(0))
            throw PipelineError("0 not in A_i",
                                "pipeline: set " + std::to_string(i) + " contains 0");
        auto ab = is_solution_free(as[i]);
        if (!ab)
            throw PipelineError("A_i solution-free",
                                "pipeline: set " + std::to_string(i) +
                                    " is not solution-free");
        cert.dilations.push_back(*ab);
        dilated.push_back(dilate(as[i], ab->first));
    }

    int128 denom = int128(10) * int128(r);
    for (std::uint32_t i = 0; i < d; ++i) denom *= g.p;
    DichotomyParams params;
    params.alpha = Rat(1, denom);
    params.gamma = params.alpha;

    cert.report = run_dichotomy(dilated, params);
    const Subspace& v = cert.report.final_space;

    // S_i = A_i' when Sparse, V \ (A_i' - A_i') when Expanding
    GroupSet s(g);
    for (std::uint32_t i = 0; i < r; ++i) {
        if (cert.report.statuses[i].sparse) {
            dilated[i].for_each([&](point_t x) { s.set(x); });
        } else if (cert.report.statuses[i].expanding) {
            GroupSet diff = difference_set(dilated[i], dilated[i]);
            for (std::uint64_t t = 0; t < v.size(); ++t) {
                point_t x = v.element(t);
                if (!diff.test(x)) s.set(x);
            }
        } else {
            throw PipelineError("dichotomy", "pipeline: index without status");
        }
    }
    if (s.test(0)) throw PipelineError("0 not in S", "pipeline: 0 landed in S");

    cert.mu_s = density(s, v);
    int128 bound_den = int128(10);
    for (std::uint32_t i = 0; i < d; ++i) bound_den *= g.p;
    if (!(cert.mu_s <= Rat(1, bound_den)))
        throw PipelineError("mu_V(S) <= 1/(10 p^d)",
                            "pipeline: certified density bound failed");

    if (std::uint32_t(v.dim()) < d)
        throw PipelineError("dim V >= d",
                            "pipeline: final space too small for a d-space");

    AvoidResult ar = find_subspace_avoiding(s, v, d);
    if (ar.status != SearchStatus::Found)
        throw PipelineError("find d-space avoiding S",
                            "pipeline: avoidance search failed: " + ar.reason);
    cert.vprime = *ar.witness;

    for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint64_t t = 1; t < cert.vprime.size(); ++t)
            if (as[i].test(cert.vprime.element(t)))
                throw PipelineError("V' cap A_i = {}",
                                    "pipeline: final disjointness failed at index " +
                                        std::to_string(i));
    return cert;
}

}  // namespace f2lab
