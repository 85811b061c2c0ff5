#include "f2lab/search.hpp"

#include <chrono>

namespace f2lab {

namespace {

using Clock = std::chrono::steady_clock;

struct AvoidDfs {
    const GroupSpec g;          // induced space of V
    const std::vector<bool>& bad;  // induced indices hitting S
    std::uint32_t d;
    std::uint64_t node_limit;
    Clock::time_point deadline;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;

    std::vector<point_t> basis;
    std::vector<point_t> span_elems{0};

    bool extend_ok(point_t v) {
        // every new element c*v + w must avoid S
        for (std::uint32_t c = 1; c < g.p; ++c) {
            point_t cv = g.scale(v, c);
            for (point_t w : span_elems)
                if (bad[g.add(cv, w)]) return false;
        }
        return true;
    }

    bool run(point_t from) {
        if (basis.size() == d) return true;
        for (point_t v = from; v < g.order; ++v) {
            if (++nodes >= node_limit || (nodes % 8192 == 0 && Clock::now() > deadline)) {
                out_of_budget = true;
                return false;
            }
            if (bad[v]) continue;
            // skip members of the current span
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
            if (run(v + 1)) return true;
            basis.pop_back();
            span_elems.resize(old);
            if (out_of_budget) return false;
        }
        return false;
    }
};

Subspace map_rows_to_ambient(const Subspace& v, std::span<const point_t> rows) {
    std::vector<point_t> ambient(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) ambient[i] = v.element(rows[i]);
    return Subspace::span(v.ambient(), ambient);
}

}  // namespace

AvoidResult find_subspace_avoiding(const GroupSet& s, const Subspace& v,
                                   std::uint32_t d, const SearchBudget& budget) {
    if (s.spec() != v.ambient())
        throw std::invalid_argument("find_subspace_avoiding: ambient mismatch");
    if (int(d) > v.dim())
        throw std::invalid_argument("find_subspace_avoiding: d > dim V");
    if (s.test(0))
        return {SearchStatus::None, std::nullopt, 0,
                "0 lies in S, so every subspace meets S"};

    GroupSpec ind = v.induced_spec();
    std::vector<bool> bad(ind.order, false);
    for (std::uint64_t i = 0; i < ind.order; ++i)
        if (s.test(v.element(i))) bad[i] = true;

    if (d == 0)
        return {SearchStatus::Found, Subspace(v.ambient()), 0, ""};

    if (budget.randomized_first) {
        std::mt19937_64 rng(budget.seed);
        for (int t = 0; t < budget.random_tries; ++t) {
            Subspace cand = sample_uniform_subspace(ind, d, rng);
            bool clean = true;
            for (std::uint64_t i = 1; i < cand.size() && clean; ++i)
                if (bad[cand.element(i)]) clean = false;
            if (clean)
                return {SearchStatus::Found,
                        map_rows_to_ambient(v, cand.basis()),
                        std::uint64_t(t + 1), "randomized"};
        }
    }

    AvoidDfs dfs{ind, bad, d, budget.node_limit,
                 Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(budget.time_limit_s))};
    bool found = dfs.run(1);
    if (found)
        return {SearchStatus::Found, map_rows_to_ambient(v, dfs.basis), dfs.nodes, ""};
    if (dfs.out_of_budget)
        return {SearchStatus::Exhausted, std::nullopt, dfs.nodes,
                "budget exhausted before the search tree completed"};
    return {SearchStatus::None, std::nullopt, dfs.nodes,
            "exhaustive DFS completed without a witness"};
}

namespace {

// complete DFS maximizing the dimension of a subspace inside T (induced
// over the whole group); good[] marks members of T
struct MaxDfs {
    const GroupSpec g;
    const std::vector<bool>& good;
    std::vector<std::uint64_t> suffix_good;  // #good points with index >= i

    std::vector<point_t> basis, best_basis;
    std::vector<point_t> span_elems{0};

    bool extend_ok(point_t v) {
        for (std::uint32_t c = 1; c < g.p; ++c) {
            point_t cv = g.scale(v, c);
            for (point_t w : span_elems)
                if (!good[g.add(cv, w)]) return false;
        }
        return true;
    }

    void run(point_t from) {
        if (basis.size() > best_basis.size()) best_basis = basis;
        // future basis points are all > from; crude but sound cap
        std::uint64_t remaining = from < g.order ? suffix_good[from] : 0;
        std::uint64_t need = 1;
        size_t cap = basis.size();
        while (remaining >= need) {
            ++cap;
            need = need * g.p + 1;  // new basis points required per extra dim
        }
        if (cap <= best_basis.size()) return;
        for (point_t v = from; v < g.order; ++v) {
            if (!good[v]) continue;
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
            run(v + 1);
            basis.pop_back();
            span_elems.resize(old);
        }
    }
};

}  // namespace

std::optional<MaxSubspaceResult> max_subspace_in(const GroupSet& t) {
    if (!t.test(0)) return std::nullopt;
    const GroupSpec& g = t.spec();

    // complement as explicit points: cheap syndrome checks against duals
    std::vector<point_t> holes;
    for (std::uint64_t x = 0; x < g.order; ++x)
        if (!t.test(x)) holes.push_back(x);
    if (holes.empty())
        return MaxSubspaceResult{int(g.n), Subspace::whole(g)};

    // upper bound on the answer: p^d <= |T|
    std::uint32_t d_hi = 0;
    while (d_hi < g.n && g.pow(d_hi + 1) <= t.card()) ++d_hi;

    // scan codimensions from the top while the level is affordable
    const std::uint64_t kLevelBudget = 200'000'000;
    Subspace whole = Subspace::whole(g);
    for (std::uint32_t d = d_hi;; --d) {
        std::uint32_t k = g.n - d;
        std::uint64_t level = gaussian_binomial_u64(g.n, k, g.p);
        if (level == UINT64_MAX ||
            level > kLevelBudget / (std::uint64_t(holes.size()) * std::max(1u, k) + 1))
            break;  // too wide; fall through to the primal DFS
        std::optional<std::vector<point_t>> found_rows;
        enumerate_rref_bases(g.p, g.n, k, [&](std::span<const point_t> duals) {
            for (point_t h : holes) {
                bool nonzero = false;
                for (point_t u : duals)
                    if (g.dot(u, h) != 0) { nonzero = true; break; }
                if (!nonzero) return true;  // hole inside the candidate
            }
            found_rows = std::vector<point_t>(duals.begin(), duals.end());
            return false;
        });
        if (found_rows) {
            Subspace dual = Subspace::span(g, *found_rows);
            Subspace witness = dual.annihilator();
            // re-verify by full membership
            for (std::uint64_t i = 0; i < witness.size(); ++i)
                if (!t.test(witness.element(i)))
                    throw std::logic_error("max_subspace_in: witness failed verify");
            return MaxSubspaceResult{int(d), witness};
        }
        if (d == 0) return MaxSubspaceResult{0, Subspace(g)};
    }

    // sparse/general fallback: exact branch-and-bound from below
    std::vector<bool> good(g.order, false);
    t.for_each([&](point_t x) { good[x] = true; });
    MaxDfs dfs{g, good, {}, {}, {}, {0}};
    dfs.suffix_good.assign(g.order + 1, 0);
    for (std::uint64_t x = g.order; x-- > 0;)
        dfs.suffix_good[x] = dfs.suffix_good[x + 1] + (good[x] ? 1 : 0);
    dfs.run(1);
    std::vector<point_t> rows = dfs.best_basis;
    Subspace witness = Subspace::span(g, rows);
    for (std::uint64_t i = 0; i < witness.size(); ++i)
        if (!t.test(witness.element(i)))
            throw std::logic_error("max_subspace_in: witness failed verify");
    return MaxSubspaceResult{witness.dim(), witness};
}

GroupSet sharpness_witness(std::uint32_t n, std::uint32_t d, bool verify) {
    if (d < 1 || d > n)
        throw std::invalid_argument("sharpness_witness: need 1 <= d <= n");
    GroupSpec g = GroupSpec::make(2, n);
    std::vector<point_t> rows;
    for (std::uint32_t i = 0; i < n + 1 - d; ++i) rows.push_back(g.pow(i));
    Subspace vp = Subspace::span(g, rows);
    GroupSet s(g);
    for (std::uint64_t i = 1; i < vp.size(); ++i) s.set(vp.element(i));
    if (verify) {
        AvoidResult r = find_subspace_avoiding(s, Subspace::whole(g), d);
        if (r.status != SearchStatus::None)
            throw std::logic_error("sharpness_witness: avoidance search did not prove none");
    }
    return s;
}

}  // namespace f2lab
