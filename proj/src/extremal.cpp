#include "f2lab/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace f2lab {

namespace {

// subspaces of F_2^n as element masks, grouped by dim descending
std::vector<std::vector<std::uint64_t>> subspace_masks_by_dim(std::uint32_t n) {
    GroupSpec g = GroupSpec::make(2, n);
    std::vector<std::vector<std::uint64_t>> by_dim(n + 1);
    Subspace whole = Subspace::whole(g);
    for (std::uint32_t k = 0; k <= n; ++k)
        enumerate_subspaces(whole, k, [&](const Subspace& v) {
            std::uint64_t mask = 0;
            for (std::uint64_t i = 0; i < v.size(); ++i)
                mask |= std::uint64_t(1) << v.element(i);
            by_dim[k].push_back(mask);
            return true;
        });
    return by_dim;
}

// A+A of a mask-encoded subset of F_2^n (n <= 6)
std::uint64_t sumset_mask(std::uint64_t a, std::uint32_t n) {
    std::uint64_t out = 0;
    std::uint64_t rest = a;
    while (rest) {
        unsigned x = unsigned(__builtin_ctzll(rest));
        rest &= rest - 1;
        // xor-shift the whole mask by x
        std::uint64_t m = a, shifted = 0;
        while (m) {
            unsigned y = unsigned(__builtin_ctzll(m));
            m &= m - 1;
            shifted |= std::uint64_t(1) << (x ^ y);
        }
        out |= shifted;
    }
    (void)n;
    return out;
}

int max_dim_in_mask(std::uint64_t t,
                    const std::vector<std::vector<std::uint64_t>>& by_dim) {
    for (int d = int(by_dim.size()) - 1; d >= 0; --d)
        for (std::uint64_t sub : by_dim[size_t(d)])
            if ((sub & ~t) == 0) return d;
    return 0;
}

}  // namespace

FTableEntry f_exact(std::uint32_t n, const Rat& alpha,
                    const FExactOptions& opts) {
    if (!(alpha > Rat(0)) || alpha > Rat(1))
        throw std::invalid_argument("f_exact: alpha outside (0,1]");
    GroupSpec g = GroupSpec::make(2, n);

    if (opts.trials > 0) {
        // sampled upper bound: worst A among random subsets of the
        // minimum admissible cardinality
        std::uint64_t min_card = 1;
        while (Rat::of_counts(min_card, g.order) < alpha) ++min_card;
        std::mt19937_64 rng(opts.seed);
        std::vector<point_t> pool(g.order);
        for (std::uint64_t i = 0; i < g.order; ++i) pool[i] = i;
        FTableEntry best;
        best.n = n;
        best.alpha = alpha;
        best.exact = false;
        best.value = int(n) + 1;
        for (std::uint64_t t = 0; t < opts.trials; ++t) {
            std::shuffle(pool.begin(), pool.end(), rng);
            GroupSet a(g);
            for (std::uint64_t i = 0; i < min_card; ++i) a.set(pool[i]);
            auto ms = max_subspace_in(sumset(a, a));
            int val = ms ? ms->dim : 0;
            if (val < best.value) {
                best.value = val;
                best.witness_points = a.points();
            }
        }
        return best;
    }

    if (n > 4 && !opts.force)
        throw std::invalid_argument(
            "f_exact: exact mode capped at n <= 4 (use force or sampled mode)");
    if (n > 5)
        throw std::invalid_argument("f_exact: exact mode infeasible for n > 5");

    auto by_dim = subspace_masks_by_dim(n);
    std::uint64_t min_card = 1;
    while (Rat::of_counts(min_card, g.order) < alpha) ++min_card;

    const std::uint64_t total = std::uint64_t(1) << g.order;
    const int workers = std::max(1, opts.workers);
    std::vector<int> best_val(size_t(workers), int(n) + 1);
    std::vector<std::uint64_t> best_mask(size_t(workers), 0);
    auto worker = [&](int w) {
        std::uint64_t begin = 1 + (total - 1) * std::uint64_t(w) / std::uint64_t(workers);
        std::uint64_t end = 1 + (total - 1) * std::uint64_t(w + 1) / std::uint64_t(workers);
        int local_best = int(n) + 1;
        std::uint64_t local_mask = 0;
        for (std::uint64_t a = begin; a < end; ++a) {
            if (std::uint64_t(__builtin_popcountll(a)) < min_card) continue;
            int d = max_dim_in_mask(sumset_mask(a, n), by_dim);
            if (d < local_best) {
                local_best = d;
                local_mask = a;
            }
        }
        best_val[size_t(w)] = local_best;
        best_mask[size_t(w)] = local_mask;
    };
    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> ts;
        for (int w = 0; w < workers; ++w) ts.emplace_back(worker, w);
        for (auto& t : ts) t.join();
    }
    FTableEntry entry;
    entry.n = n;
    entry.alpha = alpha;
    entry.exact = true;
    entry.value = int(n) + 1;
    std::uint64_t winner = 0;
    for (int w = 0; w < workers; ++w) {
        // deterministic reduction: smaller value wins, then smaller mask
        if (best_val[size_t(w)] < entry.value ||
            (best_val[size_t(w)] == entry.value &&
             (winner == 0 || best_mask[size_t(w)] < winner))) {
            entry.value = best_val[size_t(w)];
            winner = best_mask[size_t(w)];
        }
    }
    if (winner == 0)
        throw std::invalid_argument("f_exact: no admissible A at this alpha");
    for (std::uint32_t x = 0; x < g.order; ++x)
        if ((winner >> x) & 1) entry.witness_points.push_back(x);
    return entry;
}

FkResult fk_check(const GroupSet& a, const Subspace& v, std::uint32_t k,
                  std::uint64_t node_limit) {
    if (k < 1) throw std::invalid_argument("fk_check: k >= 1");
    const GroupSpec& g = a.spec();
    if (g != v.ambient()) throw std::invalid_argument("fk_check: ambient mismatch");

    std::vector<point_t> candidates;  // A \ V
    a.for_each([&](point_t x) {
        if (!v.contains(x)) candidates.push_back(x);
    });

    const std::uint64_t vsize = v.size();
    std::uint64_t tuples = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (tuples > node_limit / vsize + 1) return {false, {}, true};
        tuples *= vsize;
    }

    std::vector<point_t> tuple(k), subset_sums(std::uint64_t(1) << k);
    std::uint64_t nodes = 0;
    for (std::uint64_t ti = 0; ti < tuples; ++ti) {
        std::uint64_t t = ti;
        for (std::uint32_t i = 0; i < k; ++i) {
            tuple[i] = v.element(t % vsize);
            t /= vsize;
        }
        subset_sums[0] = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint64_t half = std::uint64_t(1) << i;
            for (std::uint64_t s = 0; s < half; ++s)
                subset_sums[s | half] = g.add(subset_sums[s], tuple[i]);
        }
        bool tuple_ok = false;
        for (point_t base : candidates) {
            bool all_in = true;
            for (std::uint64_t s = 0; s < subset_sums.size() && all_in; ++s)
                if (!a.test(g.add(base, subset_sums[s]))) all_in = false;
            if (++nodes > node_limit) return {false, {}, true};
            if (all_in) {
                tuple_ok = true;
                break;
            }
        }
        if (!tuple_ok) return {false, tuple, false};
    }
    return {true, {}, false};
}

NiveauReport niveau_experiment(std::uint32_t n, const Rat& alpha) {
    NiveauSet ns = niveau_set(n, alpha);
    GroupSet t = sumset(ns.set, ns.set);
    auto ms = max_subspace_in(t);
    NiveauReport rep;
    rep.n = n;
    rep.alpha = alpha;
    rep.weight_threshold = ns.weight_threshold;
    rep.density = ns.density;
    rep.c_alpha = ns.c_alpha;
    rep.sumset_max_dim = ms ? ms->dim : 0;
    rep.gap = int(n) - rep.sumset_max_dim;
    rep.c_alpha_sqrt_n = ns.c_alpha * std::sqrt(double(n));
    return rep;
}

}  // namespace f2lab
