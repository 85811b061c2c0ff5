#include "f2lab/increment.hpp"

#include <algorithm>
#include <optional>

namespace f2lab {

void DichotomyParams::validate() const {
    if (!(alpha > Rat(0)) || !(alpha < Rat(1)))
        throw std::invalid_argument("dichotomy: alpha outside (0,1)");
    if (!(gamma > Rat(0)) || !(gamma < Rat(1)))
        throw std::invalid_argument("dichotomy: gamma outside (0,1)");
    if (c_inc != Rat(1, 128) && c_inc != Rat(1, 16))
        throw std::invalid_argument("dichotomy: c_inc must be 1/128 or 1/16");
    if (max_step_codim < 1)
        throw std::invalid_argument("dichotomy: max_step_codim < 1");
}

namespace {

std::uint64_t ipow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// mu_V(D_i) > 1 - gamma with D_i from ambient-normalized counts
bool expansion_holds(const Subspace& v, const ConvCounts& cc, const Rat& gamma) {
    const std::uint64_t vsize = v.size();
    std::uint64_t popular = 0;
    for (std::uint64_t i = 0; i < vsize; ++i)
        if (popular_at_threshold(cc, v.element(i), vsize)) ++popular;
    return Rat::of_counts(popular, vsize) > Rat(1) - gamma;
}

}  // namespace

CheckResult check_dichotomy(std::span<const GroupSet> as, const Subspace& v,
                            const DichotomyParams& params) {
    params.validate();
    CheckResult out;
    out.statuses.resize(as.size());
    for (size_t i = 0; i < as.size(); ++i) {
        const GroupSet& a = as[i];
        if (a.spec() != v.ambient())
            throw std::invalid_argument("check_dichotomy: ambient mismatch");
        IndexStatus st;
        st.sparse = density(a, v) < params.alpha;
        if (a.empty()) {
            st.expanding = false;
        } else {
            ConvCounts cc = conv_counts(a, a);
            st.expanding = expansion_holds(v, cc, params.gamma);
        }
        out.statuses[i] = st;
        if (!st.sparse && !st.expanding && !out.first_failing)
            out.first_failing = int(i);
    }
    return out;
}

namespace {

/// Best coset at the current codimension under the canonical tie-break
/// (subspace encoding, then representative).
struct LevelWinner {
    std::optional<Subspace> primal;
    point_t rep = 0;

    void offer(Subspace cand, point_t cand_rep) {
        if (!primal || cand.encoding_less(*primal) ||
            (cand == *primal && cand_rep < rep)) {
            primal = std::move(cand);
            rep = cand_rep;
        }
    }
};

// maps an induced-coordinate coset (dual rows + syndrome) back into the
// ambient group, shifted by the maximal-density shift
void offer_candidate(const GroupSpec& ind, const Subspace& v, point_t shift,
                     const Subspace& dual_span, std::span<const point_t> dual_rows,
                     std::uint64_t bucket, LevelWinner& win) {
    const GroupSpec& g = v.ambient();
    // particular solution: syndrome digit j goes to dual pivot j
    point_t x0 = 0;
    std::uint64_t b = bucket;
    for (size_t j = 0; j < dual_rows.size(); ++j) {
        std::uint32_t digitv = std::uint32_t(b % ind.p);
        b /= ind.p;
        if (digitv)
            x0 = ind.add(x0, ind.scale(ind.pow(dual_span.pivots()[j]), digitv));
    }
    Subspace primal_ind = dual_span.annihilator();
    std::vector<point_t> amb_rows(primal_ind.basis().size());
    for (size_t t = 0; t < amb_rows.size(); ++t)
        amb_rows[t] = v.element(primal_ind.basis()[t]);
    Subspace primal_amb = Subspace::span(g, amb_rows);
    point_t rep = primal_amb.reduce(g.add(v.element(x0), shift));
    win.offer(std::move(primal_amb), rep);
}

// WHT-backed codim-k scan (p = 2): one integer WHT of 1_{A'} up front;
// the 2^k coset counts of each dual k-space fall out of a 2^k mini-WHT
// over its span.
void scan_level_binary(const GroupSpec& ind, const std::vector<std::int64_t>& spectrum,
                       std::uint32_t k, const Rat& target, const Subspace& v,
                       point_t shift, LevelWinner& win) {
    const std::uint32_t m = ind.n;
    const uint128 rhs = uint128(std::uint64_t(target.num)) << (m - k);
    const uint128 den = uint128(std::uint64_t(target.den));
    std::vector<std::int64_t> vals(std::uint64_t(1) << k);
    enumerate_rref_bases(2, m, k, [&](std::span<const point_t> duals) {
        vals[0] = spectrum[0];
        for (std::uint32_t j = 0; j < k; ++j) {
            std::uint64_t half = std::uint64_t(1) << j;
            for (std::uint64_t t = 0; t < half; ++t) {
                std::uint64_t idx = t | half;
                point_t s = 0;
                std::uint64_t bits = idx;
                while (bits) {
                    unsigned bpos = unsigned(__builtin_ctzll(bits));
                    s ^= duals[bpos];
                    bits &= bits - 1;
                }
                vals[idx] = spectrum[s];
            }
        }
        const std::uint64_t sz = std::uint64_t(1) << k;
        for (std::uint64_t h = 1; h < sz; h <<= 1)
            for (std::uint64_t i = 0; i < sz; i += h << 1)
                for (std::uint64_t j = i; j < i + h; ++j) {
                    std::int64_t x = vals[j], y = vals[j + h];
                    vals[j] = x + y;
                    vals[j + h] = x - y;
                }
        // vals[b] = 2^k * |A' cap {x : <u_j, x> = b_j}|
        bool any = false;
        for (std::uint64_t b = 0; b < sz && !any; ++b)
            if (vals[b] > 0 && uint128(std::uint64_t(vals[b] >> k)) * den >= rhs)
                any = true;
        if (!any) return true;
        Subspace dual_span = Subspace::span(ind, duals);
        for (std::uint64_t b = 0; b < sz; ++b) {
            if (vals[b] <= 0 || uint128(std::uint64_t(vals[b] >> k)) * den < rhs)
                continue;
            offer_candidate(ind, v, shift, dual_span, duals, b, win);
        }
        return true;
    });
}

// direct syndrome-bucket scan for p >= 3
void scan_level_general(const GroupSpec& ind, const std::vector<point_t>& a_pts,
                        std::uint32_t k, const Rat& target, const Subspace& v,
                        point_t shift, LevelWinner& win) {
    const std::uint32_t m = ind.n;
    const std::uint64_t buckets = ind.pow(k);
    const std::uint64_t coset_size = ind.pow(m - k);
    std::vector<std::uint64_t> counts(buckets);
    enumerate_rref_bases(ind.p, m, k, [&](std::span<const point_t> duals) {
        std::fill(counts.begin(), counts.end(), 0);
        for (point_t x : a_pts) {
            std::uint64_t idx = 0, mul = 1;
            for (std::uint32_t j = 0; j < k; ++j) {
                idx += std::uint64_t(ind.dot(duals[j], x)) * mul;
                mul *= ind.p;
            }
            ++counts[idx];
        }
        bool any = false;
        for (std::uint64_t b = 0; b < buckets && !any; ++b)
            if (Rat::of_counts(counts[b], coset_size) >= target) any = true;
        if (!any) return true;
        Subspace dual_span = Subspace::span(ind, duals);
        for (std::uint64_t b = 0; b < buckets; ++b) {
            if (Rat::of_counts(counts[b], coset_size) < target) continue;
            offer_candidate(ind, v, shift, dual_span, duals, b, win);
        }
        return true;
    });
}

}  // namespace

IncrementOutcome increment_step(const GroupSet& a, const Subspace& v,
                                const DichotomyParams& params) {
    params.validate();
    const GroupSpec& g = a.spec();
    if (g != v.ambient())
        throw std::invalid_argument("increment_step: ambient mismatch");

    MaxDensityResult ms = maximal_density(a, v);
    if (ms.value < params.alpha)
        throw std::invalid_argument(
            "increment_step: precondition mu*_V(A) >= alpha fails");
    const point_t shift = ms.argmax_shift;

    // A' = (A + g) cap V, re-indexed into the induced group of V
    GroupSpec ind = v.induced_spec();
    GroupSet aprime(ind);
    for (std::uint64_t i = 0; i < ind.order; ++i) {
        point_t y = v.element(i);
        if (a.test(g.sub(y, shift))) aprime.set(i);
    }
    if (density(aprime) != ms.value)
        throw std::logic_error("increment_step: shifted density mismatch");

    // D' = {v : mu_{A'}∘mu_{A'}(v) >= 1/2} in the induced group, and the
    // exact inner-product hypothesis on C = V \ D'
    ConvCounts cc = conv_counts(aprime, aprime);
    std::uint64_t popular = 0, csum = 0, ccard = 0;
    for (std::uint64_t x = 0; x < ind.order; ++x) {
        bool pop = 2 * uint128(ind.order) * cc.counts[x] >=
                   uint128(aprime.card()) * aprime.card();
        if (pop) {
            ++popular;
        } else {
            csum += cc.counts[x];
            ++ccard;
        }
    }
    if (Rat::of_counts(popular, ind.order) > Rat(1) - params.gamma)
        throw std::invalid_argument(
            "increment_step: precondition fails (A' already expanding on V)");
    if (!(2 * uint128(ind.order) * csum <=
          uint128(aprime.card()) * aprime.card() * ccard))
        throw IncrementError(IncrementError::Kind::HypothesisViolated,
                             "inner-product hypothesis violated");

    Rat target = (Rat(1) + params.c_inc) * ms.value;
    const std::uint32_t m = ind.n;

    std::vector<std::int64_t> spectrum;
    std::vector<point_t> a_pts;
    if (ind.p == 2) {
        spectrum.assign(ind.order, 0);
        aprime.for_each([&](point_t x) { spectrum[x] = 1; });
        wht_i64(spectrum);
    } else {
        a_pts = aprime.points();
    }

    for (std::uint32_t k = 1; k <= std::uint32_t(params.max_step_codim) && k <= m; ++k) {
        std::uint64_t level = gaussian_binomial_u64(m, k, ind.p);
        std::uint64_t per = (ind.p == 2 ? (std::uint64_t(1) << k) * (k + 1)
                                        : std::uint64_t(a_pts.size()) * k + 1);
        if (level == UINT64_MAX || level > params.level_node_limit / (per + 1))
            throw IncrementError(
                IncrementError::Kind::BudgetExhausted,
                "increment not found within budget (codimension level too large)");
        LevelWinner win;
        if (ind.p == 2)
            scan_level_binary(ind, spectrum, k, target, v, shift, win);
        else
            scan_level_general(ind, a_pts, k, target, v, shift, win);
        if (win.primal) {
            Coset coset(*win.primal, win.rep);
            std::uint64_t hits = 0;
            for (std::uint64_t i = 0; i < coset.base.size(); ++i)
                if (a.test(g.add(coset.base.element(i), coset.rep))) ++hits;
            Rat achieved = Rat::of_counts(hits, coset.base.size());
            if (achieved < target)
                throw std::logic_error("increment_step: winner failed re-verify");
            return IncrementOutcome{std::move(coset), ms.value, achieved, int(k)};
        }
    }
    throw IncrementError(IncrementError::Kind::BudgetExhausted,
                         "increment not found within budget (max_step_codim)");
}

DichotomyReport run_dichotomy(std::span<const GroupSet> as,
                              const DichotomyParams& params) {
    params.validate();
    if (as.empty()) throw std::invalid_argument("run_dichotomy: no sets");
    const GroupSpec& g = as[0].spec();
    for (const auto& a : as)
        if (a.spec() != g)
            throw std::invalid_argument("run_dichotomy: ambient mismatch");

    DichotomyReport rep(g);
    rep.final_space = Subspace::whole(g);
    rep.steps_per_index.assign(as.size(), 0);
    const int la = ell(params.alpha);
    rep.paper_codim_budget = std::uint64_t(as.size()) *
                             ipow_u64(std::uint64_t(la), 5) *
                             ipow_u64(std::uint64_t(ell(params.gamma)), 2);

    std::vector<Rat> mu_star(as.size());
    std::vector<ConvCounts> ccs;
    ccs.reserve(as.size());
    for (size_t i = 0; i < as.size(); ++i) {
        mu_star[i] = maximal_density(as[i], rep.final_space).value;
        ccs.push_back(as[i].empty()
                          ? ConvCounts{g, std::vector<std::uint64_t>(g.order, 0), 0, 0}
                          : conv_counts(as[i], as[i]));
    }

    int step = 0;
    while (true) {
        // least failing index: mu*_V(A_i) >= alpha and expansion fails
        std::optional<int> failing;
        for (size_t i = 0; i < as.size(); ++i) {
            if (mu_star[i] < params.alpha) continue;
            if (!as[i].empty() && expansion_holds(rep.final_space, ccs[i], params.gamma))
                continue;
            failing = int(i);
            break;
        }
        if (!failing) break;
        int i = *failing;

        std::optional<IncrementOutcome> out;
        try {
            out.emplace(increment_step(as[size_t(i)], rep.final_space, params));
        } catch (const IncrementError& e) {
            throw DichotomyError(std::string("step ") + std::to_string(step) +
                                     " on index " + std::to_string(i) + ": " +
                                     e.what(),
                                 std::move(rep));
        }

        Subspace next = out->coset.base;
        TraceRow row;
        row.step = step;
        row.index = i;
        row.codim_added = out->codim_added;
        row.mu_star_before = out->mu_star_before;
        row.mu_coset = out->mu_coset;
        row.subspace_rows = next.basis();
        row.coset_rep = out->coset.rep;

        for (size_t j = 0; j < as.size(); ++j) {
            Rat nm = maximal_density(as[j], next).value;
            if (nm < mu_star[j])
                throw std::logic_error("run_dichotomy: mu* decreased (mono max violated)");
            if (int(j) == i) {
                if (nm < (Rat(1) + params.c_inc) * mu_star[j])
                    throw std::logic_error("run_dichotomy: increment below factor");
                row.mu_star_after = nm;
            }
            mu_star[j] = nm;
        }
        rep.final_space = std::move(next);
        rep.trace.push_back(std::move(row));
        ++rep.steps_per_index[size_t(i)];
        if (rep.steps_per_index[size_t(i)] > 128 * la)
            throw std::logic_error("run_dichotomy: per-index step bound exceeded");
        ++step;
    }

    rep.achieved_codim = rep.final_space.codim();
    CheckResult cr = check_dichotomy(as, rep.final_space, params);
    if (cr.first_failing)
        throw std::logic_error("run_dichotomy: final certification failed");
    rep.statuses = std::move(cr.statuses);
    rep.halted_within = true;
    for (size_t i = 0; i < as.size(); ++i)
        if (rep.steps_per_index[i] > 128 * la) rep.halted_within = false;
    return rep;
}

}  // namespace f2lab
