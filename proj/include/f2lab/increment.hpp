#pragma once

#include "f2lab/spectral.hpp"

namespace f2lab {

/// Parameters of the sparsity-expansion dichotomy. The increment factor
/// is 1 + c_inc with c_inc in {1/128, 1/16}, matching the two increment
/// lemma variants the engine certifies against.
struct DichotomyParams {
    Rat alpha;
    Rat gamma;
    Rat c_inc = Rat(1, 128);
    int max_step_codim = 6;
    std::uint64_t level_node_limit = std::uint64_t(1) << 33;

    void validate() const;
};

struct IndexStatus {
    bool sparse = false;     // mu_V(A_i) < alpha
    bool expanding = false;  // mu_V(D_i) > 1 - gamma
};

struct CheckResult {
    std::vector<IndexStatus> statuses;
    /// least index failing both clauses (the statuses above), if any
    std::optional<int> first_failing;
};

/// Evaluates the dichotomy statuses on V exactly. D_i is the popular
/// difference set {v in V : mu_{A_i}∘mu_{A_i}(v) >= (1/2) mu(V)^2} with
/// ambient-normalized convolution.
CheckResult check_dichotomy(std::span<const GroupSet> as, const Subspace& v,
                            const DichotomyParams& params);

struct IncrementError : std::runtime_error {
    enum class Kind { HypothesisViolated, BudgetExhausted };
    Kind kind;
    IncrementError(Kind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

struct IncrementOutcome {
    Coset coset;          // U = t + V' in ambient coordinates
    Rat mu_star_before;   // mu*_V(A)
    Rat mu_coset;         // mu_U(A), re-verified by direct count
    int codim_added = 0;
};

/// One density-increment step: requires mu*_V(A) >= alpha and failure of
/// expansion for A' = (A+g) cap V in the induced group of V (g the
/// canonical maximal-density shift). Verifies the inner-product
/// hypothesis <mu_{A'}∘mu_{A'}, mu_C> <= 1/2 with C = V \ D' exactly,
/// then finds a coset U = t + V' with mu_U(A) >= (1 + c_inc) mu*_V(A) by
/// escalating exhaustive search over codimensions 1..max_step_codim
/// inside V. The smallest attaining codimension wins; ties break by
/// subspace encoding, then canonical coset representative.
IncrementOutcome increment_step(const GroupSet& a, const Subspace& v,
                                const DichotomyParams& params);

struct TraceRow {
    int step = 0;
    int index = 0;
    int codim_added = 0;
    Rat mu_star_before;
    Rat mu_coset;
    Rat mu_star_after;
    std::vector<point_t> subspace_rows;  // V_{t+1} canonical basis
    point_t coset_rep = 0;
};

struct DichotomyReport {
    Subspace final_space;
    std::vector<IndexStatus> statuses;   // re-certified on final_space
    std::vector<TraceRow> trace;
    std::uint32_t achieved_codim = 0;
    std::uint64_t paper_codim_budget = 0;  // r * L(alpha)^5 * L(gamma)^2 (reported)
    bool halted_within = false;            // every per-index count <= 128 L(alpha)
    std::vector<int> steps_per_index;

    DichotomyReport(const GroupSpec& g) : final_space(g) {}
};

struct DichotomyError : std::runtime_error {
    DichotomyReport partial;
    DichotomyError(const std::string& msg, DichotomyReport r)
        : std::runtime_error(msg), partial(std::move(r)) {}
};

/// Runs the full iteration from V_0 = F_p^n: while some index fails
/// (mu*_V(A_i) >= alpha and expansion fails — the proposition's
/// hypothesis; the proof text's "<= alpha" is read as a typo), apply
/// increment_step to the least failing index and recurse into V'. The
/// final statuses are re-certified from scratch, mu* monotonicity is
/// asserted for every index at every step, and per-index step counts are
/// checked against the 128 L(alpha) halting bound.
DichotomyReport run_dichotomy(std::span<const GroupSet> as,
                              const DichotomyParams& params);

}  // namespace f2lab
