#pragma once

#include "f2lab/search.hpp"

namespace f2lab {

struct FTableEntry {
    std::uint32_t n = 0;
    Rat alpha;
    bool exact = false;  // false: sampled upper bound on f
    int value = 0;
    std::vector<point_t> witness_points;  // extremal A attaining the value
};

struct FExactOptions {
    bool force = false;       // allow exact mode above the n <= 4 cap
    std::uint64_t trials = 0; // sampled mode when > 0
    std::uint64_t seed = 0;
    int workers = 1;
};

/// f(n, alpha): the minimum over nonempty A with mu(A) >= alpha of the
/// largest subspace dimension inside A+A. Exact mode enumerates every
/// subset (n <= 4 unless forced); sampled mode reports the worst sampled
/// A, an upper bound on f, labeled as such via exact=false.
FTableEntry f_exact(std::uint32_t n, const Rat& alpha,
                    const FExactOptions& opts = {});

struct FkResult {
    bool holds = false;
    std::vector<point_t> failing_tuple;  // (v_1..v_k) with no valid a
    bool exhausted = false;
};

/// The parallelepiped condition: for every (v_1..v_k) in V^k some
/// a in A \ V has {a + sum_{i in I} v_i : I subset [k]} inside A.
FkResult fk_check(const GroupSet& a, const Subspace& v, std::uint32_t k,
                  std::uint64_t node_limit = 500'000'000);

struct NiveauReport {
    std::uint32_t n = 0;
    Rat alpha;
    std::uint32_t weight_threshold = 0;
    Rat density;
    double c_alpha = 0;
    int sumset_max_dim = 0;
    int gap = 0;             // n - sumset_max_dim
    double c_alpha_sqrt_n = 0;
};

/// Builds the niveau set, computes the exact largest subspace inside
/// A+A, and reports the gap n - dim against C_alpha sqrt(n).
NiveauReport niveau_experiment(std::uint32_t n, const Rat& alpha);

}  // namespace f2lab
