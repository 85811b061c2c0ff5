#pragma once

#include "f2lab/set.hpp"

namespace f2lab {

struct SearchBudget {
    std::uint64_t node_limit = 50'000'000;
    double time_limit_s = 120.0;
    bool randomized_first = true;
    std::uint64_t seed = 0;
    int random_tries = 64;
};

enum class SearchStatus { Found, None, Exhausted };

struct AvoidResult {
    SearchStatus status;
    std::optional<Subspace> witness;  // set iff Found
    std::uint64_t nodes = 0;
    std::string reason;  // human-readable detail for None/Exhausted
};

/// Searches for a d-dimensional W <= V with W disjoint from S (apart from
/// nothing: 0 must not lie in S, or the answer is an immediate proved
/// "none"). A randomized pass runs first by default; the exhaustive DFS
/// is the completeness backstop, so "None" is a proof and "Exhausted" is
/// reported distinctly. In the Bose-Burton regime mu_V(S) < 1/2^d the
/// exact search always succeeds.
AvoidResult find_subspace_avoiding(const GroupSet& s, const Subspace& v,
                                   std::uint32_t d,
                                   const SearchBudget& budget = {});

struct MaxSubspaceResult {
    int dim = 0;
    Subspace witness;
};

/// Exact maximum dimension of a subspace contained in T, with a witness
/// re-verified element-by-element. nullopt iff 0 is not in T. Dense T is
/// resolved by scanning small-codimension duals against the complement;
/// sparse T by a canonical-basis DFS from below.
std::optional<MaxSubspaceResult> max_subspace_in(const GroupSet& t);

/// S = V' \ {0} for a canonical subspace V' of dimension n+1-d: meets
/// every d-dimensional subspace, so no d-space avoids it. With verify
/// set, the avoidance search is run and must prove "none".
GroupSet sharpness_witness(std::uint32_t n, std::uint32_t d,
                           bool verify = false);

}  // namespace f2lab
