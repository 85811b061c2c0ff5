#pragma once

#include "f2lab/increment.hpp"
#include "f2lab/search.hpp"

namespace f2lab {

/// Projective points of F_p^n: canonical generators of the 1-dimensional
/// subspaces (scaled so the most significant nonzero digit is 1), in
/// increasing index order. For p = 2 these are just the nonzero points.
std::vector<point_t> projective_points(const GroupSpec& g);
point_t canonical_generator(const GroupSpec& g, point_t x);

/// r-coloring of the projective points. colors_by_rank[k] in [1, r]
/// colors the k-th projective point.
struct Coloring {
    GroupSpec spec;
    int r = 0;
    std::vector<std::uint8_t> colors_by_rank;

    int color_of(point_t x) const;  // any nonzero x; looks up its line
};

struct Witness {
    int color = 0;
    Subspace space;
};

/// Exact search for a d-dimensional subspace whose 1-dimensional
/// subspaces all carry the given color (DFS over that color class only).
std::optional<Witness> mono_witness(const Coloring& c, int color,
                                    std::uint32_t d);
bool verify_witness(const Coloring& c, const Witness& w);

/// Point-coloring variant (colors indexed by group element, 0 unused):
/// a subspace is monochromatic when all its nonzero points share the
/// color. Coincides with mono_witness for p = 2.
std::optional<Subspace> mono_point_witness(const GroupSpec& g,
                                           std::span<const std::uint8_t> colors,
                                           std::uint8_t color, std::uint32_t d);

struct ColoringSearchResult {
    SearchStatus status;  // Found = valid coloring, None = UNSAT (proved)
    std::optional<Coloring> coloring;
    std::uint64_t nodes = 0;
};

/// Searches for a coloring with no color-i monochromatic d_i-space.
/// UNSAT comes from an exhausted canonical DFS. Color classes with equal
/// dims are interchangeable and broken by first-use order; lex_leader
/// additionally prunes by coordinate-transposition images (optional,
/// cross-validated against naive enumeration at small n).
ColoringSearchResult search_coloring(const GroupSpec& g,
                                     std::span<const std::uint32_t> dims,
                                     const SearchBudget& budget = {},
                                     bool lex_leader = false);

struct BridgeRecord {
    bool ok = false;
    std::string violated_clause;  // names the failing clause when !ok
    Rat mu;                       // mu(S)
};

/// Validity of a (2,d)-coloring (blue = color 1) is equivalent to its
/// blue class S being sum-free with S+S and S^c free of d-spaces and
/// mu(S) >= 2^-d. These run the checks in each direction.
BridgeRecord bridge_coloring_to_set(const Coloring& c, std::uint32_t d,
                                    GroupSet& s_out);
BridgeRecord bridge_set_to_coloring(const GroupSet& s, std::uint32_t d,
                                    std::optional<Coloring>& coloring_out);

struct RamseyResult {
    std::vector<std::uint32_t> dims;
    std::optional<int> exact;  // set when an UNSAT level was proved
    int lo = 1;                // R > lo - 1 certified by stored witnesses
    std::optional<int> hi;
    std::vector<std::pair<int, Coloring>> witnesses;  // (n, valid coloring)
    std::vector<std::string> log;                     // per-level summaries
};

/// Runs search_coloring for n = 1, 2, ...: witnesses give lower bounds,
/// the first UNSAT gives the exact value; stops at n_max with an
/// interval otherwise.
RamseyResult ramsey_value(std::uint32_t p, std::span<const std::uint32_t> dims,
                          std::uint32_t n_max, const SearchBudget& budget = {});

/// Largest n where the random-coloring union bound certifies
/// R_{F_2}(2,d) > n: some blue-probability q on the documented dyadic
/// grid has (#2-spaces) q^3 + (#d-spaces) (1-q)^(2^d-1) < 1, the counts
/// exact big-integer Gaussian binomials and the power bounded above by
/// round-up dyadic-float arithmetic, so every certification is sound.
int union_bound_lower(std::uint32_t d);

struct BoundRow {
    std::uint32_t d;
    double sanders;  // (d/c) 2^d
    double nn;       // (d+1) 2^d
    double fy;       // 1.566^d
    double poly;     // c d^7
};

/// Evaluates the four bound shapes for 1..d with user constant c.
std::vector<BoundRow> bound_table(std::uint32_t d, const Rat& c);

struct PipelineError : std::runtime_error {
    std::string clause;
    PipelineError(std::string cl, const std::string& msg)
        : std::runtime_error(msg), clause(std::move(cl)) {}
};

struct PipelineCertificate {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> dilations;  // (a_i,b_i)
    DichotomyReport report;  // dichotomy over the dilated sets
    Rat mu_s;                // certified mu_V(S)
    Subspace vprime;         // the d-space disjoint from every A_i

    PipelineCertificate(const GroupSpec& g) : report(g), vprime(g) {}
};

/// End-to-end reduction: dilate each solution-free A_i by its unit a_i,
/// run the dichotomy at alpha = gamma = 1/(10 r p^d), collect
/// S = union of (A_i' if Sparse else V \ (A_i' - A_i')), certify
/// mu_V(S) <= 1/(10 p^d) and 0 not in S, find a d-space V' <= V avoiding
/// S, and check V' cap A_i = {} directly for every i. Any certified
/// inequality failing aborts with the failing clause.
PipelineCertificate multicolor_pipeline(std::span<const GroupSet> as,
                                        std::uint32_t d);

}  // namespace f2lab
