#pragma once

#include <functional>
#include <optional>
#include <random>

#include "f2lab/group.hpp"

namespace f2lab {

/// A linear subspace of F_p^n in canonical reduced row echelon form.
///
/// Convention: the pivot of a row is its most significant nonzero digit
/// (largest coordinate index), pivot entries are normalized to 1, all
/// other rows are zero at pivot positions, and rows are stored in
/// decreasing pivot order. Two equal subspaces therefore have identical
/// basis encodings, and reduce() of a point yields the index-least
/// element of its coset.
class Subspace {
  public:
    explicit Subspace(const GroupSpec& g) : g_(g) {}  // the zero space

    static Subspace span(const GroupSpec& g, std::span<const point_t> vs);
    static Subspace whole(const GroupSpec& g);

    const GroupSpec& ambient() const { return g_; }
    int dim() const { return int(rows_.size()); }
    std::uint32_t codim() const { return g_.n - rows_.size(); }
    std::uint64_t size() const { return g_.pow(std::uint32_t(rows_.size())); }
    const std::vector<point_t>& basis() const { return rows_; }
    const std::vector<std::uint32_t>& pivots() const { return pivots_; }

    bool contains(point_t x) const { return reduce(x) == 0; }
    /// Canonical coset representative: x minus its projection, i.e. the
    /// index-least element of x + V.
    point_t reduce(point_t x) const;

    bool operator==(const Subspace& o) const {
        return g_ == o.g_ && rows_ == o.rows_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    /// Lexicographic order on the canonical encoding (dim first, then rows).
    bool encoding_less(const Subspace& o) const;

    /// phi: F_p^dim -> V, phi(y) = sum_i digit_i(y) * row_i. A group
    /// isomorphism onto V; coordinates() inverts it for members of V.
    point_t element(std::uint64_t idx) const;
    std::uint64_t coordinates(point_t x) const;
    GroupSpec induced_spec() const {
        return GroupSpec::make(g_.p, std::uint32_t(rows_.size()));
    }

    bool contains_subspace(const Subspace& w) const;

    /// {u : <u, v> = 0 for all v in V} under the standard dot product.
    Subspace annihilator() const;

    Subspace intersect(const Subspace& w) const;

  private:
    GroupSpec g_;
    std::vector<point_t> rows_;     // RREF rows, decreasing pivot
    std::vector<std::uint32_t> pivots_;

    void insert_row(point_t x);     // maintains RREF invariants
    friend Subspace span_impl(const GroupSpec&, std::span<const point_t>);
};

/// A coset rep + V with the canonical (index-least) representative.
struct Coset {
    Subspace base;
    point_t rep;

    Coset(Subspace b, point_t any_element)
        : base(std::move(b)), rep(base.reduce(any_element)) {}
    bool contains(point_t x) const {
        return base.contains(base.ambient().sub(x, rep));
    }
    std::uint64_t size() const { return base.size(); }
};

/// Streams every k-dimensional subspace of F_p^m exactly once as raw RREF
/// rows (induced-coordinate encoding), in a fixed canonical order.
/// Returning false from the callback stops the enumeration early.
/// The row count equals the Gaussian binomial [m choose k]_p.
void enumerate_rref_bases(std::uint32_t p, std::uint32_t m, std::uint32_t k,
                          const std::function<bool(std::span<const point_t>)>& cb);

/// Streams every k-dimensional subspace of V (canonicalized in the
/// ambient group) in the canonical induced order.
void enumerate_subspaces(const Subspace& v, std::uint32_t k,
                         const std::function<bool(const Subspace&)>& cb);

/// Uniformly random d-dimensional subspace: draw d vectors, retry until
/// they are independent. Uniform because every subspace carries the same
/// number of ordered bases.
Subspace sample_uniform_subspace(const GroupSpec& g, std::uint32_t d,
                                 std::mt19937_64& rng);

/// Syndrome machinery for the coset decomposition G / V: coset_index is a
/// mixed-radix index over the annihilator functionals, coset_min_rep
/// reconstructs the canonical representative from an index.
class CosetIndexer {
  public:
    explicit CosetIndexer(const Subspace& v);
    std::uint64_t num_cosets() const { return num_cosets_; }
    std::uint64_t index_of(point_t x) const;
    point_t min_rep(std::uint64_t idx) const;

  private:
    const GroupSpec g_;
    Subspace v_;
    std::vector<point_t> duals_;          // annihilator RREF rows
    std::vector<std::uint32_t> dual_pivots_;
    std::uint64_t num_cosets_;
};

}  // namespace f2lab
