#pragma once

#include <complex>

#include "f2lab/set.hpp"

namespace f2lab {

/// Exact pair counts of the difference convolution:
///   counts[x] = #{(a, b) in A x B : b - a = x},
/// the literal reading of f∘g(x) = (1/|G|) sum_y f(y) g(x+y). For p = 2
/// this is the same as a + b = x. mu_A∘mu_B(x) = |G| counts[x] / (|A||B|).
struct ConvCounts {
    GroupSpec spec;
    std::vector<std::uint64_t> counts;
    std::uint64_t card_a = 0;
    std::uint64_t card_b = 0;

    /// mu_A∘mu_B(x) as an exact rational.
    Rat mu_conv(point_t x) const {
        return Rat::of_counts(counts[x], 1) * Rat::of_counts(spec.order, 1) /
               Rat::of_counts(card_a, 1) / Rat::of_counts(card_b, 1);
    }
};

/// Auto path: fast transform when p^n >= 2^12, direct double loop below.
ConvCounts conv_counts(const GroupSet& a, const GroupSet& b);
/// O(|A||B|) oracle path, always available for cross-checks.
ConvCounts conv_counts_direct(const GroupSet& a, const GroupSet& b);
/// Transform path (exact integer WHT for p = 2, validated complex DFT
/// for p >= 3).
ConvCounts conv_counts_transform(const GroupSet& a, const GroupSet& b);

/// Exact test of mu_A∘mu_A(v) >= (1/2) mu(V)^2, i.e.
/// 2 |G|^3 counts[v] >= |A|^2 |V|^2, overflow-free.
bool popular_at_threshold(const ConvCounts& cc, point_t v,
                          std::uint64_t card_v);

/// D = {v in V : mu_A∘mu_A(v) >= (1/2) mu(V)^2}. Contains 0 whenever A
/// is nonempty. Thresholds are compared on exact integers.
GroupSet popular_difference_set(const GroupSet& a, const Subspace& v);

/// <mu_A∘mu_A, mu_C> under <f,g> = E_x[f(x) g(x)], exactly
/// |G| * sum_{x in C} counts[x] / (|A|^2 |C|). The expectation
/// normalization makes 1 the pseudorandom baseline.
Rat inner_product_mu(const GroupSet& a, const GroupSet& c);

/// Character transform coefficients; real-valued (imag = 0) for p = 2.
struct Spectrum {
    GroupSpec spec;
    std::vector<std::complex<double>> coeffs;
};

/// Unnormalized character transform: F[s] = sum_x f(x) omega^{<s,x>}
/// with omega = e^{2 pi i / p} ((-1)^{<s,x>} for p = 2). Applying the
/// conjugate transform recovers p^n * f; the convolution theorem holds
/// with these conventions.
Spectrum transform(const GroupSpec& g, std::span<const double> f);
/// Conjugate (inverse-up-to-scaling) transform.
Spectrum transform_conj(const GroupSpec& g, std::span<const std::complex<double>> f);

/// In-place integer Walsh-Hadamard transform (p = 2 only).
void wht_i64(std::vector<std::int64_t>& v);

}  // namespace f2lab
