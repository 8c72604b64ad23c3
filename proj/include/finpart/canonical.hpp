#pragma once

#include <vector>

namespace finpart {

/// A finite expansion Σ coeff_i ω^{p_i} with strictly increasing powers
/// (negative powers for the expansions at infinity).
enum class SeriesKind {
    e1_origin,
    igamma_origin,
    infinity_canonical_naive,
    infinity_canonical_corrected
};

struct SeriesTerm {
    double power = 0.0; // exponent of ω
    double coeff = 0.0;
};

struct SeriesExpansion {
    SeriesKind kind = SeriesKind::infinity_canonical_corrected;
    std::vector<SeriesTerm> terms;

    double evaluate(double omega) const;
};

/// Expansion of ∫_0^inf (1+x)^{-ν}(ω+x)^{-1} dx for ω > 1:
///   corrected = -Σ_s Γ(s+1)Γ(1-ν)/Γ(s-ν+2) ω^{-s-1}
///               + (π/sin πν) Σ_s (-1)^s C(-ν,s) ω^{-s-ν},
/// with N terms of each series.  The naive flag keeps only the second group
/// (the term-by-term FPI series with the branch contribution missing).
struct CanonicalExpansion {
    SeriesExpansion series;
    double value = 0.0;
    double branch_series_value = 0.0; // first group (0 when naive)
    double fpi_series_value = 0.0;    // second group
};
CanonicalExpansion canonical_infinity(double nu, double omega, int N,
                                      bool corrected);

/// The branch-point contribution -∫_0^1 (1-x)^{-ν}(ω-x)^{-1} dx by
/// quadrature; equals the first group of the corrected expansion up to
/// series truncation.  Requires ω > 1.
double canonical_branch_integral(double nu, double omega, double tol = 1e-11);

/// Reference value of ∫_0^inf (1+x)^{-ν}(ω+x)^{-1} dx by quadrature.
double canonical_direct(double nu, double omega, double tol = 1e-11);

/// Γ(s+1)Γ(1-ν)/Γ(s-ν+2), the branch-series coefficient magnitude.
double canonical_coeff_gamma_ratio(double nu, int s);

/// 3^s (s-1)!/(2·5···(3s-1)) for s >= 1: the ν = 1/3 branch-series
/// coefficient written with the odd product; equals
/// canonical_coeff_gamma_ratio(1/3, s-1).
double canonical_coeff_odd_product(int s);

} // namespace finpart
