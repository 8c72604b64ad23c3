#pragma once

#include "finpart/analytic_function.hpp"
#include "finpart/finite_part.hpp"

#include <vector>

namespace finpart {

/// ∫_0^a x^{-nu} f(x)/(omega+x) dx with omega > 0, a finite or +inf.
struct StieltjesProblem {
    AnalyticFunction f;
    double nu = 0.0;
    double omega = 1.0;
    double a = 1.0;

    bool infinite_limit() const;
    void validate_direct() const;
    void validate_expansion() const;
};

struct ExpansionResult {
    std::vector<double> partial_sums;     // S_n for n = 1..N
    double correction_term = 0.0;         // -f(-ω) ln ω  or  π f(-ω)/(ω^ν sin πν)
    std::vector<double> fpi_terms;        // FPI value for j = 0..N-1
    std::vector<double> remainder_bounds; // B_n for n = 1..N
    double reference = 0.0;               // direct quadrature
    double rho_used = 0.0;                // NaN in the entire case
    bool bounds_certified = true;         // false when a = inf (truncation estimate)

    double total() const { return partial_sums.back() + correction_term; }
};

/// Reference evaluation by adaptive quadrature (endpoint substitution at 0,
/// inverse map for the tail).  Relative error ~tol.  Throws TailDivergent
/// when a = inf and x^{-nu-1} f(x) is not integrable at infinity.
double stieltjes_direct(const StieltjesProblem& p, double tol = 1e-11);

/// Corrected term-by-term expansion at the origin.  N <= 0 selects the
/// smallest n with B_n < 1e-10, capped at 200.
ExpansionResult expand_origin(const StieltjesProblem& p, int N);
ExpansionResult expand_origin_pole(const StieltjesProblem& p, int N);
ExpansionResult expand_origin_branch(const StieltjesProblem& p, int N);

/// Residue audit for a contour excluding the pole at -omega: the excluded
/// contribution reappears in the remainder, independent of n.
struct PoleExclusionAudit {
    double residue_term = 0.0; // equals the branch correction term
    double bound_decay = 0.0;  // (omega/a)^n
};
PoleExclusionAudit pole_exclusion_audit(const StieltjesProblem& p, int n);

struct NaiveVsCorrected {
    double naive = 0.0;     // FPI terms only
    double corrected = 0.0; // naive + correction
    double missing = 0.0;   // corrected - naive
};
NaiveVsCorrected naive_vs_corrected(const StieltjesProblem& p, int N);

} // namespace finpart
