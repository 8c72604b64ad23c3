#pragma once

#include "finpart/analytic_function.hpp"
#include "finpart/contour.hpp"

#include <string>
#include <vector>

namespace finpart {

/// One term of the divergent group D_eps dropped by the finite-part
/// prescription: coeff * eps^{-power}, or coeff * ln(eps) when is_log.
struct DivergentTerm {
    double power = 0.0;
    double coeff = 0.0;
    bool is_log = false;
};

enum class FpiMethod { limit, contour, closed_form };

struct FpiResult {
    double value = 0.0;
    std::vector<DivergentTerm> dropped_divergences;
    FpiMethod method = FpiMethod::limit;
    double error_estimate = 0.0;
};

/// FPI of ∫_0^a f(x) x^{-(n+1)} dx (pole case, nu = 0, n = n_or_m >= 0) or
/// ∫_0^a f(x) x^{-(m+nu)} dx (branch case, nu in (0,1), m = n_or_m >= 1).
struct FpiProblem {
    AnalyticFunction f;
    double a = 1.0;
    int n_or_m = 0;
    BranchSpec branch;

    void validate() const;
    bool is_pole() const { return branch.is_pole(); }
};

/// Limit definition evaluated in the Taylor-subtracted form: the divergent
/// group is removed analytically and the remainder integral is absolutely
/// convergent, so no numerical eps limit is taken.
FpiResult fpi_limit(const FpiProblem& p);
FpiResult fpi_limit_pole(const FpiProblem& p);
FpiResult fpi_limit_branch(const FpiProblem& p);

/// Contour representation: (1/2πi) ∮ f(z)(log z - iπ) z^{-n-1} dz for the
/// pole case, (e^{-2πνi}-1)^{-1} ∮ f(z) z^{-m-ν} dz for the branch case.
FpiResult fpi_contour(const FpiProblem& p, const Contour& c);
FpiResult fpi_contour_pole(const FpiProblem& p, const Contour& c);
FpiResult fpi_contour_branch(const FpiProblem& p, const Contour& c);

/// FPI ∫_0^a x^{-n-nu} dx = -1/((n+nu-1) a^{n+nu-1}); ln a when n=1, nu=0.
/// Throws NotDivergent for n <= 0 (the integral converges, or has positive
/// powers only).
double fpi_monomial_closed(int n, double nu, double a);

/// A contour admissible for fpi_contour: circle(a) when every singularity of
/// f clears the disk with margin, otherwise a rectangle hugging the cut.
Contour default_contour(const AnalyticFunction& f, double a);

/// Raw eps-grid audit of the limit definition: C_eps on eps = a*2^-k,
/// k = k_min..k_max, followed by Richardson extrapolation over the
/// well-conditioned plateau.  Slower and less accurate than fpi_limit by
/// design; returns the extrapolated value.
double fpi_epsilon_diagnostic(const FpiProblem& p, int k_min = 4, int k_max = 20);

} // namespace finpart
