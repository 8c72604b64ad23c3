#pragma once

namespace finpart {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct GammaDigamma {
    double gamma;
    double psi;
};

/// Lanczos gamma; reflection below 1/2.  Throws GammaPole at 0, -1, -2, ...
double gamma_fn(double x);

/// Digamma via upward recurrence into the asymptotic regime, reflection for
/// negative arguments.  Relative error below ~1e-13 on [0.1, 30].
double digamma_fn(double x);

GammaDigamma gamma_digamma(double x);

/// Generalized binomial C(alpha, s) by the product recurrence
/// C(alpha, s) = C(alpha, s-1) (alpha - s + 1)/s.
double gen_binomial(double alpha, int s);

/// FPI of ∫_0^inf e^{-x} x^{-j-1} dx = (-1)^j ψ(j+1) / j!.
double fpi_exp_pole_infinite(int j);

/// FPI of ∫_0^inf e^{-x} x^{-j-1-nu} dx = (-1)^{j+1} Γ(1-ν)Γ(ν)/Γ(j+ν+1).
double fpi_exp_branch_infinite(int j, double nu);

/// Partial sum of E1(ω) = -ln ω + e^{-ω} Σ_{j<=N} ψ(j+1) ω^j / j!.
double e1_expansion(double omega, int N);

/// Partial sum of Γ(ν,ω) = Γ(ν)[1 - e^{-ω} Σ_{j<=N} ω^{j+ν}/Γ(j+ν+1)].
double igamma_expansion(double nu, double omega, int N);

} // namespace finpart
