#include "finpart/canonical.hpp"
#include "finpart/errors.hpp"
#include "finpart/quadrature.hpp"
#include "finpart/special.hpp"

#include <algorithm>
#include <cmath>

namespace finpart {

namespace {

void check_args(double nu, double omega) {
    if (!(nu > 1e-8) || !(nu < 1.0 - 1e-8))
        throw DegenerateBranch("nu must lie strictly inside (0,1)");
    if (!(omega > 1.0))
        throw ExpansionInvalid("expansion at infinity requires omega > 1");
}

} // namespace

double SeriesExpansion::evaluate(double omega) const {
    double acc = 0.0;
    for (const auto& t : terms)
        acc += t.coeff * std::pow(omega, t.power);
    return acc;
}

CanonicalExpansion canonical_infinity(double nu, double omega, int N,
                                      bool corrected) {
    check_args(nu, omega);
    if (N < 1)
        throw Error("canonical_infinity: N must be >= 1");

    CanonicalExpansion out;
    out.series.kind = corrected ? SeriesKind::infinity_canonical_corrected
                                : SeriesKind::infinity_canonical_naive;

    const double csc = M_PI / std::sin(M_PI * nu);
    for (int s = 0; s < N; ++s) {
        const double sign = (s % 2 == 0) ? 1.0 : -1.0;
        const double fpi_coeff = csc * sign * gen_binomial(-nu, s);
        out.series.terms.push_back({-(s + nu), fpi_coeff});
        out.fpi_series_value += fpi_coeff * std::pow(omega, -(s + nu));
        if (corrected) {
            const double br_coeff = -canonical_coeff_gamma_ratio(nu, s);
            out.series.terms.push_back({-(s + 1.0), br_coeff});
            out.branch_series_value += br_coeff * std::pow(omega, -(s + 1.0));
        }
    }
    std::sort(out.series.terms.begin(), out.series.terms.end(),
              [](const SeriesTerm& a, const SeriesTerm& b) {
                  return a.power < b.power;
              });

    out.value = out.branch_series_value + out.fpi_series_value;
    return out;
}

double canonical_branch_integral(double nu, double omega, double tol) {
    check_args(nu, omega);
    // u = 1-x:  -∫_0^1 u^{-ν} (ω-1+u)^{-1} du
    const auto q = quad::integrate_power_left(
        [&](double u) { return 1.0 / (omega - 1.0 + u); }, 1.0, nu, tol);
    return -q.value;
}

double canonical_direct(double nu, double omega, double tol) {
    if (!(nu > 1e-8) || !(nu < 1.0 - 1e-8))
        throw DegenerateBranch("nu must lie strictly inside (0,1)");
    if (!(omega > 0.0))
        throw Error("canonical_direct: omega must be positive");
    const double X = std::max(4.0 * omega, 8.0);
    const auto head = quad::integrate_real(
        [&](double x) { return 1.0 / (std::pow(1.0 + x, nu) * (omega + x)); },
        0.0, X, tol * 0.5);
    // Tail: (1+x)^{-ν} = x^{-ν} (1+1/x)^{-ν}
    const auto tail = quad::integrate_stieltjes_tail(
        [&](double x) { return std::pow(1.0 + 1.0 / x, -nu); }, X, nu, omega,
        tol * 0.5);
    return head.value + tail.value;
}

double canonical_coeff_gamma_ratio(double nu, int s) {
    if (s < 0)
        throw Error("canonical_coeff_gamma_ratio: s must be >= 0");
    return gamma_fn(s + 1.0) * gamma_fn(1.0 - nu) / gamma_fn(s - nu + 2.0);
}

double canonical_coeff_odd_product(int s) {
    if (s < 1)
        throw Error("canonical_coeff_odd_product: s must be >= 1");
    double num = 1.0;   // 3^s (s-1)!
    double denom = 1.0; // 2·5···(3s-1)
    for (int k = 1; k <= s; ++k) {
        num *= 3.0 * (k == 1 ? 1.0 : k - 1.0);
        denom *= 3.0 * k - 1.0;
    }
    return num / denom;
}

} // namespace finpart
