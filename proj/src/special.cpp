#include "finpart/special.hpp"
#include "finpart/errors.hpp"

#include <cmath>

namespace finpart {

namespace {

bool near_nonpositive_integer(double x) {
    return x <= 0.0 && std::abs(x - std::round(x)) < 1e-13;
}

// Lanczos g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,    -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,  12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
    if (x < 0.5)
        return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
    x -= 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        acc += kLanczos[i] / (x + i);
    const double t = x + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

void check_branch_nu(double nu) {
    if (!(nu > 1e-8) || !(nu < 1.0 - 1e-8))
        throw DegenerateBranch("nu must lie strictly inside (0,1)");
}

} // namespace

double gamma_fn(double x) {
    if (near_nonpositive_integer(x))
        throw GammaPole("gamma pole at x = " + std::to_string(x));
    return lanczos_gamma(x);
}

double digamma_fn(double x) {
    if (near_nonpositive_integer(x))
        throw GammaPole("digamma pole at x = " + std::to_string(x));
    if (x < 0.0) // reflection: ψ(x) = ψ(1-x) - π cot(πx)
        return digamma_fn(1.0 - x) - M_PI / std::tan(M_PI * x);

    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series in 1/x^2
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = std::log(x) - 0.5 * inv;
    series -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
              inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    return acc + series;
}

GammaDigamma gamma_digamma(double x) {
    return {gamma_fn(x), digamma_fn(x)};
}

double gen_binomial(double alpha, int s) {
    if (s < 0)
        throw Error("gen_binomial: s must be >= 0");
    double c = 1.0;
    for (int k = 1; k <= s; ++k)
        c *= (alpha - k + 1) / k;
    return c;
}

double fpi_exp_pole_infinite(int j) {
    if (j < 0)
        throw Error("fpi_exp_pole_infinite: j must be >= 0");
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return sign * digamma_fn(j + 1.0) * std::exp(-std::lgamma(j + 1.0));
}

double fpi_exp_branch_infinite(int j, double nu) {
    if (j < 0)
        throw Error("fpi_exp_branch_infinite: j must be >= 0");
    check_branch_nu(nu);
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;
    return sign * gamma_fn(1.0 - nu) * gamma_fn(nu) / gamma_fn(j + nu + 1.0);
}

double e1_expansion(double omega, int N) {
    if (!(omega > 0.0))
        throw Error("e1_expansion: omega must be positive");
    double psi = -kEulerGamma; // ψ(1)
    double pow_fact = 1.0;     // ω^j / j!
    double sum = 0.0;
    for (int j = 0; j <= N; ++j) {
        sum += psi * pow_fact;
        psi += 1.0 / (j + 1.0); // ψ(j+2) = ψ(j+1) + 1/(j+1)
        pow_fact *= omega / (j + 1.0);
    }
    return -std::log(omega) + std::exp(-omega) * sum;
}

double igamma_expansion(double nu, double omega, int N) {
    check_branch_nu(nu);
    if (!(omega >= 0.0))
        throw Error("igamma_expansion: omega must be >= 0");
    double term = std::pow(omega, nu) / gamma_fn(nu + 1.0); // ω^ν/Γ(ν+1)
    double sum = 0.0;
    for (int j = 0; j <= N; ++j) {
        sum += term;
        term *= omega / (j + nu + 1.0);
    }
    return gamma_fn(nu) * (1.0 - std::exp(-omega) * sum);
}

} // namespace finpart
