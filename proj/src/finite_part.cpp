#include "finpart/finite_part.hpp"
#include "finpart/errors.hpp"
#include "finpart/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace finpart {

namespace {

constexpr double kQuadTol = 1e-12;

/// Switch point between the Taylor-series piece and direct quadrature of the
/// subtracted remainder.  Must stay below zeta0 for series convergence and
/// below ~1 so alternating built-ins do not cancel catastrophically.
double series_cut(const FpiProblem& p) {
    return 0.5 * std::min({p.a, p.f.zeta0(), 2.0});
}

/// Taylor coefficients c_0..c_max as reals (the theorems assume f real on
/// the interval, so imaginary parts are discarded).
std::vector<double> coeffs(const AnalyticFunction& f, int max) {
    std::vector<double> c(max + 1);
    for (int k = 0; k <= max; ++k)
        c[k] = f.taylor(k).real();
    return c;
}

double horner(const std::vector<double>& c, int up_to, double x) {
    double acc = 0.0;
    for (int k = up_to; k >= 0; --k)
        acc = acc * x + c[k];
    return acc;
}

/// ∫_0^{x0} Σ_{k>=k0} c_k x^{k-k0+shift} dx summed term by term with exact
/// antiderivatives: Σ c_k x0^{k-k0+shift+1} / (k-k0+shift+1), shift = -nu.
/// Converges geometrically because x0 < zeta0.
double series_piece(const AnalyticFunction& f, int k0, double nu, double x0,
                    double& trunc_err) {
    double sum = 0.0;
    double x_pow = std::pow(x0, 1.0 - nu);
    int tiny_streak = 0;
    for (int k = k0; k < k0 + 600; ++k) {
        const double ck = f.taylor(k).real();
        const double term = ck * x_pow / (k - k0 + 1.0 - nu);
        sum += term;
        x_pow *= x0;
        if (std::abs(term) <= 1e-17 * (1.0 + std::abs(sum))) {
            if (++tiny_streak >= 3) { // streak guards functions with zero runs
                trunc_err = std::abs(term);
                return sum;
            }
        } else {
            tiny_streak = 0;
        }
    }
    throw QuadratureFailure("Taylor tail failed to converge below x0 for " +
                                f.label(),
                            sum, std::abs(sum));
}

/// Divergent group of ∫_eps^a, recorded for diagnostics.  Terms whose
/// coefficient is numerically zero are omitted so convergent inputs report
/// an empty list (coefficients from Cauchy extraction carry ~1e-12 noise).
std::vector<DivergentTerm> dropped_terms(const std::vector<double>& c, int n_or_m,
                                         double nu, bool pole) {
    double scale = 0.0;
    for (double v : c)
        scale = std::max(scale, std::abs(v));
    const double floor = 1e-11 * (1.0 + scale);

    std::vector<DivergentTerm> out;
    for (int k = 0; k < n_or_m; ++k) {
        const double power = pole ? double(n_or_m - k) : (n_or_m + nu - k - 1.0);
        const double coeff = c[k] / power;
        if (std::abs(coeff) > floor)
            out.push_back({power, coeff, false});
    }
    if (pole && std::abs(c[n_or_m]) > floor)
        out.push_back({0.0, -c[n_or_m], true});
    return out;
}

double imag_tolerance(double value) { return 1e-9 * (1.0 + std::abs(value)); }

void check_contour_hypotheses(const FpiProblem& p, const Contour& c) {
    if (std::abs(c.upper_limit() - p.a) > 1e-12 * p.a)
        throw InvalidContour("contour endpoint " + std::to_string(c.upper_limit()) +
                             " does not match a = " + std::to_string(p.a));
    for (const auto& pole : p.f.poles()) {
        if (c.distance_to(pole.location) < 1e-9 * c.scale())
            throw InvalidContour("pole of " + p.f.label() + " lies on the contour");
        if (c.encloses(pole.location))
            throw InvalidContour("contour encloses a pole of " + p.f.label());
    }
}

} // namespace

void FpiProblem::validate() const {
    branch.validate();
    if (!(a > 0.0))
        throw Error("fpi: a must be positive");
    if (is_pole()) {
        if (n_or_m < 0)
            throw Error("fpi pole case needs n >= 0");
    } else {
        if (n_or_m < 1)
            throw Error("fpi branch case needs m >= 1");
    }
}

FpiResult fpi_limit(const FpiProblem& p) {
    return p.is_pole() ? fpi_limit_pole(p) : fpi_limit_branch(p);
}

FpiResult fpi_limit_pole(const FpiProblem& p) {
    p.validate();
    const int n = p.n_or_m;
    const auto c = coeffs(p.f, n);

    double head = 0.0;
    for (int k = 0; k < n; ++k)
        head -= c[k] / ((n - k) * std::pow(p.a, n - k));
    head += c[n] * std::log(p.a);

    const double x0 = series_cut(p);
    double trunc = 0.0;
    const double series = series_piece(p.f, n + 1, 0.0, x0, trunc);
    const auto quad = quad::integrate_real(
        [&](double x) {
            return (p.f.eval_real(x) - horner(c, n, x)) / std::pow(x, n + 1);
        },
        x0, p.a, kQuadTol);

    FpiResult r;
    r.value = head + series + quad.value;
    r.method = FpiMethod::limit;
    r.error_estimate = quad.abs_error_estimate + trunc;
    r.dropped_divergences = dropped_terms(c, n, 0.0, true);
    return r;
}

FpiResult fpi_limit_branch(const FpiProblem& p) {
    p.validate();
    const int m = p.n_or_m;
    const double nu = p.branch.nu;
    const auto c = coeffs(p.f, m - 1);

    double head = 0.0;
    for (int j = 0; j < m; ++j)
        head -= c[j] / ((m + nu - j - 1.0) * std::pow(p.a, m + nu - j - 1.0));

    const double x0 = series_cut(p);
    double trunc = 0.0;
    const double series = series_piece(p.f, m, nu, x0, trunc);
    const auto quad = quad::integrate_real(
        [&](double x) {
            return (p.f.eval_real(x) - horner(c, m - 1, x)) / std::pow(x, m + nu);
        },
        x0, p.a, kQuadTol);

    FpiResult r;
    r.value = head + series + quad.value;
    r.method = FpiMethod::limit;
    r.error_estimate = quad.abs_error_estimate + trunc;
    r.dropped_divergences = dropped_terms(c, m, nu, false);
    return r;
}

FpiResult fpi_contour(const FpiProblem& p, const Contour& c) {
    return p.is_pole() ? fpi_contour_pole(p, c) : fpi_contour_branch(p, c);
}

FpiResult fpi_contour_pole(const FpiProblem& p, const Contour& c) {
    p.validate();
    check_contour_hypotheses(p, c);
    const int n = p.n_or_m;

    const auto q = integrate_contour(
        [&](Complex z, double arg) {
            const Complex log_term = BranchSpec::log_cut(z, arg) - Complex(0.0, M_PI);
            return p.f.eval(z) * log_term / std::pow(z, n + 1);
        },
        c, 1e-11);

    const Complex value = q.value / Complex(0.0, 2.0 * M_PI);
    if (std::abs(value.imag()) > imag_tolerance(value.real()) + q.abs_error_estimate)
        throw QuadratureFailure("contour FPI returned a non-real value", value,
                                q.abs_error_estimate);

    FpiResult r;
    r.value = value.real();
    r.method = FpiMethod::contour;
    r.error_estimate = q.abs_error_estimate / (2.0 * M_PI);
    r.dropped_divergences = dropped_terms(coeffs(p.f, n), n, 0.0, true);
    return r;
}

FpiResult fpi_contour_branch(const FpiProblem& p, const Contour& c) {
    p.validate();
    check_contour_hypotheses(p, c);
    const int m = p.n_or_m;
    const double nu = p.branch.nu;

    const auto q = integrate_contour(
        [&](Complex z, double arg) {
            return p.f.eval(z) * BranchSpec::pow_cut(z, arg, m + nu);
        },
        c, 1e-11);

    const Complex factor = std::exp(Complex(0.0, -2.0 * M_PI * nu)) - 1.0;
    const Complex value = q.value / factor;
    const double err = q.abs_error_estimate / std::abs(factor);
    if (std::abs(value.imag()) > imag_tolerance(value.real()) + err)
        throw QuadratureFailure("contour FPI returned a non-real value", value, err);

    FpiResult r;
    r.value = value.real();
    r.method = FpiMethod::contour;
    r.error_estimate = err;
    r.dropped_divergences = dropped_terms(coeffs(p.f, m - 1), m, nu, false);
    return r;
}

double fpi_monomial_closed(int n, double nu, double a) {
    BranchSpec{nu}.validate();
    if (!(a > 0.0))
        throw Error("fpi_monomial_closed: a must be positive");
    if (n <= 0)
        throw NotDivergent("x^{-n-nu} with n <= 0 is integrable at the origin");
    if (n == 1 && nu < BranchSpec::kNuEps)
        return std::log(a);
    return -1.0 / ((n + nu - 1.0) * std::pow(a, n + nu - 1.0));
}

Contour default_contour(const AnalyticFunction& f, double a) {
    double clearance = f.zeta0();
    for (const auto& p : f.poles())
        clearance = std::min(clearance, std::abs(p.location));
    if (clearance >= 1.25 * a)
        return Contour::circle(a);
    return Contour::rectangle(a, 0.5 * std::min(clearance, a));
}

double fpi_epsilon_diagnostic(const FpiProblem& p, int k_min, int k_max) {
    p.validate();
    const bool pole = p.is_pole();
    const int nm = p.n_or_m;
    const double nu = p.branch.nu;
    const double total_pow = pole ? nm + 1.0 : nm + nu;
    const auto c = coeffs(p.f, pole ? nm : nm - 1);

    // C_eps = ∫_eps^a f x^{-(total)} dx - D_eps, computed the raw way.
    std::vector<double> vals;
    for (int k = k_min; k <= k_max; ++k) {
        const double eps = p.a * std::pow(2.0, -k);
        const auto q = quad::integrate_real(
            [&](double x) { return p.f.eval_real(x) / std::pow(x, total_pow); },
            eps, p.a, 1e-13, 20000);
        double d_eps = 0.0;
        for (int j = 0; j < nm; ++j) {
            const double power = pole ? double(nm - j) : (nm + nu - j - 1.0);
            d_eps += c[j] / power * std::pow(eps, -power);
        }
        if (pole)
            d_eps -= c[nm] * std::log(eps);
        vals.push_back(q.value - d_eps);
    }

    // Keep the monotone-improvement plateau; roundoff wrecks the smallest eps.
    std::size_t usable = vals.size();
    for (std::size_t i = 2; i < vals.size(); ++i) {
        const double step_prev = std::abs(vals[i - 1] - vals[i - 2]);
        const double step = std::abs(vals[i] - vals[i - 1]);
        if (step > 4.0 * step_prev && step_prev > 0.0) {
            usable = i;
            break;
        }
    }
    vals.resize(std::max<std::size_t>(usable, 3));

    // Richardson on exponents (1-nu), (2-nu), (3-nu) for eps halving
    // (nu = 0 covers the pole case, whose error is O(eps)).
    std::vector<double> table = vals;
    for (int level = 0; level < 3; ++level) {
        const double ratio = std::pow(2.0, -(level + 1.0 - nu));
        std::vector<double> next;
        for (std::size_t i = 0; i + 1 < table.size(); ++i)
            next.push_back((table[i + 1] - ratio * table[i]) / (1.0 - ratio));
        if (next.empty())
            break;
        table = std::move(next);
    }
    return table.back();
}

} // namespace finpart
