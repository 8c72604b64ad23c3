#include "finpart/stieltjes.hpp"
#include "finpart/errors.hpp"
#include "finpart/quadrature.hpp"
#include "finpart/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finpart {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr int kAutoCap = 200;

double f_at_minus_omega(const AnalyticFunction& f, double omega) {
    return f.eval(Complex(-omega, 0.0)).real();
}

/// Growth exponent of |f| at infinity from two far samples; -inf if f has
/// effectively vanished out there.
double growth_exponent(const AnalyticFunction& f) {
    const double x1 = 1e4, x2 = 1e8;
    const double v1 = std::abs(f.eval(Complex(x1, 0.0)));
    const double v2 = std::abs(f.eval(Complex(x2, 0.0)));
    if (v2 < 1e-280)
        return -kInf;
    if (v1 < 1e-280)
        return -kInf;
    return std::log(v2 / v1) / std::log(x2 / x1);
}

/// Closed-form FPI at a = inf, available for the built-ins the series
/// representation covers.  Returns NaN when no closed form exists.
double fpi_term_at_infinity(const AnalyticFunction& f, int j, double nu,
                            bool pole) {
    if (f.label() == "exp_neg")
        return pole ? fpi_exp_pole_infinite(j) : fpi_exp_branch_infinite(j, nu);
    if (f.label() == "one") {
        // monomial FPI -1/((j+nu) a^{j+nu}) -> 0; j = 0 pole case diverges
        if (pole && j == 0)
            return kNan;
        return 0.0;
    }
    return kNan;
}

struct BoundModel {
    double ratio;  // omega/a or omega/rho
    double front;  // B_n = front * ratio^n
    double rho;    // NaN in the entire case
    bool certified;
};

/// Certified remainder-bound constants.  Circle radius r contributes
/// M(f,r)(ln r + π²)/|r-ω| in the pole case and M(f,r)π/(r^ν|r-ω||sin πν|)
/// in the branch case; the holomorphic split adds the [rho, a] edge integral.
BoundModel remainder_bound_model(const StieltjesProblem& p) {
    const bool pole = p.nu < BranchSpec::kNuEps;
    const bool entire = !(p.f.zeta0() < kInf);

    if (p.a == kInf) {
        // No finite-radius certificate; bounds fall back to a truncation
        // estimate assembled by the caller.
        return {0.0, 0.0, kNan, false};
    }

    auto circle_const = [&](double r) {
        const double M = 1.01 * max_modulus_on_circle(p.f, r);
        if (pole)
            return M * (std::log(r) + M_PI * M_PI) / std::abs(r - p.omega);
        return M * M_PI /
               (std::pow(r, p.nu) * std::abs(r - p.omega) * std::sin(M_PI * p.nu));
    };

    if (entire)
        return {p.omega / p.a, circle_const(p.a), kNan, true};

    const double rho =
        std::min(0.5 * (p.omega + p.a), 0.5 * (p.omega + p.f.zeta0()));
    auto edge = quad::integrate_real(
        [&](double x) {
            return std::pow(x, -p.nu) * std::abs(p.f.eval_real(x)) / (p.omega + x);
        },
        rho, p.a, 1e-10);
    const double front = circle_const(rho) + edge.value + edge.abs_error_estimate;
    return {p.omega / rho, front, rho, true};
}

ExpansionResult run_expansion(const StieltjesProblem& p, int N, bool pole) {
    p.validate_expansion();

    BoundModel bm = remainder_bound_model(p);
    if (N <= 0) {
        N = kAutoCap;
        if (bm.certified && bm.ratio < 1.0 && bm.front > 0.0) {
            const double need =
                std::log(1e-10 / bm.front) / std::log(bm.ratio);
            N = std::clamp(static_cast<int>(std::ceil(need)), 1, kAutoCap);
        }
    }

    ExpansionResult r;
    r.rho_used = bm.rho;
    r.bounds_certified = bm.certified;

    const double fmw = f_at_minus_omega(p.f, p.omega);
    r.correction_term =
        pole ? -fmw * std::log(p.omega)
             : M_PI * fmw / (std::pow(p.omega, p.nu) * std::sin(M_PI * p.nu));

    r.fpi_terms.reserve(N);
    for (int j = 0; j < N; ++j) {
        if (p.a == kInf) {
            const double v = fpi_term_at_infinity(p.f, j, p.nu, pole);
            if (std::isnan(v))
                throw ExpansionInvalid("no closed-form FPI at a = inf for " +
                                       p.f.label());
            r.fpi_terms.push_back(v);
        } else {
            FpiProblem fp{p.f, p.a, pole ? j : j + 1, BranchSpec{p.nu}};
            r.fpi_terms.push_back(fpi_limit(fp).value);
        }
    }

    r.partial_sums.reserve(N);
    double acc = 0.0;
    double w_pow = 1.0;
    for (int j = 0; j < N; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sign * w_pow * r.fpi_terms[j];
        w_pow *= p.omega;
        r.partial_sums.push_back(acc);
    }

    r.remainder_bounds.reserve(N);
    if (bm.certified) {
        double b = bm.front;
        for (int n = 1; n <= N; ++n) {
            b *= bm.ratio;
            r.remainder_bounds.push_back(b);
        }
    } else {
        // first-omitted-term estimate (documented as uncertified)
        double w_pow_n = p.omega;
        for (int n = 1; n <= N; ++n) {
            const double next =
                (n < N) ? std::abs(r.fpi_terms[n]) : std::abs(r.fpi_terms[N - 1]);
            r.remainder_bounds.push_back(w_pow_n * next);
            w_pow_n *= p.omega;
        }
    }

    r.reference = stieltjes_direct(p);
    return r;
}

} // namespace

bool StieltjesProblem::infinite_limit() const { return a == kInf; }

void StieltjesProblem::validate_direct() const {
    if (!(omega > 0.0))
        throw Error("stieltjes: omega must be positive");
    if (!(nu >= 0.0) || nu >= 1.0)
        throw DegenerateBranch("stieltjes: nu must lie in [0,1)");
    if (!(a > 0.0))
        throw Error("stieltjes: a must be positive");
}

void StieltjesProblem::validate_expansion() const {
    validate_direct();
    if (!(omega < a))
        throw ExpansionInvalid("expansion requires omega < a");
    if (!(omega < f.zeta0()))
        throw ExpansionInvalid("expansion requires omega < zeta0 of " + f.label());
}

double stieltjes_direct(const StieltjesProblem& p, double tol) {
    p.validate_direct();
    const double nu = p.nu < BranchSpec::kNuEps ? 0.0 : p.nu;

    auto finite_part_integral = [&](double b) {
        return quad::integrate_power_left(
            [&](double x) { return p.f.eval_real(x) / (p.omega + x); }, b, nu,
            tol * 0.5);
    };

    if (!p.infinite_limit())
        return finite_part_integral(p.a).value;

    const double growth = growth_exponent(p.f);
    if (!(growth < nu - 1e-9))
        throw TailDivergent("integrand ~ x^{" + std::to_string(growth - nu - 1.0) +
                            "} at infinity does not decay");

    const double zeta_guard = p.f.zeta0() < kInf ? 2.0 * p.f.zeta0() : 0.0;
    const double X = std::max({10.0 * p.omega, 10.0, zeta_guard});
    const auto head = finite_part_integral(X);
    const auto tail = quad::integrate_stieltjes_tail(
        [&](double x) { return p.f.eval_real(x); }, X, nu, p.omega, tol * 0.5);
    return head.value + tail.value;
}

ExpansionResult expand_origin(const StieltjesProblem& p, int N) {
    return p.nu < BranchSpec::kNuEps ? expand_origin_pole(p, N)
                                     : expand_origin_branch(p, N);
}

ExpansionResult expand_origin_pole(const StieltjesProblem& p, int N) {
    if (!(p.nu < BranchSpec::kNuEps))
        throw Error("expand_origin_pole requires nu = 0");
    return run_expansion(p, N, true);
}

ExpansionResult expand_origin_branch(const StieltjesProblem& p, int N) {
    BranchSpec{p.nu}.validate();
    if (p.nu < BranchSpec::kNuEps)
        throw DegenerateBranch("expand_origin_branch requires nu > 0");
    return run_expansion(p, N, false);
}

PoleExclusionAudit pole_exclusion_audit(const StieltjesProblem& p, int n) {
    BranchSpec{p.nu}.validate();
    if (p.nu < BranchSpec::kNuEps)
        throw DegenerateBranch("pole_exclusion_audit requires nu > 0");
    p.validate_expansion();
    if (n < 1)
        throw Error("pole_exclusion_audit: n must be >= 1");

    // -2πi Res[ (-1)^n ω^n f(z) / ((e^{-2πνi}-1) z^{n+ν} (ω+z)) ] at z = -ω,
    // with arg(-ω) = π under the cut convention.
    const Complex fmw = p.f.eval(Complex(-p.omega, 0.0));
    const Complex z_pow =
        BranchSpec::pow_cut(Complex(-p.omega, 0.0), M_PI, n + p.nu);
    const Complex factor = std::exp(Complex(0.0, -2.0 * M_PI * p.nu)) - 1.0;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const Complex residue = sign * std::pow(p.omega, n) * fmw * z_pow / factor;
    const Complex term = -Complex(0.0, 2.0 * M_PI) * residue;

    PoleExclusionAudit audit;
    audit.residue_term = term.real();
    audit.bound_decay = std::pow(p.omega / p.a, n);
    return audit;
}

NaiveVsCorrected naive_vs_corrected(const StieltjesProblem& p, int N) {
    const auto e = expand_origin(p, N);
    NaiveVsCorrected out;
    out.naive = e.partial_sums.back();
    out.missing = e.correction_term;
    out.corrected = out.naive + out.missing;
    return out;
}

} // namespace finpart
