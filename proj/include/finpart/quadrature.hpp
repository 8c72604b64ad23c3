#pragma once

#include <complex>
#include <functional>

namespace finpart::quad {

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

struct RealResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

/// Adaptive Gauss-Kronrod 7/15 over [a, b].  Stops once the accumulated error
/// estimate drops below tol*(1+|value|); throws QuadratureFailure (with the
/// best estimate attached) after max_panels subdivisions.  The rule evaluates
/// interior nodes only, so endpoint values are never requested.
QuadResult integrate(const std::function<std::complex<double>(double)>& g,
                     double a, double b, double tol, int max_panels = 6000);

RealResult integrate_real(const std::function<double(double)>& g,
                          double a, double b, double tol, int max_panels = 6000);

/// ∫_0^b x^{-nu} phi(x) dx for 0 <= nu < 1 and phi smooth on [0, b].
/// Substitutes x = b t^q with integer q >= 1/(1-nu) so the singular factor
/// becomes t^{q(1-nu)-1}, bounded at t = 0.
RealResult integrate_power_left(const std::function<double(double)>& phi,
                                double b, double nu, double tol);

/// ∫_X^inf x^{-nu} g(x)/(omega+x) dx via x = X/s, for g bounded at infinity
/// and nu in [0,1).  nu = 0 additionally needs g to decay (callers check).
RealResult integrate_stieltjes_tail(const std::function<double(double)>& g,
                                    double X, double nu, double omega,
                                    double tol);

/// ∫_X^inf phi(x) dx for integrands decaying fast enough to beat 1/s^2
/// under the x = X/s map (exponential decay in practice).
RealResult integrate_decay_tail(const std::function<double(double)>& phi,
                                double X, double tol);

} // namespace finpart::quad
