#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace finpart {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownFunction : public Error {
public:
    using Error::Error;
};

/// Cauchy coefficient extraction asked to integrate on or beyond zeta0.
class ContourHitsSingularity : public Error {
public:
    using Error::Error;
};

class PoleOnContour : public Error {
public:
    using Error::Error;
};

/// Contour violates a theorem hypothesis (pole of f enclosed, endpoint mismatch, ...).
class InvalidContour : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions; carries the best estimate it had.
class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& msg, std::complex<double> best, double err)
        : Error(msg), best_estimate(best), abs_error_estimate(err) {}

    std::complex<double> best_estimate{0.0, 0.0};
    double abs_error_estimate = 0.0;
};

/// The requested integral converges; it has no finite-part decomposition.
class NotDivergent : public Error {
public:
    using Error::Error;
};

/// nu too close to 1 (or to 0 where a strictly positive exponent is required).
class DegenerateBranch : public Error {
public:
    using Error::Error;
};

/// Expansion hypotheses violated (omega >= a, omega >= zeta0, omega <= 1 at infinity).
class ExpansionInvalid : public Error {
public:
    using Error::Error;
};

class TailDivergent : public Error {
public:
    using Error::Error;
};

class GammaPole : public Error {
public:
    using Error::Error;
};

} // namespace finpart
