#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace finpart {

using Complex = std::complex<double>;

struct PoleInfo {
    Complex location;
    int order = 1;
};

/// An integrand f together with its complex extension f(z), Taylor data at
/// the origin and singularity inventory.  Immutable after construction; all
/// member calls are pure.
class AnalyticFunction {
public:
    using Eval = std::function<Complex(Complex)>;
    using Taylor = std::function<Complex(int)>;

    AnalyticFunction(std::string label, Eval eval, Taylor taylor, double zeta0,
                     std::vector<PoleInfo> poles)
        : label_(std::move(label)), eval_(std::move(eval)),
          taylor_(std::move(taylor)), zeta0_(zeta0), poles_(std::move(poles)) {}

    /// User-defined function without Taylor data: coefficients fall back to
    /// Cauchy-circle extraction at radius min(0.5, zeta0/2).  When zeta0 is
    /// omitted it defaults to +inf and zeta0_assumed() reports the gap.
    static AnalyticFunction user(std::string label, Eval eval,
                                 double zeta0 = std::numeric_limits<double>::infinity(),
                                 std::vector<PoleInfo> poles = {});

    Complex eval(Complex z) const { return eval_(z); }
    Complex operator()(Complex z) const { return eval_(z); }
    double eval_real(double x) const { return eval_(Complex(x, 0.0)).real(); }

    /// c_k = f^(k)(0) / k!
    Complex taylor(int k) const { return taylor_(k); }

    double zeta0() const { return zeta0_; }
    const std::vector<PoleInfo>& poles() const { return poles_; }
    const std::string& label() const { return label_; }
    bool zeta0_assumed() const { return zeta0_assumed_; }

private:
    std::string label_;
    Eval eval_;
    Taylor taylor_;
    double zeta0_ = std::numeric_limits<double>::infinity();
    std::vector<PoleInfo> poles_;
    bool zeta0_assumed_ = false;
};

/// Built-ins: "one", "exp_neg", "cos", "geom(p)", "poly(c0,c1,...)".
/// geom(p) = 1/(1+x/p); poly takes comma-separated real coefficients.
/// Throws UnknownFunction for anything else.
AnalyticFunction make_builtin(const std::string& name);

/// c_k via the Cauchy integral formula on a circle of radius r < f.zeta0:
/// (1/2πi) ∮ f(z) z^{-k-1} dz, evaluated with the trapezoid rule (spectrally
/// accurate for analytic f).  Throws ContourHitsSingularity when r >= zeta0.
Complex cauchy_taylor(const AnalyticFunction& f, int k, double r);

/// alpha*f + beta*g with merged singularity data.
AnalyticFunction linear_combination(double alpha, const AnalyticFunction& f,
                                    double beta, const AnalyticFunction& g);

/// max |f(r e^{iθ})| over a 1024-point grid, refined once near the maximum.
/// A lower-bound estimate of the true supremum; callers inflate as needed.
double max_modulus_on_circle(const AnalyticFunction& f, double r);

/// Branch conventions for the cut along the positive real axis:
/// arg z in [0, 2π), z^{-nu} = |z|^{-nu} e^{-i nu arg z}, positive on the
/// top edge; log z real on the top edge.  nu = 0 selects the pole case.
struct BranchSpec {
    double nu = 0.0;

    static constexpr double kNuEps = 1e-8;

    bool is_pole() const { return nu < kNuEps; }

    /// log z for a point with known unwrapped argument along a contour.
    static Complex log_cut(Complex z, double arg_z) {
        return Complex(std::log(std::abs(z)), arg_z);
    }

    /// z^{-p} for real p > 0 under the same convention.
    static Complex pow_cut(Complex z, double arg_z, double p) {
        return std::exp(-p * log_cut(z, arg_z));
    }

    /// Validates nu in [0,1) away from 1; throws DegenerateBranch otherwise.
    void validate() const;
};

} // namespace finpart
