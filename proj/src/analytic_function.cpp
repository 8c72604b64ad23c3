#include "finpart/analytic_function.hpp"
#include "finpart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace finpart {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double factorial_inv(int k) {
    // 1/k! without overflow; underflows to 0 past k ~ 170 which is the
    // correct limiting coefficient.
    return std::exp(-std::lgamma(static_cast<double>(k) + 1.0));
}

std::vector<double> parse_reals(const std::string& body, const std::string& name) {
    std::vector<double> out;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
                ++pos;
            if (pos != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UnknownFunction("bad numeric literal '" + tok + "' in " + name);
        }
    }
    if (out.empty())
        throw UnknownFunction("empty parameter list in " + name);
    return out;
}

} // namespace

void BranchSpec::validate() const {
    if (!(nu >= 0.0) || nu >= 1.0)
        throw DegenerateBranch("nu must lie in [0,1)");
    if (nu > 1.0 - kNuEps)
        throw DegenerateBranch("nu too close to 1: e^{-2πνi}-1 degenerates");
}

AnalyticFunction AnalyticFunction::user(std::string label, Eval eval, double zeta0,
                                        std::vector<PoleInfo> poles) {
    const double r = std::min(0.5, zeta0 / 2.0);
    Eval eval_copy = eval;
    Taylor fallback = [eval_copy, r, label](int k) -> Complex {
        AnalyticFunction probe(label, eval_copy, [](int) { return Complex(0.0); },
                               kInf, {});
        return cauchy_taylor(probe, k, r);
    };
    AnalyticFunction f(std::move(label), std::move(eval), std::move(fallback),
                       zeta0, std::move(poles));
    f.zeta0_assumed_ = !(zeta0 < kInf);
    return f;
}

AnalyticFunction make_builtin(const std::string& name) {
    if (name == "one") {
        return AnalyticFunction(
            "one", [](Complex) { return Complex(1.0); },
            [](int k) { return Complex(k == 0 ? 1.0 : 0.0); }, kInf, {});
    }
    if (name == "exp_neg") {
        return AnalyticFunction(
            "exp_neg", [](Complex z) { return std::exp(-z); },
            [](int k) {
                const double s = (k % 2 == 0) ? 1.0 : -1.0;
                return Complex(s * factorial_inv(k));
            },
            kInf, {});
    }
    if (name == "cos") {
        return AnalyticFunction(
            "cos", [](Complex z) { return std::cos(z); },
            [](int k) {
                if (k % 2 != 0)
                    return Complex(0.0);
                const double s = (k % 4 == 0) ? 1.0 : -1.0;
                return Complex(s * factorial_inv(k));
            },
            kInf, {});
    }
    if (name.rfind("geom(", 0) == 0 && name.back() == ')') {
        const auto params = parse_reals(name.substr(5, name.size() - 6), name);
        if (params.size() != 1 || !(params[0] > 0.0))
            throw UnknownFunction("geom(p) requires a single p > 0: " + name);
        const double p = params[0];
        return AnalyticFunction(
            name, [p](Complex z) { return p / (p + z); },
            [p](int k) { return Complex(std::pow(-1.0 / p, k)); }, p,
            {PoleInfo{Complex(-p, 0.0), 1}});
    }
    if (name.rfind("poly(", 0) == 0 && name.back() == ')') {
        const auto coeffs = parse_reals(name.substr(5, name.size() - 6), name);
        return AnalyticFunction(
            name,
            [coeffs](Complex z) {
                Complex acc(0.0);
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                    acc = acc * z + *it;
                return acc;
            },
            [coeffs](int k) {
                return Complex(k < static_cast<int>(coeffs.size()) ? coeffs[k] : 0.0);
            },
            kInf, {});
    }
    throw UnknownFunction("unknown function '" + name +
                          "' (expected one|exp_neg|cos|geom(p)|poly(c0,...))");
}

Complex cauchy_taylor(const AnalyticFunction& f, int k, double r) {
    if (!(r > 0.0))
        throw Error("cauchy_taylor: radius must be positive");
    if (!(r < f.zeta0()))
        throw ContourHitsSingularity("cauchy_taylor: radius " + std::to_string(r) +
                                     " reaches zeta0 of " + f.label());

    // Trapezoid rule on the circle, doubling until two grids agree.
    const double two_pi = 2.0 * M_PI;
    Complex prev(0.0);
    for (int n = 64; n <= 16384; n *= 2) {
        Complex acc(0.0);
        for (int m = 0; m < n; ++m) {
            const double th = two_pi * m / n;
            const Complex z = std::polar(r, th);
            acc += f.eval(z) * std::polar(1.0, -k * th);
        }
        acc /= static_cast<double>(n) * std::pow(r, k);
        if (n > 64 && std::abs(acc - prev) <= 1e-13 * (1.0 + std::abs(acc)))
            return acc;
        prev = acc;
    }
    return prev;
}

AnalyticFunction linear_combination(double alpha, const AnalyticFunction& f,
                                    double beta, const AnalyticFunction& g) {
    auto fe = f, ge = g;
    std::vector<PoleInfo> poles = f.poles();
    poles.insert(poles.end(), g.poles().begin(), g.poles().end());
    return AnalyticFunction(
        std::to_string(alpha) + "*" + f.label() + "+" + std::to_string(beta) + "*" +
            g.label(),
        [alpha, fe, beta, ge](Complex z) { return alpha * fe.eval(z) + beta * ge.eval(z); },
        [alpha, fe, beta, ge](int k) { return alpha * fe.taylor(k) + beta * ge.taylor(k); },
        std::min(f.zeta0(), g.zeta0()), std::move(poles));
}

double max_modulus_on_circle(const AnalyticFunction& f, double r) {
    const int n = 1024;
    double best = 0.0;
    double best_th = 0.0;
    for (int m = 0; m < n; ++m) {
        const double th = 2.0 * M_PI * m / n;
        const double v = std::abs(f.eval(std::polar(r, th)));
        if (v > best) {
            best = v;
            best_th = th;
        }
    }
    const double dth = 2.0 * M_PI / n;
    for (int m = 0; m <= 64; ++m) {
        const double th = best_th - dth + 2.0 * dth * m / 64.0;
        best = std::max(best, std::abs(f.eval(std::polar(r, th))));
    }
    return best;
}

} // namespace finpart
