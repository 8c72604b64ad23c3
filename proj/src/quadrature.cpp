#include "finpart/quadrature.hpp"
#include "finpart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace finpart::quad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class Value>
double vnorm(const Value& v) {
    return std::abs(v);
}

template <class Value>
struct Panel {
    double a = 0, b = 0;
    Value value{};
    double err = 0;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <class Value, class F>
Panel<Value> gk15(const F& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    Value fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    evals += 15;

    Value kron{};
    Value gauss{};
    double resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        kron += kWgk[i] * (fv[i] + fv[14 - i]);
        resabs += kWgk[i] * (vnorm(fv[i]) + vnorm(fv[14 - i]));
    }
    kron += kWgk[7] * fv[7];
    resabs += kWgk[7] * vnorm(fv[7]);
    // Gauss nodes sit at the odd Kronrod indices.
    for (int i = 0; i < 3; ++i)
        gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    gauss += kWg[3] * fv[7];

    kron *= h;
    gauss *= h;
    resabs *= std::abs(h);

    // resasc per QUADPACK: integral of |f - mean|.
    const Value mean = kron / (b - a);
    double resasc = 0.0;
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (vnorm(fv[i] - mean) + vnorm(fv[14 - i] - mean));
    resasc += kWgk[7] * vnorm(fv[7] - mean);
    resasc *= std::abs(h);

    double err = vnorm(kron - gauss);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, round_floor);

    return Panel<Value>{a, b, kron, err};
}

template <class Value, class F>
void adaptive(const F& f, double a, double b, double tol, int max_panels,
              Value& value_out, double& err_out, long& evals) {
    if (!(tol >= 1e-13))
        throw Error("quadrature tolerance must be >= 1e-13");
    if (a == b) {
        value_out = Value{};
        err_out = 0.0;
        return;
    }

    std::priority_queue<Panel<Value>> panels;
    Value total{};
    double err_sum = 0.0;
    double resabs_floor = 0.0;

    auto push = [&](Panel<Value> p) {
        total += p.value;
        err_sum += p.err;
        panels.push(std::move(p));
    };

    push(gk15<Value>(f, a, b, evals));

    int count = 1;
    while (err_sum > tol * (1.0 + vnorm(total)) && count < max_panels) {
        Panel<Value> worst = panels.top();
        panels.pop();
        total -= worst.value;
        err_sum -= worst.err;

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // Interval hit machine resolution; keep its estimate as-is.
            push(worst);
            break;
        }
        push(gk15<Value>(f, worst.a, mid, evals));
        push(gk15<Value>(f, mid, worst.b, evals));
        ++count;

        resabs_floor = 50.0 * std::numeric_limits<double>::epsilon() * vnorm(total);
        if (err_sum <= resabs_floor)
            break;
    }

    if (err_sum > tol * (1.0 + vnorm(total)) && err_sum > resabs_floor &&
        count >= max_panels) {
        throw QuadratureFailure("adaptive quadrature did not converge",
                                std::complex<double>(total), err_sum);
    }
    value_out = total;
    err_out = err_sum;
}

int power_exponent(double nu) {
    // smallest integer q with q*(1-nu) >= 1
    int q = static_cast<int>(std::ceil(1.0 / (1.0 - nu) - 1e-12));
    return std::max(q, 1);
}

} // namespace

QuadResult integrate(const std::function<std::complex<double>(double)>& g,
                     double a, double b, double tol, int max_panels) {
    QuadResult r;
    adaptive<std::complex<double>>(g, a, b, tol, max_panels,
                                   r.value, r.abs_error_estimate, r.evaluations);
    return r;
}

RealResult integrate_real(const std::function<double(double)>& g,
                          double a, double b, double tol, int max_panels) {
    RealResult r;
    double v = 0.0;
    adaptive<double>(g, a, b, tol, max_panels, v, r.abs_error_estimate, r.evaluations);
    r.value = v;
    return r;
}

RealResult integrate_power_left(const std::function<double(double)>& phi,
                                double b, double nu, double tol) {
    if (nu <= 0.0)
        return integrate_real(phi, 0.0, b, tol);
    const int q = power_exponent(nu);
    const double e0 = q * (1.0 - nu) - 1.0; // >= 0
    const double scale = q * std::pow(b, 1.0 - nu);
    return integrate_real(
        [&](double t) {
            const double x = b * std::pow(t, q);
            return scale * std::pow(t, e0) * phi(x);
        },
        0.0, 1.0, tol);
}

RealResult integrate_stieltjes_tail(const std::function<double(double)>& g,
                                    double X, double nu, double omega,
                                    double tol) {
    // x = X/s maps [X, inf) to (0, 1]:
    //   ∫_X^inf x^{-nu} g(x)/(omega+x) dx
    //     = X^{1-nu} ∫_0^1 s^{nu-1} g(X/s)/(omega s + X) ds
    const double scale = std::pow(X, 1.0 - nu);
    if (nu <= 0.0) {
        // the s^{-1} factor must be beaten by the decay of g
        return integrate_real(
            [&](double s) {
                return scale * g(X / s) / (s * (omega * s + X));
            },
            0.0, 1.0, tol);
    }
    const int q = power_exponent(1.0 - nu); // q*nu >= 1
    const double e0 = q * nu - 1.0;         // >= 0
    return integrate_real(
        [&](double t) {
            const double s = std::pow(t, q);
            return scale * q * std::pow(t, e0) * g(X / s) / (omega * s + X);
        },
        0.0, 1.0, tol);
}

RealResult integrate_decay_tail(const std::function<double(double)>& phi,
                                double X, double tol) {
    // x = X/s:  ∫_X^inf phi dx = X ∫_0^1 phi(X/s) / s^2 ds
    return integrate_real(
        [&](double s) {
            const double v = phi(X / s);
            return v == 0.0 ? 0.0 : X * v / (s * s);
        },
        0.0, 1.0, tol);
}

} // namespace finpart::quad
