#include "finpart/contour.hpp"
#include "finpart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace finpart {

namespace {

double clamp01(double t) { return std::min(1.0, std::max(0.0, t)); }

double dist_point_segment(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0)
        return std::abs(p - a);
    const double t = clamp01(((p - a) * std::conj(ab)).real() / len2);
    return std::abs(p - (a + t * ab));
}

double dist_point_arc(Complex p, double r, double th0, double th1) {
    double th = std::arg(p); // (-pi, pi]
    // bring into [th0, th0 + 2π)
    while (th < th0)
        th += 2.0 * M_PI;
    if (th <= th1)
        return std::abs(std::abs(p) - r);
    const Complex e0 = std::polar(r, th0);
    const Complex e1 = std::polar(r, th1);
    return std::min(std::abs(p - e0), std::abs(p - e1));
}

} // namespace

void Contour::finalize_args() {
    double arg = 0.0;
    for (auto& s : segs_) {
        s.arg0 = arg;
        if (s.is_arc)
            arg += s.th1 - s.th0;
        else
            arg += std::arg(s.q / s.p); // segment subtends < π from the origin
    }
    // Accumulated winding must be one full turn.
    if (std::abs(arg - 2.0 * M_PI) > 1e-9)
        throw Error("contour does not wind once around the origin");
}

Contour Contour::circle(double a) {
    if (!(a > 0.0))
        throw InvalidContour("circle radius must be positive");
    Contour c;
    c.kind_ = Kind::circle;
    c.a_ = a;
    // quarter arcs keep every segment's winding below π
    for (int k = 0; k < 4; ++k) {
        Segment s;
        s.is_arc = true;
        s.r = a;
        s.th0 = 0.5 * M_PI * k;
        s.th1 = 0.5 * M_PI * (k + 1);
        c.segs_.push_back(s);
    }
    c.finalize_args();
    return c;
}

Contour Contour::rectangle(double a, double h) {
    if (!(a > 0.0) || !(h > 0.0))
        throw InvalidContour("rectangle needs a > 0 and h > 0");
    Contour c;
    c.kind_ = Kind::rectangle;
    c.a_ = a;
    c.h_ = h;
    const Complex v0(a, 0.0), v1(a, h), v2(-h, h), v3(-h, -h), v4(a, -h);
    const Complex pts[6] = {v0, v1, v2, v3, v4, v0};
    for (int i = 0; i < 5; ++i) {
        Segment s;
        s.p = pts[i];
        s.q = pts[i + 1];
        c.segs_.push_back(s);
    }
    c.finalize_args();
    return c;
}

Contour Contour::keyhole(double rho, double a) {
    if (!(rho > 0.0) || !(a > rho))
        throw InvalidContour("keyhole needs 0 < rho < a");
    Contour c;
    c.kind_ = Kind::keyhole;
    c.a_ = a;
    c.rho_ = rho;
    Segment in;
    in.p = Complex(a, 0.0);
    in.q = Complex(rho, 0.0);
    c.segs_.push_back(in);
    for (int k = 0; k < 4; ++k) {
        Segment s;
        s.is_arc = true;
        s.r = rho;
        s.th0 = 0.5 * M_PI * k;
        s.th1 = 0.5 * M_PI * (k + 1);
        c.segs_.push_back(s);
    }
    Segment out;
    out.p = Complex(rho, 0.0);
    out.q = Complex(a, 0.0);
    c.segs_.push_back(out);
    c.finalize_args();
    return c;
}

Contour Contour::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> ps;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ','))
            ps.push_back(std::stod(tok));
    }
    if (kind == "circle" && ps.size() == 1)
        return circle(ps[0]);
    if (kind == "rect" && ps.size() == 2)
        return rectangle(ps[0], ps[1]);
    if (kind == "rho" && ps.size() == 2)
        return keyhole(ps[0], ps[1]);
    throw InvalidContour("bad contour spec '" + spec +
                         "' (circle:a | rect:a,h | rho:rho,a)");
}

double Contour::scale() const {
    switch (kind_) {
    case Kind::circle:
    case Kind::keyhole:
        return a_;
    case Kind::rectangle:
        return std::max(a_, h_ * std::sqrt(2.0));
    }
    return a_;
}

std::string Contour::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::circle:
        os << "circle:" << a_;
        break;
    case Kind::rectangle:
        os << "rect:" << a_ << "," << h_;
        break;
    case Kind::keyhole:
        os << "rho:" << rho_ << "," << a_;
        break;
    }
    return os.str();
}

Contour::Sample Contour::at(std::size_t seg, double t) const {
    const Segment& s = segs_.at(seg);
    Sample out;
    if (s.is_arc) {
        const double th = s.th0 + t * (s.th1 - s.th0);
        out.z = std::polar(s.r, th);
        out.dz = Complex(0.0, s.th1 - s.th0) * out.z;
        out.arg = s.arg0 + (th - s.th0);
    } else {
        out.z = s.p + t * (s.q - s.p);
        out.dz = s.q - s.p;
        out.arg = s.arg0 + std::arg(out.z / s.p);
    }
    return out;
}

bool Contour::encloses(Complex p) const {
    switch (kind_) {
    case Kind::circle:
        return std::abs(p) < a_;
    case Kind::keyhole:
        return std::abs(p) < rho_;
    case Kind::rectangle:
        return p.real() > -h_ && p.real() < a_ && std::abs(p.imag()) < h_;
    }
    return false;
}

double Contour::distance_to(Complex p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : segs_) {
        if (s.is_arc)
            d = std::min(d, dist_point_arc(p, s.r, s.th0, s.th1));
        else
            d = std::min(d, dist_point_segment(p, s.p, s.q));
    }
    return d;
}

quad::QuadResult integrate_contour(
    const std::function<Complex(Complex, double)>& g, const Contour& c,
    double tol) {
    if (!(tol >= 1e-13))
        throw Error("integrate_contour: tol must be >= 1e-13");
    quad::QuadResult total;
    const double seg_tol = tol / static_cast<double>(c.segment_count());
    for (std::size_t i = 0; i < c.segment_count(); ++i) {
        auto r = quad::integrate(
            [&](double t) {
                const auto s = c.at(i, t);
                return g(s.z, s.arg) * s.dz;
            },
            0.0, 1.0, seg_tol);
        total.value += r.value;
        total.abs_error_estimate += r.abs_error_estimate;
        total.evaluations += r.evaluations;
    }
    return total;
}

quad::QuadResult integrate_contour(const std::function<Complex(Complex)>& g,
                                   const Contour& c, double tol) {
    return integrate_contour(
        [&](Complex z, double) { return g(z); }, c, tol);
}

std::vector<Complex> enclosed_poles(const Contour& c, const AnalyticFunction& f,
                                    double omega) {
    std::vector<Complex> candidates;
    candidates.emplace_back(-omega, 0.0);
    for (const auto& p : f.poles())
        candidates.push_back(p.location);

    std::vector<Complex> inside;
    for (const auto& z : candidates) {
        if (c.distance_to(z) < 1e-9 * c.scale())
            throw PoleOnContour("pole at (" + std::to_string(z.real()) + "," +
                                std::to_string(z.imag()) + ") lies on the contour");
        if (c.encloses(z))
            inside.push_back(z);
    }
    return inside;
}

} // namespace finpart
