#pragma once

#include "finpart/analytic_function.hpp"
#include "finpart/quadrature.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace finpart {

/// Closed path from a back to a straddling the positive-real-axis cut,
/// traversed counterclockwise: the start point carries arg 0 (top edge),
/// the end point arg 2π (bottom edge), and the origin is wound exactly once.
class Contour {
public:
    enum class Kind { circle, rectangle, keyhole };

    /// z(θ) = a e^{iθ}, θ in [0, 2π].
    static Contour circle(double a);
    /// Boundary of the box [-h, a] x [-h, h], h > 0.
    static Contour rectangle(double a, double h);
    /// Circle of radius rho joined to both edges of the cut segment [rho, a].
    static Contour keyhole(double rho, double a);
    /// "circle:a" | "rect:a,h" | "rho:rho,a"
    static Contour parse(const std::string& spec);

    struct Sample {
        Complex z;
        Complex dz;  // dz/dt on the local segment parameter t in [0,1]
        double arg;  // unwrapped argument, 0 at the start, 2π at the end
    };

    Kind kind() const { return kind_; }
    /// The cut endpoint a where the path starts and ends.
    double upper_limit() const { return a_; }
    double scale() const;
    std::string describe() const;

    std::size_t segment_count() const { return segs_.size(); }
    Sample at(std::size_t seg, double t) const;

    /// Strict interior test (exact geometry per kind).
    bool encloses(Complex p) const;
    /// Euclidean distance from p to the path.
    double distance_to(Complex p) const;

private:
    struct Segment {
        bool is_arc = false;
        Complex p, q;               // line endpoints
        double r = 0, th0 = 0, th1 = 0; // origin-centered arc
        double arg0 = 0;            // unwrapped arg at the segment start
    };

    void finalize_args();

    Kind kind_ = Kind::circle;
    double a_ = 0, h_ = 0, rho_ = 0;
    std::vector<Segment> segs_;
};

/// Adaptive quadrature of g along c.  The two-argument form receives the
/// unwrapped argument for branch-aware integrands; the one-argument form is
/// for single-valued g.  abs_error_estimate <= tol*(1+|value|) on success.
quad::QuadResult integrate_contour(
    const std::function<Complex(Complex, double)>& g, const Contour& c,
    double tol = 1e-10);
quad::QuadResult integrate_contour(const std::function<Complex(Complex)>& g,
                                   const Contour& c, double tol = 1e-10);

/// Poles of f(z)/(omega+z) strictly inside c, -omega first.  Throws
/// PoleOnContour when one sits within 1e-9*scale of the path.
std::vector<Complex> enclosed_poles(const Contour& c, const AnalyticFunction& f,
                                    double omega);

} // namespace finpart
