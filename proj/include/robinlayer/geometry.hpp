#ifndef ROBINLAYER_GEOMETRY_HPP
#define ROBINLAYER_GEOMETRY_HPP

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace robinlayer::geometry {

using Point = std::array<double, 2>;

/// Description of a boundary curve before discretization.
struct CurveSpec {
    enum class Kind {
        circle,            // R
        ellipse,           // a >= b > 0
        perturbed_circle,  // r(t) = R (1 + eps cos(m t))
        flat_well,         // curvature profile with a 2p-degenerate maximum
        stadium,           // two semicircles (radius R) + straights (length ell)
        sampled,           // closed polyline, resampled
    };

    Kind kind = Kind::circle;

    double R = 1.0;
    double a = 2.0, b = 1.0;
    double eps = 0.1;
    int mode = 2;
    int p = 2;               // flat_well: half-degree of the curvature dip
    double Cp = 1.0;         // flat_well: dip coefficient
    double plateau = 0.0;    // flat_well: halfwidth of a flat top (0 = none)
    double cell_length = 2.0 * 3.14159265358979323846;  // flat_well period
    double ell = 1.0;        // stadium straight length

    std::vector<Point> points;  // sampled
    bool closed = true;

    void validate() const;  // throws std::invalid_argument
};

/// A curve sampled at n uniform arc-length nodes s_i = i L / n.
struct ArcCurve {
    std::size_t n = 0;
    double length = 0.0;
    std::vector<double> kappa;
    std::vector<Point> position;
    bool closed = true;
    bool c2_smooth = true;  // false for stadium (curvature jumps)

    double ds() const { return length / double(n); }
    /// Trapezoidal integral of kappa over one period (turning angle).
    double total_turning() const;
};

/// One period of a curvature profile for Floquet problems.
struct PeriodicCell {
    double period = 0.0;
    std::vector<double> kappa;
    std::size_t n = 0;
};

struct CurvaturePeak {
    double s0 = 0.0;          // refined argmax position
    double kappa_max = 0.0;
    double kappa_pp = 0.0;    // second derivative at s0 (<= 0), 0 if flat
    bool flat = false;        // plateau of >= 3 nodes at the max
    std::size_t maxima_count = 1;  // number of grid-level global maxima
};

ArcCurve build_arc_curve(const CurveSpec& spec, std::size_t n);

CurvaturePeak curvature_peak(const ArcCurve& curve);

/// Largest delta with 1 - t*kappa(s) >= 1/2 for all t in [0, delta];
/// +infinity when kappa <= 0 everywhere.
double min_layer_width(const ArcCurve& curve);

PeriodicCell cell_from_curve(const ArcCurve& curve);
PeriodicCell make_free_cell(double period, std::size_t n);
PeriodicCell make_constant_cell(double period, double kappa, std::size_t n);
/// kappa(s) = 1 + cos(2 pi s / period)
PeriodicCell make_cosine_cell(double period, std::size_t n);

/// Straight periodic strip of length `period` with kappa = 0; used where a
/// layer over a flat boundary is needed.
ArcCurve make_flat_strip(double period, std::size_t n);

constexpr double kInfiniteWidth = std::numeric_limits<double>::infinity();

}  // namespace robinlayer::geometry

#endif
