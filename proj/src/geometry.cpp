#include "robinlayer/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace robinlayer::geometry {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

void CurveSpec::validate() const {
    switch (kind) {
        case Kind::circle:
            require(R > 0.0, "circle: R must be positive");
            break;
        case Kind::ellipse:
            require(a >= b && b > 0.0, "ellipse: need a >= b > 0");
            break;
        case Kind::perturbed_circle:
            require(R > 0.0, "perturbed_circle: R must be positive");
            require(eps >= 0.0 && eps < 1.0, "perturbed_circle: need 0 <= eps < 1");
            require(mode >= 1, "perturbed_circle: mode must be >= 1");
            break;
        case Kind::flat_well:
            require(p >= 1, "flat_well: p must be >= 1");
            require(Cp > 0.0, "flat_well: C_p must be positive");
            require(plateau >= 0.0 && 2.0 * plateau < cell_length,
                    "flat_well: plateau halfwidth out of range");
            require(cell_length > 0.0, "flat_well: cell_length must be positive");
            break;
        case Kind::stadium:
            require(R > 0.0 && ell > 0.0, "stadium: R and ell must be positive");
            break;
        case Kind::sampled: {
            require(points.size() >= 16, "sampled: need at least 16 points");
            for (std::size_t i = 0; i + 1 < points.size(); ++i) {
                const double dx = points[i + 1][0] - points[i][0];
                const double dy = points[i + 1][1] - points[i][1];
                require(dx != 0.0 || dy != 0.0,
                        "sampled: consecutive points must be distinct");
            }
            break;
        }
    }
}

double ArcCurve::total_turning() const {
    // periodic trapezoid rule collapses to a plain sum
    double s = 0.0;
    for (double k : kappa) s += k;
    return s * ds();
}

namespace {

// ---- parametric presets -------------------------------------------------

struct Parametric {
    // position, speed |gamma'|, curvature as functions of the parameter
    Point (*pos)(double, const CurveSpec&);
    double (*speed)(double, const CurveSpec&);
    double (*curv)(double, const CurveSpec&);
};

Point circle_pos(double u, const CurveSpec& c) {
    return {c.R * std::cos(u), c.R * std::sin(u)};
}
double circle_speed(double, const CurveSpec& c) { return c.R; }
double circle_curv(double, const CurveSpec& c) { return 1.0 / c.R; }

Point ellipse_pos(double u, const CurveSpec& c) {
    return {c.a * std::cos(u), c.b * std::sin(u)};
}
double ellipse_speed(double u, const CurveSpec& c) {
    const double su = std::sin(u), cu = std::cos(u);
    return std::sqrt(c.a * c.a * su * su + c.b * c.b * cu * cu);
}
double ellipse_curv(double u, const CurveSpec& c) {
    const double s = ellipse_speed(u, c);
    return c.a * c.b / (s * s * s);
}

double polar_r(double u, const CurveSpec& c) {
    return c.R * (1.0 + c.eps * std::cos(c.mode * u));
}
double polar_rp(double u, const CurveSpec& c) {
    return -c.R * c.eps * c.mode * std::sin(c.mode * u);
}
double polar_rpp(double u, const CurveSpec& c) {
    return -c.R * c.eps * c.mode * c.mode * std::cos(c.mode * u);
}
Point polar_pos(double u, const CurveSpec& c) {
    const double r = polar_r(u, c);
    return {r * std::cos(u), r * std::sin(u)};
}
double polar_speed(double u, const CurveSpec& c) {
    const double r = polar_r(u, c), rp = polar_rp(u, c);
    return std::sqrt(r * r + rp * rp);
}
double polar_curv(double u, const CurveSpec& c) {
    const double r = polar_r(u, c), rp = polar_rp(u, c), rpp = polar_rpp(u, c);
    const double denom = std::pow(r * r + rp * rp, 1.5);
    return (r * r + 2.0 * rp * rp - r * rpp) / denom;
}

ArcCurve build_parametric(const CurveSpec& spec, std::size_t n,
                          const Parametric& par) {
    // cumulative arc length on a fine parameter grid, then invert with one
    // Newton correction per node
    const std::size_t fine = 32 * n;
    std::vector<double> u(fine + 1), cum(fine + 1);
    for (std::size_t i = 0; i <= fine; ++i) u[i] = 2.0 * kPi * double(i) / double(fine);
    cum[0] = 0.0;
    for (std::size_t i = 1; i <= fine; ++i) {
        const double du = u[i] - u[i - 1];
        cum[i] = cum[i - 1] +
                 0.5 * du * (par.speed(u[i - 1], spec) + par.speed(u[i], spec));
    }
    const double L = cum[fine];

    ArcCurve curve;
    curve.n = n;
    curve.length = L;
    curve.closed = true;
    curve.kappa.resize(n);
    curve.position.resize(n);

    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = L * double(i) / double(n);
        while (j + 1 < fine && cum[j + 1] < target) ++j;
        const double frac = (target - cum[j]) / std::max(cum[j + 1] - cum[j], 1e-300);
        double ui = u[j] + frac * (u[j + 1] - u[j]);
        // Newton: correct using the local speed and a midpoint arc estimate
        const double s_est =
            cum[j] + par.speed(0.5 * (u[j] + ui), spec) * (ui - u[j]);
        ui -= (s_est - target) / par.speed(ui, spec);
        curve.position[i] = par.pos(ui, spec);
        curve.kappa[i] = par.curv(ui, spec);
    }
    return curve;
}

// ---- flat_well: curve defined through its curvature profile -------------

// curvature dip with a 2p-degenerate minimum-distance profile, periodized
double flat_well_dip(double s, const CurveSpec& c) {
    const double L = c.cell_length;
    const double s0 = 0.5 * L;
    double d = std::fabs(s - s0);
    d = std::min(d, L - d);
    const double u = std::max(0.0, d - c.plateau);
    const double Lp = L - 2.0 * c.plateau;
    const double w = (Lp / kPi) * std::sin(kPi * u / Lp);
    return c.Cp * std::pow(w, 2 * c.p);
}

ArcCurve build_flat_well(const CurveSpec& spec, std::size_t n) {
    const double L = spec.cell_length;
    const std::size_t fine = 16 * n;
    const double h = L / double(fine);

    // kappa0 fixed so the total turning over one period is 2 pi
    double dip_int = 0.0;
    for (std::size_t i = 0; i < fine; ++i) dip_int += flat_well_dip(i * h, spec);
    dip_int *= h;
    const double kappa0 = (2.0 * kPi + dip_int) / L;

    // tangent angle and position by integration on the fine grid
    std::vector<double> theta(fine + 1), kf(fine + 1);
    for (std::size_t i = 0; i <= fine; ++i)
        kf[i] = kappa0 - flat_well_dip(i * h, spec);
    theta[0] = 0.0;
    for (std::size_t i = 1; i <= fine; ++i)
        theta[i] = theta[i - 1] + 0.5 * h * (kf[i - 1] + kf[i]);

    ArcCurve curve;
    curve.n = n;
    curve.length = L;
    curve.closed = true;
    curve.kappa.resize(n);
    curve.position.resize(n);
    Point pos{0.0, 0.0};
    std::size_t next_node = 0;
    for (std::size_t i = 0; i <= fine; ++i) {
        if (next_node < n && i == 16 * next_node) {
            curve.position[next_node] = pos;
            curve.kappa[next_node] = kf[i];
            ++next_node;
        }
        if (i < fine) {
            const double th_mid = 0.5 * (theta[i] + theta[i + 1]);
            pos[0] += h * std::cos(th_mid);
            pos[1] += h * std::sin(th_mid);
        }
    }
    return curve;
}

// ---- stadium ------------------------------------------------------------

ArcCurve build_stadium(const CurveSpec& spec, std::size_t n) {
    const double R = spec.R, l = spec.ell;
    const double L = 2.0 * kPi * R + 2.0 * l;
    ArcCurve curve;
    curve.n = n;
    curve.length = L;
    curve.closed = true;
    curve.c2_smooth = false;  // curvature jumps at the arc junctions
    curve.kappa.resize(n);
    curve.position.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = L * double(i) / double(n);
        if (s < l) {  // bottom straight, +x direction
            curve.position[i] = {-0.5 * l + s, -R};
            curve.kappa[i] = 0.0;
        } else if (s < l + kPi * R) {  // right cap
            const double phi = (s - l) / R - 0.5 * kPi;
            curve.position[i] = {0.5 * l + R * std::cos(phi), R * std::sin(phi)};
            curve.kappa[i] = 1.0 / R;
        } else if (s < 2.0 * l + kPi * R) {  // top straight, -x direction
            const double q = s - l - kPi * R;
            curve.position[i] = {0.5 * l - q, R};
            curve.kappa[i] = 0.0;
        } else {  // left cap
            const double phi = (s - 2.0 * l - kPi * R) / R + 0.5 * kPi;
            curve.position[i] = {-0.5 * l + R * std::cos(phi), R * std::sin(phi)};
            curve.kappa[i] = 1.0 / R;
        }
    }
    return curve;
}

// ---- sampled polylines --------------------------------------------------

bool segments_intersect(const Point& a, const Point& b, const Point& c,
                        const Point& d) {
    auto cross = [](const Point& o, const Point& p, const Point& q) {
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
    };
    const double d1 = cross(c, d, a), d2 = cross(c, d, b);
    const double d3 = cross(a, b, c), d4 = cross(a, b, d);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

ArcCurve build_sampled(const CurveSpec& spec, std::size_t n) {
    std::vector<Point> pts = spec.points;
    // drop an explicitly repeated closing point
    if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
    const std::size_t m = pts.size();
    require(m >= 16, "sampled: need at least 16 distinct points");

    if (spec.closed) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                if (j == i + 1 || (i == 0 && j == m - 1)) continue;
                if (segments_intersect(pts[i], pts[(i + 1) % m], pts[j],
                                       pts[(j + 1) % m]))
                    throw std::invalid_argument("sampled: curve self-intersects");
            }
    }

    // cumulative chord length
    const std::size_t edges = spec.closed ? m : m - 1;
    std::vector<double> cum(edges + 1, 0.0);
    for (std::size_t i = 0; i < edges; ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % m];
        cum[i + 1] = cum[i] + std::hypot(q[0] - p[0], q[1] - p[1]);
    }
    const double L = cum[edges];

    ArcCurve curve;
    curve.n = n;
    curve.length = L;
    curve.closed = spec.closed;
    curve.position.resize(n);
    curve.kappa.resize(n);

    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = L * double(i) / double(n);
        while (j + 1 < edges && cum[j + 1] < target) ++j;
        const double frac = (target - cum[j]) / std::max(cum[j + 1] - cum[j], 1e-300);
        const Point& p = pts[j];
        const Point& q = pts[(j + 1) % m];
        curve.position[i] = {p[0] + frac * (q[0] - p[0]),
                             p[1] + frac * (q[1] - p[1])};
    }

    // Curvature lives on the *input* polygon: turning angle at each vertex
    // over the mean of the adjacent edge lengths. Differencing the resampled
    // polyline instead would alias badly once n exceeds the input count
    // (resampled edges inside one chord are collinear).
    std::vector<double> vkappa(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (!spec.closed && (i == 0 || i + 1 == m)) continue;
        const Point& a = pts[(i + m - 1) % m];
        const Point& b = pts[i];
        const Point& c = pts[(i + 1) % m];
        const double a1 = std::atan2(b[1] - a[1], b[0] - a[0]);
        const double a2 = std::atan2(c[1] - b[1], c[0] - b[0]);
        double turn = a2 - a1;
        while (turn > kPi) turn -= 2.0 * kPi;
        while (turn < -kPi) turn += 2.0 * kPi;
        const double len =
            0.5 * (std::hypot(b[0] - a[0], b[1] - a[1]) +
                   std::hypot(c[0] - b[0], c[1] - b[1]));
        vkappa[i] = turn / len;
    }
    if (!spec.closed && m > 2) {
        vkappa[0] = vkappa[1];
        vkappa[m - 1] = vkappa[m - 2];
    }

    // linear interpolation of vertex curvature in arc length
    std::size_t vj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = L * double(i) / double(n);
        while (vj + 1 < edges && cum[vj + 1] < target) ++vj;
        const double seg = std::max(cum[vj + 1] - cum[vj], 1e-300);
        const double frac = (target - cum[vj]) / seg;
        // curvatures sit at vertices vj and vj+1 of this chord
        curve.kappa[i] = (1.0 - frac) * vkappa[vj] +
                         frac * vkappa[(vj + 1) % m];
    }
    return curve;
}

}  // namespace

ArcCurve build_arc_curve(const CurveSpec& spec, std::size_t n) {
    require(n >= 32, "build_arc_curve: need n >= 32");
    spec.validate();
    switch (spec.kind) {
        case CurveSpec::Kind::circle:
            return build_parametric(spec, n,
                                    {circle_pos, circle_speed, circle_curv});
        case CurveSpec::Kind::ellipse:
            return build_parametric(spec, n,
                                    {ellipse_pos, ellipse_speed, ellipse_curv});
        case CurveSpec::Kind::perturbed_circle:
            return build_parametric(spec, n, {polar_pos, polar_speed, polar_curv});
        case CurveSpec::Kind::flat_well:
            return build_flat_well(spec, n);
        case CurveSpec::Kind::stadium:
            return build_stadium(spec, n);
        case CurveSpec::Kind::sampled:
            return build_sampled(spec, n);
    }
    throw std::logic_error("unreachable");
}

CurvaturePeak curvature_peak(const ArcCurve& curve) {
    const std::size_t n = curve.n;
    require(n >= 8, "curvature_peak: curve too coarse");
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (curve.kappa[i] > curve.kappa[imax]) imax = i;
    const double kmax = curve.kappa[imax];

    CurvaturePeak peak;
    peak.kappa_max = kmax;

    // plateau: >= 3 consecutive nodes at the max (1e-12 absolute)
    std::size_t longest_run = 0, run = 0;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        if (std::fabs(curve.kappa[i % n] - kmax) <= 1e-12) {
            ++run;
            longest_run = std::max(longest_run, run);
        } else {
            run = 0;
        }
        if (run >= n) break;  // constant curvature
    }
    if (longest_run >= 3) {
        peak.flat = true;
        peak.s0 = curve.ds() * double(imax);
        peak.kappa_pp = 0.0;
        peak.maxima_count = std::min<std::size_t>(longest_run, n);
        return peak;
    }

    // Count global maxima among the local ones. Raw node values of symmetric
    // peaks differ by O(ds^2) when the grid does not hit the crests, so the
    // comparison uses the parabola-refined vertex values instead.
    auto vertex_value = [](double km, double k0, double kp) {
        const double denom = km - 2.0 * k0 + kp;
        if (denom >= -1e-300) return k0;
        return k0 - (kp - km) * (kp - km) / (8.0 * denom);
    };
    double vref = kmax;
    std::vector<double> vvals;
    std::vector<std::size_t> vidx;
    for (std::size_t i = 0; i < n; ++i) {
        const double km = curve.kappa[(i + n - 1) % n];
        const double kp = curve.kappa[(i + 1) % n];
        if (curve.kappa[i] >= km && curve.kappa[i] >= kp) {
            const double v = vertex_value(km, curve.kappa[i], kp);
            vvals.push_back(v);
            vidx.push_back(i);
            vref = std::max(vref, v);
        }
    }
    double span = kmax;
    for (double kv : curve.kappa) span = std::max(span, kmax - kv);
    const double tol = std::max(1e-9, 1e-6 * span);
    std::size_t count = 0;
    for (double v : vvals)
        if (v >= vref - tol) ++count;
    peak.maxima_count = std::max<std::size_t>(count, 1);

    const double ds = curve.ds();
    const double km = curve.kappa[(imax + n - 1) % n];
    const double kp = curve.kappa[(imax + 1) % n];
    const double denom = km - 2.0 * kmax + kp;
    double dx = 0.0;
    if (denom < 0.0) dx = 0.5 * ds * (km - kp) / denom;
    peak.s0 = ds * double(imax) + dx;
    if (peak.s0 < 0.0) peak.s0 += curve.length;

    // local quartic fit on 9 nodes for the second derivative
    const int half = 4;
    Eigen::MatrixXd A(2 * half + 1, 5);
    Eigen::VectorXd y(2 * half + 1);
    for (int t = -half; t <= half; ++t) {
        const double x = ds * double(t);
        double pw = 1.0;
        for (int c = 0; c < 5; ++c) {
            A(t + half, c) = pw;
            pw *= x;
        }
        y(t + half) = curve.kappa[std::size_t((long(imax) + t + long(n)) % long(n))];
    }
    Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
    peak.kappa_pp = 2.0 * coef(2) + 6.0 * coef(3) * dx + 12.0 * coef(4) * dx * dx;
    if (peak.kappa_pp > 0.0) peak.kappa_pp = 0.0;
    return peak;
}

double min_layer_width(const ArcCurve& curve) {
    double kmax = curve.kappa.empty() ? 0.0 : curve.kappa[0];
    for (double k : curve.kappa) kmax = std::max(kmax, k);
    if (kmax <= 0.0) return kInfiniteWidth;
    return 0.5 / kmax;
}

PeriodicCell cell_from_curve(const ArcCurve& curve) {
    return {curve.length, curve.kappa, curve.n};
}

PeriodicCell make_free_cell(double period, std::size_t n) {
    return {period, std::vector<double>(n, 0.0), n};
}

PeriodicCell make_constant_cell(double period, double kappa, std::size_t n) {
    return {period, std::vector<double>(n, kappa), n};
}

PeriodicCell make_cosine_cell(double period, std::size_t n) {
    PeriodicCell cell{period, std::vector<double>(n), n};
    for (std::size_t i = 0; i < n; ++i)
        cell.kappa[i] = 1.0 + std::cos(2.0 * kPi * double(i) / double(n));
    return cell;
}

ArcCurve make_flat_strip(double period, std::size_t n) {
    ArcCurve curve;
    curve.n = n;
    curve.length = period;
    curve.closed = false;
    curve.kappa.assign(n, 0.0);
    curve.position.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        curve.position[i] = {period * double(i) / double(n), 0.0};
    return curve;
}

}  // namespace robinlayer::geometry
