#include "robinlayer/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>

#include "robinlayer/layer.hpp"

namespace robinlayer::harness {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::size_t scaled_n_t(const SweepPlan& plan, double alpha) {
    if (!plan.scale_n_t) return plan.n_t;
    // hold the t-grid dispersion alpha^2 dt near a constant: dt <= 1.1/alpha^2
    const std::size_t need =
        std::size_t(std::ceil(plan.b * alpha * std::log(alpha) / 1.1));
    return std::max(plan.n_t, need);
}

}  // namespace

void SweepPlan::validate() const {
    if (alphas.empty()) throw std::invalid_argument("sweep: empty alpha list");
    double prev = 0.0;
    for (double a : alphas) {
        if (!(a > 0.0) || a < prev)
            throw std::invalid_argument("sweep: alphas must be positive ascending");
        prev = a;
    }
    if (j_max == 0 || j_max > 10)
        throw std::invalid_argument("sweep: j_max in [1, 10]");
}

RemainderTable run_sweep(const SweepPlan& plan) {
    plan.validate();
    const geometry::ArcCurve curve = geometry::build_arc_curve(plan.spec, plan.curve_n);

    // semiclassical predictor levels (excess over -alpha kappa_max)
    std::vector<double> levels;
    double power = 0.5;
    if (plan.predictor == Predictor::harmonic) {
        const auto peak = geometry::curvature_peak(curve);
        if (peak.flat || peak.kappa_pp >= 0.0)
            throw std::invalid_argument("sweep: harmonic predictor needs kappa'' < 0");
        levels = effective::harmonic_levels({-peak.kappa_pp}, plan.j_max).levels;
    } else if (plan.predictor == Predictor::degenerate) {
        effective::DegenerateWellSpec well;
        well.p = plan.spec.p;
        well.Cp = plan.spec.Cp;
        levels = effective::degenerate_well_levels(well, plan.j_max);
        power = 1.0 / (double(plan.spec.p) + 1.0);
    }

    auto solve_alpha = [&](double alpha) {
        std::vector<RemainderRow> rows(plan.j_max);
        try {
            std::vector<double> eff;
            if (plan.do_effective) {
                const std::size_t n_eff =
                    plan.eff_n ? plan.eff_n
                               : (plan.do_bracket ? plan.n_s : plan.curve_n);
                auto op = effective::assemble_effective(curve, alpha, n_eff);
                eff = effective::effective_eigs(op, plan.j_max).eigenvalues;
            }
            layer::BracketResult br;
            if (plan.do_bracket) {
                layer::LayerConfig cfg;
                cfg.curve = curve;
                cfg.alpha = alpha;
                cfg.b = plan.b;
                cfg.delta = layer::default_delta(curve, alpha, plan.b);
                cfg.n_s = plan.n_s;
                cfg.n_t = scaled_n_t(plan, alpha);
                br = layer::bracket_eigenvalues(cfg, plan.j_max);
            }
            for (std::size_t j = 0; j < plan.j_max; ++j) {
                RemainderRow& row = rows[j];
                row.alpha = alpha;
                row.j = j + 1;
                if (plan.do_bracket) {
                    row.delta = br.delta;
                    if (j < br.lower.size()) {
                        row.lower = br.lower[j];
                        row.upper = br.upper[j];
                        row.midpoint = 0.5 * (br.lower[j] + br.upper[j]);
                        row.halfwidth = 0.5 * (br.upper[j] - br.lower[j]);
                        row.bracket_ok = br.converged[j];
                    } else {
                        row.error = "bracket truncated (upper bound >= 0)";
                    }
                }
                if (j < eff.size()) row.effective = eff[j];
                if (plan.do_bracket && plan.do_effective && row.error.empty())
                    row.remainder = row.midpoint + alpha * alpha - row.effective;
                if (j < levels.size())
                    row.predicted = levels[j] * std::pow(alpha, power);
            }
        } catch (const std::exception& e) {
            for (std::size_t j = 0; j < plan.j_max; ++j) {
                rows[j].alpha = alpha;
                rows[j].j = j + 1;
                rows[j].error = e.what();
            }
        }
        return rows;
    };

    std::vector<std::future<std::vector<RemainderRow>>> futures;
    futures.reserve(plan.alphas.size());
    for (double alpha : plan.alphas)
        futures.push_back(std::async(std::launch::async, solve_alpha, alpha));

    RemainderTable table;
    for (auto& f : futures)
        for (auto& row : f.get()) table.rows.push_back(std::move(row));

    if (!plan.out_csv.empty()) write_csv(table, plan.out_csv);
    if (!plan.out_json.empty()) write_json(table, plan, plan.out_json);
    return table;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 4)
        throw std::invalid_argument("fit_exponent: need at least 4 points");
    const std::size_t n = pairs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(pairs[i].first > 0.0) || !(pairs[i].second > 0.0))
            throw std::invalid_argument("fit_exponent: nonpositive data");
        xs[i] = std::log(pairs[i].first);
        ys[i] = std::log(pairs[i].second);
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double dn = double(n);
    const double denom = dn * sxx - sx * sx;
    FitResult r;
    r.slope = (dn * sxy - sx * sy) / denom;
    r.intercept = (sy - r.slope * sx) / dn;
    r.prefactor = std::exp(r.intercept);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ys[i] - r.intercept - r.slope * xs[i];
        ss += resid * resid;
    }
    if (n > 2) r.stderr_slope = std::sqrt(ss / (dn - 2.0) * dn / denom);
    return r;
}

GapReport gap_report(const geometry::PeriodicCell& cell,
                     const std::vector<double>& alphas, std::size_t n,
                     std::size_t theta_count, std::size_t j_max,
                     double remainder_budget) {
    GapReport report;
    report.remainder_budget = remainder_budget;
    for (double alpha : alphas) {
        GapReportRow row;
        row.alpha = alpha;
        row.bands = effective::bloch_bands(cell, alpha, n, theta_count, j_max);
        for (const auto& [lo, hi] : row.bands.gaps) {
            GapWindow w;
            w.lower = lo;
            w.upper = hi;
            w.certified = (hi - lo) > 2.0 * remainder_budget;
            row.windows.push_back(w);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

void write_csv(const RemainderTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "alpha,delta,j,lower,upper,midpoint,halfwidth,effective,remainder,"
           "predicted\n";
    for (const auto& r : table.rows) {
        if (!r.error.empty()) continue;
        out << fmt(r.alpha) << ',' << fmt(r.delta) << ',' << r.j << ','
            << fmt(r.lower) << ',' << fmt(r.upper) << ',' << fmt(r.midpoint)
            << ',' << fmt(r.halfwidth) << ',' << fmt(r.effective) << ','
            << fmt(r.remainder) << ',' << fmt(r.predicted) << '\n';
    }
}

void write_json(const RemainderTable& table, const SweepPlan& plan,
                const std::string& path) {
    nlohmann::json j;
    j["meta"] = {{"tool", "robinlayer"},
                 {"version", "0.1.0"},
                 {"curve_n", plan.curve_n},
                 {"n_s", plan.n_s},
                 {"n_t", plan.n_t},
                 {"b", plan.b},
                 {"seed", plan.seed}};
    j["rows"] = nlohmann::json::array();
    for (const auto& r : table.rows) {
        nlohmann::json row = {
            {"alpha", r.alpha},       {"delta", r.delta},
            {"j", r.j},               {"lower", r.lower},
            {"upper", r.upper},       {"midpoint", r.midpoint},
            {"halfwidth", r.halfwidth}, {"effective", r.effective},
            {"remainder", r.remainder}, {"predicted", r.predicted}};
        if (!r.error.empty()) row["error"] = r.error;
        j["rows"].push_back(row);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << "\n";
}

void write_svg_lines(
    const std::string& path, const std::string& title,
    const std::vector<std::vector<std::pair<double, double>>>& series) {
    const int W = 640, H = 480, M = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s) {
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-300) ymax = ymin + 1.0;
    auto px = [&](double x) {
        return double(M) + (x - xmin) / (xmax - xmin) * double(W - 2 * M);
    };
    auto py = [&](double y) {
        return double(H - M) - (y - ymin) / (ymax - ymin) * double(H - 2 * M);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M
        << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M
        << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << M << "\" y=\"" << H - M + 20 << "\">" << fmt(xmin)
        << "</text>\n";
    out << "<text x=\"" << W - M << "\" y=\"" << H - M + 20
        << "\" text-anchor=\"end\">" << fmt(xmax) << "</text>\n";
    out << "<text x=\"" << M - 5 << "\" y=\"" << H - M
        << "\" text-anchor=\"end\">" << fmt(ymin) << "</text>\n";
    out << "<text x=\"" << M - 5 << "\" y=\"" << M + 5
        << "\" text-anchor=\"end\">" << fmt(ymax) << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].empty()) continue;
        if (series[s].size() == 1) {
            out << "<circle cx=\"" << fmt(px(series[s][0].first)) << "\" cy=\""
                << fmt(py(series[s][0].second)) << "\" r=\"3\" fill=\""
                << colors[s % 6] << "\"/>\n";
            continue;
        }
        out << "<polyline fill=\"none\" stroke=\"" << colors[s % 6]
            << "\" points=\"";
        for (const auto& [x, y] : series[s])
            out << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

void emit_plots(const RemainderTable& table, const std::string& dir) {
    std::size_t j_max = 0;
    for (const auto& r : table.rows)
        if (r.error.empty()) j_max = std::max(j_max, r.j);
    auto series_of = [&](double RemainderRow::* field) {
        std::vector<std::vector<std::pair<double, double>>> series(
            std::max<std::size_t>(j_max, 1));
        for (const auto& r : table.rows)
            if (r.error.empty())
                series[r.j - 1].emplace_back(r.alpha, r.*field);
        return series;
    };
    write_svg_lines(dir + "/remainder.svg", "remainder vs alpha",
                    series_of(&RemainderRow::remainder));
    write_svg_lines(dir + "/halfwidth.svg", "bracket halfwidth vs alpha",
                    series_of(&RemainderRow::halfwidth));
    write_svg_lines(dir + "/effective.svg", "effective eigenvalue vs alpha",
                    series_of(&RemainderRow::effective));
}

}  // namespace robinlayer::harness
