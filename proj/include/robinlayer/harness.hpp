#ifndef ROBINLAYER_HARNESS_HPP
#define ROBINLAYER_HARNESS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robinlayer/effective.hpp"
#include "robinlayer/geometry.hpp"

namespace robinlayer::harness {

enum class Predictor { none, harmonic, degenerate };

struct SweepPlan {
    geometry::CurveSpec spec;
    std::size_t curve_n = 512;
    std::vector<double> alphas;       // positive, ascending
    std::size_t j_max = 1;
    bool do_effective = true;
    bool do_bracket = false;
    std::size_t n_s = 256;
    std::size_t n_t = 64;
    bool scale_n_t = true;  // grow n_t ~ alpha log(alpha) to hold the t-grid error
    double b = 2.0;
    std::size_t eff_n = 0;  // 0: n_s when bracketing (cancels s-grid error), else curve_n
    Predictor predictor = Predictor::none;
    std::string out_csv;
    std::string out_json;
    unsigned seed = 0;

    void validate() const;
};

struct RemainderRow {
    double alpha = 0.0;
    double delta = 0.0;
    std::size_t j = 0;
    double lower = 0.0, upper = 0.0, midpoint = 0.0, halfwidth = 0.0;
    double effective = 0.0;
    double remainder = 0.0;   // midpoint + alpha^2 - effective
    double predicted = 0.0;   // e_j alpha^{1/2} or e_j alpha^{1/(p+1)}
    bool bracket_ok = false;
    std::string error;        // per-row failure, empty on success
};

struct RemainderTable {
    std::vector<RemainderRow> rows;
};

RemainderTable run_sweep(const SweepPlan& plan);

struct FitResult {
    double slope = 0.0;
    double stderr_slope = 0.0;
    double intercept = 0.0;   // log prefactor
    double prefactor = 0.0;   // exp(intercept)
};

/// OLS on (log alpha, log value); needs >= 4 points with positive values.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& pairs);

struct GapWindow {
    double lower = 0.0, upper = 0.0;
    bool certified = false;   // gap length exceeds twice the remainder budget
};

struct GapReportRow {
    double alpha = 0.0;
    effective::BandStructure bands;
    std::vector<GapWindow> windows;
};

struct GapReport {
    double remainder_budget = 0.0;
    std::vector<GapReportRow> rows;
};

/// Band structures and gap windows for the effective operator of a periodic
/// cell. A window is certified when the effective gap is longer than twice
/// the supplied remainder budget.
GapReport gap_report(const geometry::PeriodicCell& cell,
                     const std::vector<double>& alphas, std::size_t n,
                     std::size_t theta_count, std::size_t j_max,
                     double remainder_budget);

void write_csv(const RemainderTable& table, const std::string& path);
void write_json(const RemainderTable& table, const SweepPlan& plan,
                const std::string& path);

/// One standalone SVG per metric (remainder, bracket, excess). Deterministic
/// byte output for a given table.
void emit_plots(const RemainderTable& table, const std::string& dir);

/// Line plot helper shared by the plot outputs; exposed for band plots.
void write_svg_lines(const std::string& path, const std::string& title,
                     const std::vector<std::vector<std::pair<double, double>>>& series);

}  // namespace robinlayer::harness

#endif
