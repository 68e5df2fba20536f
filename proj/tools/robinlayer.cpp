// Command-line front end for the Robin layer toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "robinlayer/config.hpp"
#include "robinlayer/effective.hpp"
#include "robinlayer/geometry.hpp"
#include "robinlayer/harness.hpp"
#include "robinlayer/layer.hpp"
#include "robinlayer/model1d.hpp"
#include "robinlayer/oracles.hpp"

namespace rl = robinlayer;
using nlohmann::json;

namespace {

rl::geometry::CurveSpec spec_from_options(const std::string& config_path,
                                          const std::string& preset,
                                          const rl::config::Table& overrides) {
    rl::config::Table table;
    if (!config_path.empty()) table = rl::config::load_toml_file(config_path);
    if (!preset.empty()) table["kind"] = preset;
    for (const auto& [k, v] : overrides) table[k] = v;
    return rl::config::curve_spec_from_table(table);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robinlayer: eigenvalues of the attractive Robin Laplacian "
                 "via boundary-layer bracketing and the effective operator "
                 "-d^2/ds^2 - alpha kappa(s)"};
    app.require_subcommand(1);
    unsigned seed = 0;
    app.add_option("--seed", seed, "seed recorded in machine output");

    // shared curve options
    std::string config_path, preset;
    double opt_R = 1.0, opt_a = 2.0, opt_b_axis = 1.0, opt_eps = 0.1;
    double opt_Cp = 1.0, opt_ell = 1.0;
    int opt_mode = 2, opt_p = 2;
    std::size_t curve_n = 512;
    auto add_curve_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "curve config (TOML)");
        cmd->add_option("--preset", preset,
                        "curve kind: circle|ellipse|perturbed_circle|flat_well|"
                        "stadium|sampled");
        cmd->add_option("--R", opt_R, "radius (circle, perturbed_circle, stadium)");
        cmd->add_option("--a", opt_a, "ellipse semi-axis a");
        cmd->add_option("--b-axis", opt_b_axis, "ellipse semi-axis b");
        cmd->add_option("--eps", opt_eps, "perturbed_circle amplitude");
        cmd->add_option("--mode", opt_mode, "perturbed_circle mode");
        cmd->add_option("--p", opt_p, "flat_well half-degree");
        cmd->add_option("--Cp", opt_Cp, "flat_well coefficient");
        cmd->add_option("--ell", opt_ell, "stadium straight length");
        cmd->add_option("--n", curve_n, "curve grid size");
    };
    auto build_curve = [&]() {
        rl::config::Table overrides;
        if (!preset.empty()) {
            overrides["R"] = opt_R;
            overrides["a"] = opt_a;
            overrides["b"] = opt_b_axis;
            overrides["eps"] = opt_eps;
            overrides["mode"] = double(opt_mode);
            overrides["p"] = double(opt_p);
            overrides["Cp"] = opt_Cp;
            overrides["ell"] = opt_ell;
        }
        auto spec = spec_from_options(config_path, preset, overrides);
        return rl::geometry::build_arc_curve(spec, curve_n);
    };

    // ---- curve ----
    auto* cmd_curve = app.add_subcommand("curve", "curve info and curvature peak");
    add_curve_options(cmd_curve);

    // ---- model1d ----
    auto* cmd_model = app.add_subcommand("model1d", "1D half-layer model ground state");
    double m_alpha = 5.0, m_delta = 2.0, m_beta = -1.0;
    cmd_model->add_option("--alpha", m_alpha, "Robin parameter")->required();
    cmd_model->add_option("--delta", m_delta, "interval length")->required();
    cmd_model->add_option("--beta", m_beta, "end coupling (omit for Dirichlet end)");

    // ---- effective ----
    auto* cmd_eff = app.add_subcommand("effective",
                                       "eigenvalues of the effective operator");
    add_curve_options(cmd_eff);
    double e_alpha = 100.0;
    std::size_t e_k = 4;
    std::string e_out;
    cmd_eff->add_option("--alpha", e_alpha, "Robin parameter")->required();
    cmd_eff->add_option("-k,--count", e_k, "number of eigenvalues");
    cmd_eff->add_option("--out", e_out, "CSV output path (alpha,j,eigenvalue)");

    // ---- bands ----
    auto* cmd_bands = app.add_subcommand("bands", "Floquet band functions and gaps");
    add_curve_options(cmd_bands);
    double bd_alpha = 100.0;
    std::size_t bd_thetas = 33, bd_jmax = 4, bd_n = 384;
    std::string bd_out, bd_cell;
    cmd_bands->add_option("--alpha", bd_alpha, "Robin parameter")->required();
    cmd_bands->add_option("--thetas", bd_thetas, "theta grid size (odd, >= 17)");
    cmd_bands->add_option("--jmax", bd_jmax, "number of bands");
    cmd_bands->add_option("--cell-n", bd_n, "Bloch matrix size");
    cmd_bands->add_option("--cell", bd_cell, "cell kind: free|constant|cosine");
    cmd_bands->add_option("--out", bd_out, "CSV output path (theta,j,epsilon)");

    // ---- bracket ----
    auto* cmd_br = app.add_subcommand("bracket",
                                      "two-sided layer bracketing of E_j");
    add_curve_options(cmd_br);
    double br_alpha = 20.0, br_delta = 0.0, br_b = 2.0;
    std::size_t br_ns = 256, br_nt = 64, br_k = 1;
    std::string br_out;
    cmd_br->add_option("--alpha", br_alpha, "Robin parameter")->required();
    cmd_br->add_option("--delta", br_delta, "layer width (default: b log a / a)");
    cmd_br->add_option("--b", br_b, "width schedule coefficient");
    cmd_br->add_option("--ns", br_ns, "s grid size");
    cmd_br->add_option("--nt", br_nt, "t grid size");
    cmd_br->add_option("-k,--count", br_k, "number of eigenvalues");
    cmd_br->add_option("--out", br_out, "CSV output path");

    // ---- oracle ----
    auto* cmd_or = app.add_subcommand("oracle", "independent references");
    auto* cmd_or_disk = cmd_or->add_subcommand("disk", "radial shooting for the disk");
    double or_R = 1.0, or_alpha = 20.0;
    int or_m = 0;
    cmd_or_disk->add_option("--R", or_R, "disk radius");
    cmd_or_disk->add_option("--alpha", or_alpha, "Robin parameter")->required();
    cmd_or_disk->add_option("--m", or_m, "angular mode");

    // ---- sweep ----
    auto* cmd_sweep = app.add_subcommand("sweep", "alpha sweep from a plan file");
    std::string plan_path;
    cmd_sweep->add_option("--plan", plan_path, "plan TOML")->required();

    // ---- predict ----
    auto* cmd_pred = app.add_subcommand("predict", "semiclassical level predictors");
    auto* cmd_pred_h = cmd_pred->add_subcommand("harmonic", "levels of the set of "
                                                "sums sqrt(mu_k/2)(2n_k-1)");
    std::vector<double> pr_mu;
    std::size_t pr_count = 4;
    cmd_pred_h->add_option("--mu", pr_mu, "Hessian eigenvalues")->required();
    cmd_pred_h->add_option("--count", pr_count, "number of levels");
    auto* cmd_pred_d = cmd_pred->add_subcommand("degenerate",
                                                "levels of -d^2/ds^2 + C s^{2p}");
    int pd_p = 2;
    double pd_C = 1.0;
    std::size_t pd_count = 4;
    cmd_pred_d->add_option("--p", pd_p, "half-degree p");
    cmd_pred_d->add_option("--C", pd_C, "coefficient C_p");
    cmd_pred_d->add_option("--count", pd_count, "number of levels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_curve) {
            auto curve = build_curve();
            json out = {{"n", curve.n},
                        {"length", curve.length},
                        {"closed", curve.closed},
                        {"turning", curve.total_turning()},
                        {"min_layer_width", rl::geometry::min_layer_width(curve)}};
            auto peak = rl::geometry::curvature_peak(curve);
            out["kappa_max"] = peak.kappa_max;
            out["s0"] = peak.s0;
            out["kappa_pp"] = peak.kappa_pp;
            out["flat_maximum"] = peak.flat;
            out["maxima_count"] = peak.maxima_count;
            std::cout << out.dump() << "\n";
        } else if (*cmd_model) {
            const auto r = m_beta < 0.0
                               ? rl::model1d::solve_dirichlet_model(m_alpha, m_delta)
                               : rl::model1d::solve_robin_model(m_alpha, m_delta, m_beta);
            json out = {{"alpha", r.alpha},     {"delta", r.delta},
                        {"end", r.dirichlet_end ? "dirichlet" : "robin"},
                        {"k", r.k},             {"E", r.E},
                        {"psi0_sq", r.psi0_sq}, {"psidelta_sq", r.psidelta_sq}};
            if (!r.dirichlet_end) out["beta"] = r.beta;
            std::cout << out.dump() << "\n";
        } else if (*cmd_eff) {
            auto curve = build_curve();
            auto op = rl::effective::assemble_effective(curve, e_alpha, curve.n);
            auto res = rl::effective::effective_eigs(op, e_k);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!e_out.empty()) {
                file.open(e_out);
                os = &file;
            }
            *os << "alpha,j,eigenvalue\n";
            for (std::size_t j = 0; j < res.eigenvalues.size(); ++j)
                *os << e_alpha << ',' << j + 1 << ',' << res.eigenvalues[j] << "\n";
        } else if (*cmd_bands) {
            rl::geometry::PeriodicCell cell;
            if (bd_cell == "free")
                cell = rl::geometry::make_free_cell(2.0 * 3.14159265358979323846, bd_n);
            else if (bd_cell == "cosine")
                cell = rl::geometry::make_cosine_cell(2.0 * 3.14159265358979323846, bd_n);
            else if (bd_cell == "constant")
                cell = rl::geometry::make_constant_cell(2.0 * 3.14159265358979323846,
                                                        1.0, bd_n);
            else
                cell = rl::geometry::cell_from_curve(build_curve());
            auto bs = rl::effective::bloch_bands(cell, bd_alpha, bd_n, bd_thetas,
                                                 bd_jmax);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!bd_out.empty()) {
                file.open(bd_out);
                os = &file;
            }
            *os << "theta,j,epsilon\n";
            for (std::size_t j = 0; j < bs.bands.size(); ++j)
                for (std::size_t t = 0; t < bs.theta_grid.size(); ++t)
                    *os << bs.theta_grid[t] << ',' << j + 1 << ','
                        << bs.bands[j][t] << "\n";
            for (const auto& [lo, hi] : bs.gaps)
                std::cerr << "gap: (" << lo << ", " << hi << ")\n";
        } else if (*cmd_br) {
            auto curve = build_curve();
            rl::layer::LayerConfig cfg;
            cfg.curve = curve;
            cfg.alpha = br_alpha;
            cfg.b = br_b;
            cfg.delta = br_delta > 0.0
                            ? br_delta
                            : rl::layer::default_delta(curve, br_alpha, br_b);
            cfg.n_s = br_ns;
            cfg.n_t = br_nt;
            auto br = rl::layer::bracket_eigenvalues(cfg, br_k);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!br_out.empty()) {
                file.open(br_out);
                os = &file;
            }
            *os << "alpha,delta,j,lower,upper,midpoint,halfwidth\n";
            for (std::size_t j = 0; j < br.lower.size(); ++j)
                *os << br.alpha << ',' << br.delta << ',' << j + 1 << ','
                    << br.lower[j] << ',' << br.upper[j] << ','
                    << 0.5 * (br.lower[j] + br.upper[j]) << ','
                    << 0.5 * (br.upper[j] - br.lower[j]) << "\n";
        } else if (*cmd_or) {
            rl::oracles::ShootingProblem pb;
            pb.R = or_R;
            pb.alpha = or_alpha;
            pb.m = or_m;
            json out = {{"R", pb.R}, {"alpha", pb.alpha}, {"m", pb.m},
                        {"E", rl::oracles::disk_shooting(pb)}};
            std::cout << out.dump() << "\n";
        } else if (*cmd_sweep) {
            auto plan_tbl = rl::config::load_toml_file(plan_path);
            rl::harness::SweepPlan plan;
            plan.spec = rl::config::curve_spec_from_table(plan_tbl);
            plan.curve_n = std::size_t(rl::config::get_number(plan_tbl, "curve_n", 512));
            plan.alphas = rl::config::get_array(plan_tbl, "alphas");
            plan.j_max = std::size_t(rl::config::get_number(plan_tbl, "j_max", 1));
            plan.do_effective = rl::config::get_bool(plan_tbl, "effective", true);
            plan.do_bracket = rl::config::get_bool(plan_tbl, "bracket", false);
            plan.n_s = std::size_t(rl::config::get_number(plan_tbl, "n_s", 256));
            plan.n_t = std::size_t(rl::config::get_number(plan_tbl, "n_t", 64));
            plan.b = rl::config::get_number(plan_tbl, "delta_b", 2.0);
            plan.seed = seed;
            const std::string pred =
                rl::config::get_string(plan_tbl, "predictor", "none");
            if (pred == "harmonic")
                plan.predictor = rl::harness::Predictor::harmonic;
            else if (pred == "degenerate")
                plan.predictor = rl::harness::Predictor::degenerate;
            plan.out_csv = rl::config::get_string(plan_tbl, "out_csv", "");
            plan.out_json = rl::config::get_string(plan_tbl, "out_json", "");
            auto table = rl::harness::run_sweep(plan);
            const std::string plots =
                rl::config::get_string(plan_tbl, "plots_dir", "");
            if (!plots.empty()) rl::harness::emit_plots(table, plots);
            std::size_t failed = 0;
            for (const auto& r : table.rows)
                if (!r.error.empty()) ++failed;
            std::cout << "rows: " << table.rows.size() << ", failed: " << failed
                      << "\n";
            if (failed == table.rows.size() && !table.rows.empty()) return 3;
        } else if (*cmd_pred) {
            std::vector<double> levels;
            if (*cmd_pred_h)
                levels = rl::effective::harmonic_levels(pr_mu, pr_count).levels;
            else if (*cmd_pred_d) {
                rl::effective::DegenerateWellSpec well;
                well.p = pd_p;
                well.Cp = pd_C;
                levels = rl::effective::degenerate_well_levels(well, pd_count);
            } else {
                std::cerr << "predict: choose a subcommand (harmonic|degenerate)\n";
                return 2;
            }
            for (std::size_t i = 0; i < levels.size(); ++i)
                std::cout << (i ? "," : "") << levels[i];
            std::cout << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
