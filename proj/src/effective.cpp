#include "robinlayer/effective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <stdexcept>

namespace robinlayer::effective {

namespace {
constexpr double kPi = std::numbers::pi;

EffectiveOperator assemble(double length, const std::vector<double>& kappa_src,
                           double alpha, std::size_t n) {
    if (n < 64) throw std::invalid_argument("assemble_effective: need n >= 64");
    EffectiveOperator op;
    op.length = length;
    op.alpha = alpha;
    op.n = n;
    op.kappa.resize(n);
    const std::size_t m = kappa_src.size();
    if (m == n) {
        op.kappa = kappa_src;
    } else {  // linear interpolation onto the assembly grid
        for (std::size_t i = 0; i < n; ++i) {
            const double x = double(i) * double(m) / double(n);
            const std::size_t j = std::size_t(x) % m;
            const double frac = x - std::floor(x);
            op.kappa[i] = (1.0 - frac) * kappa_src[j] + frac * kappa_src[(j + 1) % m];
        }
    }

    const double h = length / double(n);
    const double off = -1.0 / (h * h);
    std::vector<std::size_t> rows, cols;
    std::vector<double> vals;
    rows.reserve(3 * n);
    cols.reserve(3 * n);
    vals.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(i);
        cols.push_back(i);
        vals.push_back(2.0 / (h * h) - alpha * op.kappa[i]);
        rows.push_back(i);
        cols.push_back((i + 1) % n);
        vals.push_back(off);
        rows.push_back(i);
        cols.push_back((i + n - 1) % n);
        vals.push_back(off);
    }
    op.matrix = linalg::SparseSym::from_triplets(n, rows, cols, vals);
    return op;
}

}  // namespace

EffectiveOperator assemble_effective(const geometry::ArcCurve& curve,
                                     double alpha, std::size_t n) {
    return assemble(curve.length, curve.kappa, alpha, n);
}

EffectiveOperator assemble_effective(const geometry::PeriodicCell& cell,
                                     double alpha, std::size_t n) {
    return assemble(cell.period, cell.kappa, alpha, n);
}

linalg::SpectrumResult effective_eigs(const EffectiveOperator& op, std::size_t k,
                                      double tol, std::size_t max_iter) {
    const std::size_t n = op.n;
    if (tol <= 0.0) tol = std::max(1e-9, 1e-12 * op.matrix.max_abs());
    if (n <= 2000) {
        std::vector<double> dense(n * n, 0.0);
        const auto& off = op.matrix.row_offsets();
        const auto& col = op.matrix.col_indices();
        const auto& val = op.matrix.values();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t p = off[i]; p < off[i + 1]; ++p)
                dense[i * n + col[p]] = val[p];
        auto r = linalg::dense_eigh(dense, n);
        const std::size_t kk = std::min(k, n);
        r.eigenvalues.resize(kk);
        r.residuals.resize(kk);
        r.converged.resize(kk);
        return r;
    }
    return linalg::lanczos_lowest(op.matrix, k, tol, max_iter);
}

HarmonicLevels harmonic_levels(const std::vector<double>& mu, std::size_t count) {
    if (mu.empty()) throw std::invalid_argument("harmonic_levels: empty mu");
    if (count > 64) throw std::invalid_argument("harmonic_levels: count > 64");
    for (double m : mu)
        if (!(m > 0.0))
            throw std::invalid_argument("harmonic_levels: mu_k must be positive");

    std::vector<double> omega(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) omega[i] = std::sqrt(0.5 * mu[i]);

    // best-first frontier search over multi-indices n_k >= 1
    using Node = std::pair<double, std::vector<int>>;
    auto value = [&](const std::vector<int>& idx) {
        double s = 0.0;
        for (std::size_t i = 0; i < idx.size(); ++i)
            s += omega[i] * double(2 * idx[i] - 1);
        return s;
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
    std::set<std::vector<int>> seen;
    std::vector<int> base(mu.size(), 1);
    heap.emplace(value(base), base);
    seen.insert(base);

    HarmonicLevels out;
    out.mu = mu;
    while (out.levels.size() < count && !heap.empty()) {
        auto [v, idx] = heap.top();
        heap.pop();
        out.levels.push_back(v);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            auto next = idx;
            ++next[i];
            if (seen.insert(next).second) heap.emplace(value(next), next);
        }
    }
    return out;
}

namespace {

// Sturm-sequence count of eigenvalues of the symmetric tridiagonal
// (diag, off) strictly below x.
std::size_t sturm_count(const std::vector<double>& diag,
                        const std::vector<double>& off, double x) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double o2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
        q = diag[i] - x - o2 / q;
        if (q == 0.0) q = 1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> well_levels_once(int p, double Cp, double W, std::size_t n,
                                     std::size_t count) {
    // interior nodes x_i = -W + i h, i = 1..n, Dirichlet ends
    const double h = 2.0 * W / double(n + 1);
    std::vector<double> diag(n), off(n - 1, -1.0 / (h * h));
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -W + double(i + 1) * h;
        diag[i] = 2.0 / (h * h) + Cp * std::pow(x * x, p);
    }
    // bisection on the Sturm count: exact, and immune to the huge spread
    // Cp W^{2p} + 4/h^2 that chokes iterative solvers here
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double o = (i ? std::fabs(off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::fabs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - o);
        hi = std::max(hi, diag[i] + o);
    }
    std::vector<double> levels(count);
    for (std::size_t j = 0; j < count; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::fabs(b));
             ++it) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(diag, off, mid) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        levels[j] = 0.5 * (a + b);
    }
    return levels;
}

}  // namespace

std::vector<double> degenerate_well_levels(const DegenerateWellSpec& spec,
                                           std::size_t count) {
    if (spec.p < 1 || !(spec.Cp > 0.0))
        throw std::invalid_argument("degenerate_well_levels: bad p or C_p");
    if (count == 0 || count > 20)
        throw std::invalid_argument("degenerate_well_levels: count in [1, 20]");
    double W = spec.halfwidth;
    if (!(spec.Cp * std::pow(W, 2 * spec.p) >= 50.0 * double(count)))
        throw std::invalid_argument(
            "degenerate_well_levels: box too small, increase halfwidth");
    std::size_t n = spec.n;
    auto levels = well_levels_once(spec.p, spec.Cp, W, n, count);
    for (int round = 0; round < 4; ++round) {
        auto wider = well_levels_once(spec.p, spec.Cp, 2.0 * W, 2 * n + 1, count);
        if (std::fabs(wider.front() - levels.front()) < 1e-8) return levels;
        W *= 2.0;
        n = 2 * n + 1;
        levels = std::move(wider);
    }
    throw std::runtime_error(
        "degenerate_well_levels: ground level not box-converged, enlarge W");
}

namespace {

// 2n x 2n real symmetric realization of the Bloch matrix with corner phase
std::vector<double> bloch_eigs(const std::vector<double>& kappa, double length,
                               double alpha, double theta, std::size_t j_max) {
    const std::size_t n = kappa.size();
    const double h = length / double(n);
    const double w = 1.0 / (h * h);
    const double cr = -w * std::cos(theta);  // Re of the corner entry
    const double ci = -w * std::sin(theta);  // Im, H(n-1, 0) = -w e^{i theta}
    const std::size_t N = 2 * n;
    std::vector<double> a(N * N, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * N + j]; };
    // block [[Re, -Im], [Im, Re]]
    for (std::size_t i = 0; i < n; ++i) {
        const double d = 2.0 * w - alpha * kappa[i];
        at(i, i) = d;
        at(i + n, i + n) = d;
        if (i + 1 < n) {
            at(i, i + 1) = at(i + 1, i) = -w;
            at(i + n, i + 1 + n) = at(i + 1 + n, i + n) = -w;
        }
    }
    // corner: H(n-1, 0) = -w e^{i theta}, H(0, n-1) = conj
    at(n - 1, 0) += cr;
    at(0, n - 1) += cr;
    at(n - 1 + n, 0 + n) += cr;
    at(0 + n, n - 1 + n) += cr;
    at(n - 1 + n, 0) += ci;    // Im block
    at(0, n - 1 + n) += ci;
    at(0 + n, n - 1) += -ci;
    at(n - 1, 0 + n) += -ci;

    auto r = linalg::dense_eigh(a, N);
    // eigenvalues of the doubled system come in identical pairs
    std::vector<double> eigs;
    eigs.reserve(j_max);
    for (std::size_t j = 0; j < j_max && 2 * j < N; ++j)
        eigs.push_back(0.5 * (r.eigenvalues[2 * j] + r.eigenvalues[2 * j + 1]));
    return eigs;
}

}  // namespace

BandStructure bloch_bands(const geometry::PeriodicCell& cell, double alpha,
                          std::size_t n, std::size_t theta_count,
                          std::size_t j_max) {
    if (theta_count < 17 || theta_count % 2 == 0)
        throw std::invalid_argument(
            "bloch_bands: theta_count must be odd and >= 17 (grid must hit pi)");
    if (n > 1000)
        throw std::invalid_argument("bloch_bands: n > 1000 (dense Bloch solve)");

    std::vector<double> kappa(n);
    const std::size_t m = cell.kappa.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = double(i) * double(m) / double(n);
        const std::size_t j = std::size_t(x) % m;
        const double frac = x - std::floor(x);
        kappa[i] = (1.0 - frac) * cell.kappa[j] + frac * cell.kappa[(j + 1) % m];
    }

    BandStructure bs;
    bs.alpha = alpha;
    bs.theta_grid.resize(theta_count);
    bs.bands.assign(j_max, std::vector<double>(theta_count));
    for (std::size_t t = 0; t < theta_count; ++t) {
        const double theta = 2.0 * kPi * double(t) / double(theta_count - 1);
        bs.theta_grid[t] = theta;
        auto eigs = bloch_eigs(kappa, cell.period, alpha, theta, j_max);
        for (std::size_t j = 0; j < j_max; ++j) bs.bands[j][t] = eigs[j];
    }
    bs.gaps = detect_gaps(bs);
    return bs;
}

std::vector<std::pair<double, double>> detect_gaps(const BandStructure& bands) {
    if (bands.bands.size() < 2)
        throw std::invalid_argument("detect_gaps: need j_max >= 2");
    const double merge_tol = 1e-9 * std::max(1.0, std::fabs(bands.alpha));

    // band intervals from the full grid
    std::vector<std::pair<double, double>> intervals;
    for (const auto& band : bands.bands) {
        const auto [lo, hi] = std::minmax_element(band.begin(), band.end());
        intervals.emplace_back(*lo, *hi);
    }
    std::sort(intervals.begin(), intervals.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& iv : intervals) {
        if (!merged.empty() && iv.first <= merged.back().second + merge_tol)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    std::vector<std::pair<double, double>> gaps;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i)
        gaps.emplace_back(merged[i].second, merged[i + 1].first);
    return gaps;
}

}  // namespace robinlayer::effective
