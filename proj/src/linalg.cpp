#include "robinlayer/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>

namespace robinlayer::linalg {

SparseSym SparseSym::from_triplets(std::size_t n,
                                   const std::vector<std::size_t>& rows,
                                   const std::vector<std::size_t>& cols,
                                   const std::vector<double>& vals) {
    if (rows.size() != cols.size() || rows.size() != vals.size())
        throw std::invalid_argument("SparseSym: triplet arrays differ in length");
    std::vector<std::map<std::size_t, double>> by_row(n);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (rows[t] >= n || cols[t] >= n)
            throw std::invalid_argument("SparseSym: index out of range");
        if (!std::isfinite(vals[t]))
            throw std::invalid_argument("SparseSym: non-finite entry");
        by_row[rows[t]][cols[t]] += vals[t];
    }
    SparseSym a;
    a.n_ = n;
    a.row_off_.assign(1, 0);
    a.row_off_.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [j, v] : by_row[i]) {
            a.col_idx_.push_back(j);
            a.vals_.push_back(v);
        }
        a.row_off_.push_back(a.col_idx_.size());
    }
    return a;
}

void SparseSym::apply(const double* x, double* y) const {
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t p = row_off_[i]; p < row_off_[i + 1]; ++p)
            acc += vals_[p] * x[col_idx_[p]];
        y[i] = acc;
    }
}

std::vector<double> SparseSym::apply(const std::vector<double>& x) const {
    if (x.size() != n_)
        throw std::invalid_argument("SparseSym::apply: dimension mismatch");
    std::vector<double> y(n_);
    apply(x.data(), y.data());
    return y;
}

double SparseSym::max_abs() const {
    double m = 0.0;
    for (double v : vals_) m = std::max(m, std::fabs(v));
    return m;
}

namespace {
double entry_at(const SparseSym& a, std::size_t i, std::size_t j) {
    const auto& off = a.row_offsets();
    const auto& col = a.col_indices();
    const auto& val = a.values();
    for (std::size_t p = off[i]; p < off[i + 1]; ++p)
        if (col[p] == j) return val[p];
    return 0.0;
}
}  // namespace

bool SparseSym::symmetric_probe(std::size_t probes, double tol,
                                unsigned seed) const {
    if (nnz() == 0) return true;
    const double scale = std::max(max_abs(), 1e-300);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, nnz() - 1);
    for (std::size_t t = 0; t < probes; ++t) {
        std::size_t p = pick(rng);
        std::size_t i = 0;
        while (row_off_[i + 1] <= p) ++i;
        std::size_t j = col_idx_[p];
        if (std::fabs(vals_[p] - entry_at(*this, j, i)) > tol * scale)
            return false;
    }
    return true;
}

void SparseSym::write_matrix_market(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t p = row_off_[i]; p < row_off_[i + 1]; ++p)
            if (col_idx_[p] <= i) ++count;
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << n_ << " " << n_ << " " << count << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t p = row_off_[i]; p < row_off_[i + 1]; ++p)
            if (col_idx_[p] <= i)
                out << i + 1 << " " << col_idx_[p] + 1 << " " << vals_[p] << "\n";
}

SpectrumResult dense_eigh(const std::vector<double>& matrix, std::size_t n) {
    if (n > 2000) throw std::invalid_argument("dense_eigh: n > 2000");
    if (matrix.size() != n * n)
        throw std::invalid_argument("dense_eigh: size mismatch");
    for (double v : matrix)
        if (!std::isfinite(v))
            throw std::invalid_argument("dense_eigh: non-finite entry");
    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = matrix[i * n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense_eigh: eigensolver failed");

    SpectrumResult r;
    r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    r.residuals.assign(n, 0.0);
    r.converged.assign(n, true);
    r.iterations = 1;
    // spot-check residuals on a few pairs
    const std::size_t samples = std::min<std::size_t>(5, n);
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t j = s * (n - 1) / std::max<std::size_t>(1, samples - 1);
        Eigen::VectorXd v = es.eigenvectors().col(j);
        r.residuals[j] = (a * v - r.eigenvalues[j] * v).norm() / v.norm();
    }
    return r;
}

namespace {

// deterministic start: normalized alternating-sign ramp
std::vector<double> start_vector(std::size_t n) {
    std::vector<double> v(n);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = (1.0 + double(i) / double(n)) * (i % 2 == 0 ? 1.0 : -1.0);
        v[i] = x;
        norm2 += x * x;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
    return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return Eigen::Map<const Eigen::VectorXd>(a.data(), a.size())
        .dot(Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()));
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    Eigen::Map<Eigen::VectorXd>(y.data(), y.size()) +=
        alpha * Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
}

}  // namespace

SpectrumResult lanczos_lowest(const SparseSym& matrix, std::size_t k,
                              double tol, std::size_t max_iter,
                              const std::vector<double>* start,
                              double value_tol) {
    const std::size_t n = matrix.dim();
    if (k > 20) throw std::invalid_argument("lanczos_lowest: k > 20");
    if (n < 4 * k) throw std::invalid_argument("lanczos_lowest: dim < 4k");
    if (max_iter == 0)
        max_iter = std::min<std::size_t>(n, std::max<std::size_t>(40 * k, 600));

    // Thick-restart scheme: the basis is capped at `window` vectors; on
    // hitting the cap the `keep` lowest Ritz vectors are retained and the
    // iteration continues. Full reorthogonalization applies within the
    // window, so the cost per step stays O(window * n) instead of growing
    // with the total step count.
    const std::size_t window =
        n <= 400 ? n
                 : std::max<std::size_t>(10 * k, n > 30000 ? 120 : 200);
    const std::size_t keep =
        std::min(window / 2, std::max<std::size_t>(2 * k + 8, 16));

    std::vector<std::vector<double>> basis;
    basis.reserve(window);
    Eigen::MatrixXd tmat = Eigen::MatrixXd::Zero(window, window);

    std::vector<double> v;
    if (start != nullptr) {
        if (start->size() != n)
            throw std::invalid_argument("lanczos_lowest: start vector size");
        v = *start;
        const double nrm = std::sqrt(dot(v, v));
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw std::invalid_argument("lanczos_lowest: degenerate start vector");
        for (double& x : v) x /= nrm;
    } else {
        v = start_vector(n);
    }
    std::vector<double> w(n);

    SpectrumResult result;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;

    const double breakdown = 1e-14 * std::max(1.0, matrix.max_abs());
    std::size_t matvecs = 0;
    std::vector<double> ritz, ritz_res, ritz_prev;
    std::size_t stagnant_checks = 0;
    bool stop = false;
    while (!stop) {
        basis.push_back(v);
        const std::size_t m = basis.size();
        matrix.apply(v.data(), w.data());
        ++matvecs;
        // project onto the basis and orthogonalize, two passes; the summed
        // coefficients are the entries of the projected matrix
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < m; ++i) {
                const double c = dot(basis[i], w);
                axpy(-c, basis[i], w);
                tmat(i, m - 1) += c;
            }
        for (std::size_t i = 0; i + 1 < m; ++i) tmat(m - 1, i) = tmat(i, m - 1);
        const double b = std::sqrt(dot(w, w));

        const bool last =
            b < breakdown || matvecs >= max_iter || m >= n;
        if (m >= std::max<std::size_t>(2 * k, 8) && (matvecs % 10 == 0 || last)) {
            es.compute(tmat.topLeftCorner(m, m));
            ritz.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
            ritz_res.resize(std::min(k, m));
            bool all_ok = true;
            for (std::size_t j = 0; j < ritz_res.size(); ++j) {
                // residual bound |beta_m * s_{m,j}| for Ritz pair j
                ritz_res[j] = std::fabs(b * es.eigenvectors()(m - 1, j));
                if (ritz_res[j] > tol) all_ok = false;
            }
            if (std::getenv("ROBINLAYER_LANCZOS_TRACE") != nullptr &&
                matvecs % 50 == 0)
                std::fprintf(stderr,
                             "lanczos mv=%zu m=%zu res0=%.3e tol=%.3e ritz0=%.12e\n",
                             matvecs, m, ritz_res[0], tol, ritz[0]);
            bool stagnated = false;
            if (value_tol > 0.0 && matvecs > std::max<std::size_t>(4 * k, 30)) {
                if (ritz_prev.size() >= ritz_res.size()) {
                    bool still = true;
                    for (std::size_t j = 0; j < ritz_res.size(); ++j)
                        if (std::fabs(ritz[j] - ritz_prev[j]) >
                            value_tol * std::max(1.0, std::fabs(ritz[j])))
                            still = false;
                    stagnant_checks = still ? stagnant_checks + 1 : 0;
                    stagnated = stagnant_checks >= 3;
                }
                ritz_prev.assign(ritz.begin(), ritz.begin() + ritz_res.size());
            }
            if (all_ok || stagnated || last) {
                result.iterations = matvecs;
                const std::size_t kk = std::min(k, m);
                result.eigenvalues.assign(ritz.begin(), ritz.begin() + kk);
                result.residuals.assign(ritz_res.begin(), ritz_res.begin() + kk);
                result.converged.resize(kk);
                for (std::size_t j = 0; j < kk; ++j)
                    result.converged[j] =
                        ritz_res[j] <= tol || stagnated || b < breakdown;
                return result;
            }
        }
        if (b < breakdown) {
            // invariant subspace before the first convergence check could run
            stop = true;
            continue;
        }

        if (m == window) {
            // thick restart: keep the lowest Ritz vectors, continue with the
            // current residual direction as the next basis vector
            es.compute(tmat.topLeftCorner(m, m));
            const std::size_t l = std::min(keep, m - 1);
            std::vector<std::vector<double>> kept(l, std::vector<double>(n, 0.0));
            for (std::size_t j = 0; j < l; ++j)
                for (std::size_t i = 0; i < m; ++i)
                    axpy(es.eigenvectors()(i, j), basis[i], kept[j]);
            // safety re-orthonormalization (modified Gram-Schmidt)
            for (std::size_t j = 0; j < l; ++j) {
                for (std::size_t i = 0; i < j; ++i)
                    axpy(-dot(kept[i], kept[j]), kept[i], kept[j]);
                const double nrm = std::sqrt(dot(kept[j], kept[j]));
                for (double& x : kept[j]) x /= nrm;
            }
            basis = std::move(kept);
            tmat.setZero();
            for (std::size_t j = 0; j < l; ++j)
                tmat(j, j) = es.eigenvalues()(j);
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b;
    }

    // breakdown with no Ritz data yet: diagonalize what we have
    const std::size_t m = basis.size();
    es.compute(tmat.topLeftCorner(m, m));
    const std::size_t kk = std::min(k, m);
    result.iterations = matvecs;
    result.eigenvalues.assign(es.eigenvalues().data(),
                              es.eigenvalues().data() + kk);
    result.residuals.assign(kk, 0.0);
    result.converged.assign(kk, true);
    return result;
}

SpectrumResult lanczos_lowest_weighted(const SparseSym& matrix,
                                       const std::vector<double>& diag_mass,
                                       std::size_t k, double tol,
                                       std::size_t max_iter,
                                       const std::vector<double>* start,
                                       double value_tol) {
    const std::size_t n = matrix.dim();
    if (diag_mass.size() != n)
        throw std::invalid_argument("lanczos_lowest_weighted: mass size mismatch");
    if (start != nullptr && start->size() != n)
        throw std::invalid_argument("lanczos_lowest_weighted: start vector size");
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(diag_mass[i] > 0.0))
            throw std::invalid_argument("lanczos_lowest_weighted: mass not positive");
        inv_sqrt[i] = 1.0 / std::sqrt(diag_mass[i]);
    }
    // scale A -> M^{-1/2} A M^{-1/2}, exact for diagonal positive M
    std::vector<std::size_t> rows, cols;
    std::vector<double> vals;
    const auto& off = matrix.row_offsets();
    const auto& col = matrix.col_indices();
    const auto& val = matrix.values();
    rows.reserve(matrix.nnz());
    cols.reserve(matrix.nnz());
    vals.reserve(matrix.nnz());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = off[i]; p < off[i + 1]; ++p) {
            rows.push_back(i);
            cols.push_back(col[p]);
            vals.push_back(val[p] * inv_sqrt[i] * inv_sqrt[col[p]]);
        }
    SparseSym scaled = SparseSym::from_triplets(n, rows, cols, vals);
    if (start == nullptr)
        return lanczos_lowest(scaled, k, tol, max_iter, nullptr, value_tol);
    // fold the start vector the same way: w = M^{1/2} u
    std::vector<double> folded(n);
    for (std::size_t i = 0; i < n; ++i) folded[i] = (*start)[i] / inv_sqrt[i];
    return lanczos_lowest(scaled, k, tol, max_iter, &folded, value_tol);
}

}  // namespace robinlayer::linalg
