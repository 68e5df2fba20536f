#ifndef ROBINLAYER_LINALG_HPP
#define ROBINLAYER_LINALG_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace robinlayer::linalg {

/// Compressed sparse row storage of a symmetric matrix. Both triangles are
/// stored so that mat-vec is a plain CSR product.
class SparseSym {
public:
    SparseSym() = default;

    /// Build from triplets (duplicates are summed). Entries must come in
    /// symmetric pairs or on the diagonal.
    static SparseSym from_triplets(std::size_t n,
                                   const std::vector<std::size_t>& rows,
                                   const std::vector<std::size_t>& cols,
                                   const std::vector<double>& vals);

    std::size_t dim() const { return n_; }
    std::size_t nnz() const { return vals_.size(); }

    void apply(const double* x, double* y) const;
    std::vector<double> apply(const std::vector<double>& x) const;

    /// Largest |A_ij| over stored entries.
    double max_abs() const;

    /// Checks |A_ij - A_ji| <= tol * max|A| on `probes` random stored entries.
    bool symmetric_probe(std::size_t probes = 64, double tol = 1e-14,
                         unsigned seed = 12345) const;

    /// MatrixMarket coordinate format (general symmetric, lower triangle).
    void write_matrix_market(const std::string& path) const;

    const std::vector<std::size_t>& row_offsets() const { return row_off_; }
    const std::vector<std::size_t>& col_indices() const { return col_idx_; }
    const std::vector<double>& values() const { return vals_; }

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_off_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> vals_;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> residuals;     // ||A v - lambda v|| / ||v||
    std::vector<bool> converged;
    std::size_t iterations = 0;
};

/// All eigenvalues of a dense symmetric matrix (row-major, n*n entries).
/// Backed by a Householder tridiagonalization + implicit QL solve.
SpectrumResult dense_eigh(const std::vector<double>& matrix, std::size_t n);

/// k lowest eigenvalues of a sparse symmetric matrix by Lanczos iteration
/// with full reorthogonalization and a deterministic start vector. A caller
/// may pass its own (deterministic) start vector when it knows the rough
/// shape of the low modes; this only changes the iteration count, not the
/// converged values.
/// When value_tol > 0 the iteration additionally stops once every requested
/// Ritz value has moved by less than value_tol * max(1, |value|) over three
/// consecutive checks; the converged flags are then set even though the
/// residual bound may still exceed tol. Needed for stiff discretizations
/// whose operator norm (~1/h^2) makes small absolute residuals unreachable.
SpectrumResult lanczos_lowest(const SparseSym& matrix, std::size_t k,
                              double tol = 1e-9, std::size_t max_iter = 0,
                              const std::vector<double>* start = nullptr,
                              double value_tol = 0.0);

/// Same, for the generalized problem A v = lambda M v with M diagonal
/// positive: folds M in by the similarity M^{-1/2} A M^{-1/2}. The start
/// vector, if given, lives in the original (unfolded) variables.
SpectrumResult lanczos_lowest_weighted(const SparseSym& matrix,
                                       const std::vector<double>& diag_mass,
                                       std::size_t k, double tol = 1e-9,
                                       std::size_t max_iter = 0,
                                       const std::vector<double>* start = nullptr,
                                       double value_tol = 0.0);

}  // namespace robinlayer::linalg

#endif
