#ifndef ROBINLAYER_EFFECTIVE_HPP
#define ROBINLAYER_EFFECTIVE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "robinlayer/geometry.hpp"
#include "robinlayer/linalg.hpp"

namespace robinlayer::effective {

/// -d^2/ds^2 - alpha kappa(s) on a periodic arc-length grid.
struct EffectiveOperator {
    double length = 0.0;
    std::vector<double> kappa;  // on the assembly grid
    double alpha = 0.0;
    std::size_t n = 0;
    linalg::SparseSym matrix;

    double ds() const { return length / double(n); }
};

EffectiveOperator assemble_effective(const geometry::ArcCurve& curve,
                                     double alpha, std::size_t n);
EffectiveOperator assemble_effective(const geometry::PeriodicCell& cell,
                                     double alpha, std::size_t n);

/// k lowest eigenvalues. Dense solve when n <= 2000 (resolves multiplicities
/// exactly), Lanczos otherwise.
linalg::SpectrumResult effective_eigs(const EffectiveOperator& op, std::size_t k,
                                      double tol = 0.0, std::size_t max_iter = 0);

/// Levels sum_k sqrt(mu_k/2)(2 n_k - 1) of the multi-well harmonic model,
/// smallest `count` with multiplicity.
struct HarmonicLevels {
    std::vector<double> mu;
    std::vector<double> levels;
};
HarmonicLevels harmonic_levels(const std::vector<double>& mu, std::size_t count);

/// -d^2/ds^2 + C_p s^{2p} on the line, truncated to [-W, W] with Dirichlet
/// ends. The box is doubled until the ground level is stable to 1e-8.
struct DegenerateWellSpec {
    int p = 2;
    double Cp = 1.0;
    double halfwidth = 12.0;
    std::size_t n = 4000;
};
std::vector<double> degenerate_well_levels(const DegenerateWellSpec& spec,
                                           std::size_t count);

struct BandStructure {
    double alpha = 0.0;
    std::vector<double> theta_grid;            // [0, 2 pi], includes 0 and pi
    std::vector<std::vector<double>> bands;    // bands[j][i] = eps_j(theta_i)
    std::vector<std::pair<double, double>> gaps;
};

BandStructure bloch_bands(const geometry::PeriodicCell& cell, double alpha,
                          std::size_t n, std::size_t theta_count,
                          std::size_t j_max);

/// Maximal open intervals between the unions of computed bands. Edges are
/// taken at theta in {0, pi}; the full grid is the cross-check.
std::vector<std::pair<double, double>> detect_gaps(const BandStructure& bands);

}  // namespace robinlayer::effective

#endif
