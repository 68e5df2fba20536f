#ifndef ROBINLAYER_MODEL1D_HPP
#define ROBINLAYER_MODEL1D_HPP

#include <utility>
#include <vector>

namespace robinlayer::model1d {

/// Ground state of the half-layer model -f'' on (0, delta) with the Robin
/// condition f'(0) = -alpha f(0) and either a Dirichlet end f(delta) = 0 or
/// a Robin end f'(delta) = beta f(delta).
struct Model1DResult {
    double alpha = 0.0;
    double delta = 0.0;
    double beta = 0.0;        // meaningful only if !dirichlet_end
    bool dirichlet_end = true;
    double k = 0.0;           // decay rate, E = -k^2
    double E = 0.0;
    double psi0_sq = 0.0;     // psi(0)^2, L2-normalized eigenfunction
    double psidelta_sq = 0.0; // psi(delta)^2

    /// Normalized eigenfunction evaluated at t in [0, delta].
    double psi(double t) const;
};

Model1DResult solve_dirichlet_model(double alpha, double delta);
Model1DResult solve_robin_model(double alpha, double delta, double beta);

struct AsymptoticsRow {
    double alpha, delta, prod;   // prod = alpha*delta
    double e_ratio;              // |E + alpha^2| / (alpha^2 e^{-delta alpha})
    double psi_ratio;            // |psi(0)^2 - 2 alpha| / (alpha e^{-delta alpha})
};

/// Remainder table for the ground-state asymptotics over a grid of
/// (alpha, delta) pairs with alpha*delta in [5, 30].
std::vector<AsymptoticsRow> verify_model_asymptotics(
    const std::vector<std::pair<double, double>>& grid, bool dirichlet_end);

}  // namespace robinlayer::model1d

#endif
