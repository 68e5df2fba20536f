#ifndef ROBINLAYER_LAYER_HPP
#define ROBINLAYER_LAYER_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "robinlayer/geometry.hpp"
#include "robinlayer/linalg.hpp"

namespace robinlayer::layer {

enum class EndCondition { Dirichlet, Neumann };

struct LayerConfig {
    geometry::ArcCurve curve;
    double alpha = 0.0;
    double delta = 0.0;  // 0 = use the default schedule
    double b = 2.0;      // delta = b log(alpha) / alpha
    std::size_t n_s = 256;
    std::size_t n_t = 64;

    void validate() const;
};

/// b log(alpha)/alpha, clipped at the non-overlap width and at 1/(4 kappa_max).
double default_delta(const geometry::ArcCurve& curve, double alpha, double b = 2.0);

/// Tensor grid over (s, t): s periodic with n_s nodes, t in [0, delta] with
/// n_t + 1 nodes. Quadratic form of the tubular-coordinate Robin problem
/// discretized by midpoint-weighted difference quotients; diagonal mass.
struct LayerOperator {
    linalg::SparseSym stiffness;
    std::vector<double> mass;
    std::size_t n_s = 0;
    std::size_t n_t = 0;   // number of t intervals
    double delta = 0.0;
    double alpha = 0.0;
    EndCondition end = EndCondition::Neumann;

    std::size_t rows_t() const {
        return end == EndCondition::Dirichlet ? n_t : n_t + 1;
    }
    std::size_t index(std::size_t i, std::size_t j) const {
        return i * rows_t() + j;
    }
};

LayerOperator assemble_layer(const LayerConfig& config, EndCondition end);

struct BracketResult {
    std::vector<double> lower;   // E_j(B^N)
    std::vector<double> upper;   // E_j(B^D)
    std::vector<bool> converged;
    double alpha = 0.0;
    double delta = 0.0;
    bool truncated = false;  // entries with upper_j >= 0 were dropped
};

BracketResult bracket_eigenvalues(const LayerConfig& config, std::size_t k);

struct EigEstimate {
    double estimate = 0.0;
    double halfwidth = 0.0;
};

std::vector<EigEstimate> robin_eig_estimate(const LayerConfig& config,
                                            std::size_t k);

/// k lowest eigenvalues of one assembled layer operator.
linalg::SpectrumResult layer_eigs(const LayerOperator& op, std::size_t k,
                                  double tol = 0.0, std::size_t max_iter = 0);

}  // namespace robinlayer::layer

#endif
