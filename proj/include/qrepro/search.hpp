#pragma once

#include <cstdint>
#include <vector>

#include "qrepro/strategy.hpp"
#include "qrepro/tensor.hpp"

namespace qrepro {

/// max_{a != b} |<Phi_a|Phi_b>|
double residual(const PureState& state, const StrategyAssignment& assignment,
                Exec exec = Exec::parallel);

struct SearchConfig {
    int restarts = 32;
    int max_iters = 4000;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    double initial_step = 0.5;
    double shrink = 0.5;
    double min_step = 1e-12;
    /// Fix u1 = I per player and search only u2 (3N angles instead of 6N).
    bool gauge_fixed = true;
    Exec exec = Exec::parallel;
};

struct SearchResult {
    StrategyAssignment best_assignment;
    double best_residual = 1.0;
    bool converged = false;
    int best_restart = 0;
    std::vector<double> restart_residuals;
};

/// Multi-start coordinate descent over SU(2) angles. Each restart draws its start
/// from a private stream derived from (seed, restart); the winner is the smallest
/// (residual, restart) pair, so the result does not depend on scheduling.
SearchResult search_operators(const PureState& state, const SearchConfig& config);

} // namespace qrepro
