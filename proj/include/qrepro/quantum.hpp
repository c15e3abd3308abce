#pragma once

// The quantised N-player two-strategy protocol: a referee prepares |Psi>, each
// player applies one local SU(2) operator, and the referee measures in the basis
// of the 2^N pure-strategy output states Phi_k, paying out row k of the table.

#include <cstdint>
#include <vector>

#include "qrepro/classical.hpp"
#include "qrepro/strategy.hpp"
#include "qrepro/tensor.hpp"

namespace qrepro {

/// Phi_k = (u_1^{l_1} (x) ... (x) u_N^{l_N}) |Psi> for a 1-based selection l.
PureState output_state(const PureState& state, const StrategyAssignment& assignment,
                       const std::vector<int>& selection);

/// All 2^N output states, indexed by strategy index k.
std::vector<PureState> output_states(const PureState& state, const StrategyAssignment& assignment,
                                     Exec exec = Exec::parallel);

/// Projector vectors Phi_k; throws DistinguishabilityError when some
/// |<Phi_a|Phi_b>| >= tol for a != b.
std::vector<PureState> build_projectors(const PureState& state,
                                        const StrategyAssignment& assignment,
                                        double tol = kDefaultTol);

class QuantumGameModel {
public:
    /// Builds the projectors; game must be two-strategy with n_players == state.n_qubits.
    QuantumGameModel(PureState state, StrategyAssignment assignment, ClassicalGame game,
                     double tol = kDefaultTol);

    const PureState& state() const { return state_; }
    const StrategyAssignment& assignment() const { return assignment_; }
    const std::vector<PureState>& projectors() const { return projectors_; }
    const ClassicalGame& game() const { return game_; }
    int n_players() const { return state_.n_qubits(); }

private:
    PureState state_;
    StrategyAssignment assignment_;
    ClassicalGame game_;
    std::vector<PureState> projectors_;
};

/// P(j) = |<Phi_j| (op_1 (x) ... (x) op_N) |Psi>|^2
std::vector<double> outcome_probabilities(const QuantumGameModel& model,
                                          const std::vector<LocalUnitary>& ops);

/// F_i = sum_j a_j^i P(j)
std::vector<double> expected_payoff(const QuantumGameModel& model,
                                    const std::vector<LocalUnitary>& ops);

/// w = cos(theta) u1 + sin(theta) u2. Throws ValidationError when w is not unitary,
/// which happens exactly when u1^dag u2 does not have eigenvalues {i, -i}.
LocalUnitary mixed_strategy_operator(const StrategyPair& pair, double theta,
                                     double tol = kDefaultTol);
/// Same, for raw unitaries that need not be in SU(2) (e.g. sigma_x).
LocalUnitary mixed_strategy_operator(const Matrix2& u1, const Matrix2& u2, double theta,
                                     double tol = kDefaultTol);

/// w_k(theta_k) for every player.
std::vector<LocalUnitary> mixed_strategy_operators(const StrategyAssignment& assignment,
                                                   const std::vector<double>& thetas,
                                                   double tol = kDefaultTol);

/// Multinomial sample of `shots` measurement outcomes; deterministic in seed.
std::vector<std::uint64_t> sample_round(const QuantumGameModel& model,
                                        const std::vector<LocalUnitary>& ops,
                                        std::uint64_t shots, std::uint64_t seed);

} // namespace qrepro
