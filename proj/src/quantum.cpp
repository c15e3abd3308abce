#include "qrepro/quantum.hpp"

#include <cmath>
#include <cstdint>
#include <random>

#include "qrepro/analysis.hpp"
#include "qrepro/errors.hpp"
#include "qrepro/kernels.hpp"

namespace qrepro {

namespace {

void require_players(const PureState& state, const StrategyAssignment& assignment) {
    if (assignment.n_players() != state.n_qubits())
        throw DimensionError("assignment has " + std::to_string(assignment.n_players()) +
                             " players, state has " + std::to_string(state.n_qubits()) + " qubits");
}

} // namespace

PureState output_state(const PureState& state, const StrategyAssignment& assignment,
                       const std::vector<int>& selection) {
    require_players(state, assignment);
    if (selection.size() != static_cast<std::size_t>(state.n_qubits()))
        throw DimensionError("selection needs one entry per player");
    const auto ops = assignment.select(strategy_index(selection));
    return apply_local(ops, state, Exec::serial);
}

std::vector<PureState> output_states(const PureState& state, const StrategyAssignment& assignment,
                                     Exec exec) {
    require_players(state, assignment);
    const int n = state.n_qubits();
    const auto count = static_cast<std::int64_t>(std::size_t{1} << n);
    std::vector<std::vector<Complex>> raw(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (exec == Exec::parallel && count >= 8)
    for (std::int64_t k = 0; k < count; ++k) {
        std::vector<Matrix2> mats;
        mats.reserve(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
            mats.push_back(assignment[p][choice_of(static_cast<std::size_t>(k), p)].matrix());
        auto& amps = raw[static_cast<std::size_t>(k)];
        amps.assign(state.amplitudes().begin(), state.amplitudes().end());
        kernels::serial::apply_local(amps, n, mats);
    }
    std::vector<PureState> out;
    out.reserve(raw.size());
    for (auto& amps : raw)
        out.emplace_back(n, std::move(amps));
    return out;
}

std::vector<PureState> build_projectors(const PureState& state, const StrategyAssignment& assignment,
                                        double tol) {
    const GramMatrix g = gram_matrix(state, assignment);
    if (!(g.max_offdiag() < tol))
        throw DistinguishabilityError(g.max_offdiag(), g.worst_pair());
    return output_states(state, assignment);
}

QuantumGameModel::QuantumGameModel(PureState state, StrategyAssignment assignment, ClassicalGame game,
                                   double tol)
    : state_(std::move(state)), assignment_(std::move(assignment)), game_(std::move(game)) {
    require_players(state_, assignment_);
    if (!game_.is_two_strategy())
        throw ValidationError("the quantum protocol needs a two-strategy game");
    if (game_.n_players() != state_.n_qubits())
        throw DimensionError("game has " + std::to_string(game_.n_players()) + " players, state has " +
                             std::to_string(state_.n_qubits()) + " qubits");
    projectors_ = build_projectors(state_, assignment_, tol);
}

std::vector<double> outcome_probabilities(const QuantumGameModel& model,
                                          const std::vector<LocalUnitary>& ops) {
    if (static_cast<int>(ops.size()) != model.n_players())
        throw DimensionError("expected " + std::to_string(model.n_players()) + " operators, got " +
                             std::to_string(ops.size()));
    const PureState out = apply_local(ops, model.state());
    std::vector<double> p;
    p.reserve(model.projectors().size());
    for (const auto& phi : model.projectors())
        p.push_back(std::norm(inner(phi, out)));
    return p;
}

std::vector<double> expected_payoff(const QuantumGameModel& model, const std::vector<LocalUnitary>& ops) {
    const auto p = outcome_probabilities(model, ops);
    std::vector<double> f(static_cast<std::size_t>(model.n_players()), 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
        const auto& row = model.game().payoff(j);
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] += row[i] * p[j];
    }
    return f;
}

LocalUnitary mixed_strategy_operator(const StrategyPair& pair, double theta, double tol) {
    return mixed_strategy_operator(pair.first.matrix(), pair.second.matrix(), theta, tol);
}

LocalUnitary mixed_strategy_operator(const Matrix2& u1, const Matrix2& u2, double theta, double tol) {
    const Matrix2 w = std::cos(theta) * u1 + std::sin(theta) * u2;
    const double uerr = unitarity_error(w);
    if (uerr > tol)
        throw ValidationError("mixed strategy operator is not unitary (error " + std::to_string(uerr) +
                              "): the pair violates the spectral condition, u1^dag u2 must have "
                              "eigenvalues {i, -i}");
    // SU(2) inputs give det w = 1; raw unitaries are brought into SU(2).
    if (std::abs(w.det() - 1.0) <= tol)
        return LocalUnitary(w, tol);
    return project_to_su2(w, tol);
}

std::vector<LocalUnitary> mixed_strategy_operators(const StrategyAssignment& assignment,
                                                   const std::vector<double>& thetas, double tol) {
    if (thetas.size() != static_cast<std::size_t>(assignment.n_players()))
        throw DimensionError("need one angle per player");
    std::vector<LocalUnitary> ops;
    ops.reserve(thetas.size());
    for (std::size_t p = 0; p < thetas.size(); ++p)
        ops.push_back(mixed_strategy_operator(assignment[p], thetas[p], tol));
    return ops;
}

std::vector<std::uint64_t> sample_round(const QuantumGameModel& model, const std::vector<LocalUnitary>& ops,
                                        std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0)
        throw ValidationError("shots must be positive");
    const auto p = outcome_probabilities(model, ops);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
    std::vector<std::uint64_t> counts(p.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s)
        ++counts[dist(rng)];
    return counts;
}

} // namespace qrepro
