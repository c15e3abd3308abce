#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qrepro/errors.hpp"
#include "qrepro/quantum.hpp"
#include "qrepro/states.hpp"

using namespace qrepro;

namespace {

const double kPi = std::numbers::pi;
const Complex I1(0, 1);

ClassicalGame prisoners_dilemma() { return load_game(std::filesystem::path(QREPRO_TEST_DATA) / "pd.json"); }

ClassicalGame random_two_strategy_game(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 10);
    std::vector<std::vector<double>> pay(std::size_t{1} << n, std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& row : pay)
        for (auto& x : row)
            x = u(rng);
    return ClassicalGame::two_strategy(n, pay);
}

struct Fixture {
    const char* name;
    PureState state;
    StrategyAssignment ops;
};

std::vector<Fixture> passing_fixtures() {
    return {{"bell", make_state(StateKind::bell(), 2), bell_operators()},
            {"dicke21", make_state(StateKind::dicke(1), 2), bell_operators()},
            {"ghz3", make_state(StateKind::ghz(), 3), flip_operators(3)},
            {"ghz_like_i4", make_state(StateKind::ghz_like_i(), 4), flip_operators(4)},
            {"dicke42", make_state(StateKind::dicke(2), 4), dicke22_operators()}};
}

} // namespace

TEST(output_state, identity_selection_returns_input) {
    const auto s = make_state(StateKind::w(), 3);
    EXPECT_EQ(output_state(s, flip_operators(3), {1, 1, 1}), s);
}

TEST(output_state, ghz3_all_flipped) {
    const auto out = output_state(make_state(StateKind::ghz(), 3), flip_operators(3), {2, 2, 2});
    const double r2 = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(out[0] - r2) + std::abs(out[7] + r2), 0.0, 1e-15);
}

TEST(output_state, w3_first_player_flipped) {
    const auto out = output_state(make_state(StateKind::w(), 3), flip_operators(3), {2, 1, 1});
    const double r3 = 1.0 / std::sqrt(3.0);
    const std::vector<Complex> want{r3, 0, 0, 0, 0, -r3, -r3, 0};
    for (std::size_t b = 0; b < 8; ++b)
        EXPECT_NEAR(std::abs(out[b] - want[b]), 0.0, 1e-15);
}

TEST(output_state, strategy_index_is_little_endian_in_players) {
    // Strategy index 1 = player 1 plays strategy 2; on |00> with sigma_x-type flips this
    // must flip the MOST significant amplitude bit.
    const auto out = output_states(PureState::zero(2), bell_operators());
    EXPECT_NEAR(std::abs(out[1][2]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(out[2][1]), 1.0, 1e-15);
    EXPECT_EQ(selection_from_index(1, 2), (std::vector<int>{2, 1}));
    EXPECT_EQ(strategy_index({1, 2}), 2u);
    EXPECT_THROW(strategy_index({3, 1}), ValidationError);
}

TEST(build_projectors, bell_gives_orthonormal_basis) {
    const auto phis = build_projectors(make_state(StateKind::bell(), 2), bell_operators());
    ASSERT_EQ(phis.size(), 4u);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            EXPECT_NEAR(std::abs(inner(phis[a], phis[b]) - (a == b ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(build_projectors, w3_fails_with_two_thirds) {
    try {
        build_projectors(make_state(StateKind::w(), 3), flip_operators(3));
        FAIL() << "expected DistinguishabilityError";
    } catch (const DistinguishabilityError& e) {
        EXPECT_NEAR(e.max_offdiag(), 2.0 / 3.0, 1e-12);
    }
}

TEST(build_projectors, ghz3_orthonormal_against_dense_oracle) {
    const auto s = make_state(StateKind::ghz(), 3);
    const auto phis = build_projectors(s, flip_operators(3));
    ASSERT_EQ(phis.size(), 8u);
    const auto g = oracle::dense_gram(s, flip_operators(3));
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) {
            EXPECT_NEAR(std::abs(g[a][b] - (a == b ? 1.0 : 0.0)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(inner(phis[a], phis[b]) - g[a][b]), 0.0, 1e-12);
        }
}

TEST(expected_payoff, pure_selections_reproduce_table_exhaustively) {
    std::mt19937_64 rng(41);
    for (const auto& f : passing_fixtures()) {
        const int n = f.state.n_qubits();
        const auto game = random_two_strategy_game(n, rng);
        const QuantumGameModel model(f.state, f.ops, game);
        for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
            const auto pay = expected_payoff(model, f.ops.select(k));
            for (int i = 0; i < n; ++i)
                EXPECT_NEAR(pay[i], game.payoff(k)[i], 1e-10) << f.name << " k=" << k;
        }
    }
}

TEST(expected_payoff, prisoners_dilemma_cooperate) {
    const QuantumGameModel model(make_state(StateKind::bell(), 2), bell_operators(), prisoners_dilemma());
    const auto pay = expected_payoff(model, {model.assignment()[0].first, model.assignment()[1].first});
    EXPECT_NEAR(pay[0], 3.0, 1e-12);
    EXPECT_NEAR(pay[1], 3.0, 1e-12);
}

TEST(expected_payoff, probabilities_sum_to_one_and_ignore_sign) {
    std::mt19937_64 rng(42);
    for (const auto& f : passing_fixtures()) {
        const int n = f.state.n_qubits();
        const QuantumGameModel model(f.state, f.ops, random_two_strategy_game(n, rng));
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<LocalUnitary> ops;
            for (int p = 0; p < n; ++p)
                ops.push_back(oracle::random_su2(rng));
            const auto probs = outcome_probabilities(model, ops);
            double s = 0;
            for (double x : probs)
                s += x;
            EXPECT_NEAR(s, 1.0, 1e-12);
            auto flipped = ops;
            const int who = trial % n;
            flipped[who] = LocalUnitary(Complex(-1.0) * ops[who].matrix());
            const auto a = expected_payoff(model, ops), b = expected_payoff(model, flipped);
            for (int i = 0; i < n; ++i)
                EXPECT_NEAR(a[i], b[i], 1e-12);
        }
    }
}

TEST(quantum_game_model, rejects_mismatched_inputs) {
    const auto pd = prisoners_dilemma();
    EXPECT_THROW(QuantumGameModel(make_state(StateKind::ghz(), 3), flip_operators(3), pd), DimensionError);
    EXPECT_THROW(QuantumGameModel(make_state(StateKind::bell(), 2), flip_operators(3), pd), DimensionError);
    EXPECT_THROW(QuantumGameModel(make_state(StateKind::w(), 3), flip_operators(3),
                                  ClassicalGame::two_strategy(3, std::vector<std::vector<double>>(8, {0, 0, 0}))),
                 DistinguishabilityError);
    const QuantumGameModel model(make_state(StateKind::bell(), 2), bell_operators(), pd);
    EXPECT_THROW(expected_payoff(model, {LocalUnitary()}), DimensionError);
}

TEST(mixed_strategy_operator, endpoints) {
    const StrategyPair pair = dicke22_operators()[0];
    EXPECT_LE(mixed_strategy_operator(pair, 0.0).matrix().max_abs_diff(pair.first.matrix()), 1e-15);
    EXPECT_LE(mixed_strategy_operator(pair, kPi / 2).matrix().max_abs_diff(pair.second.matrix()), 1e-15);
}

TEST(mixed_strategy_operator, quarter_turn_of_flip_pair) {
    const StrategyPair pair = flip_operators(1)[0];
    const auto w = mixed_strategy_operator(pair, kPi / 4).matrix();
    const double r2 = 1.0 / std::sqrt(2.0);
    EXPECT_LE(w.max_abs_diff(Matrix2(r2, r2, -r2, r2)), 1e-15);
    EXPECT_LE(unitarity_error(w), 1e-15);
}

TEST(mixed_strategy_operator, sigma_x_pair_is_rejected) {
    EXPECT_THROW(mixed_strategy_operator(Matrix2::identity(), pauli::x(), kPi / 4), ValidationError);
    // SU(2) pair whose product has eigenvalues e^{+-i pi/4}, not +-i.
    const StrategyPair bad{LocalUnitary(), su2_from_angles(kPi / 4, 0, 0)};
    EXPECT_THROW(mixed_strategy_operator(bad, kPi / 4), ValidationError);
}

TEST(sample_round, pure_selection_is_degenerate) {
    const QuantumGameModel model(make_state(StateKind::ghz(), 3), flip_operators(3),
                                 ClassicalGame::two_strategy(3, std::vector<std::vector<double>>(8, {0, 0, 0})));
    for (std::size_t k = 0; k < 8; ++k) {
        const auto counts = sample_round(model, model.assignment().select(k), 1000, 7);
        for (std::size_t j = 0; j < 8; ++j)
            EXPECT_EQ(counts[j], j == k ? 1000u : 0u);
    }
}

TEST(sample_round, deterministic_and_validated) {
    const QuantumGameModel model(make_state(StateKind::bell(), 2), bell_operators(), prisoners_dilemma());
    const auto ops = mixed_strategy_operators(model.assignment(), {0.3, 1.1});
    EXPECT_EQ(sample_round(model, ops, 5000, 99), sample_round(model, ops, 5000, 99));
    EXPECT_THROW(sample_round(model, ops, 0, 1), ValidationError);
}

TEST(sample_round, frequencies_within_five_sigma) {
    const QuantumGameModel model(make_state(StateKind::dicke(2), 4), dicke22_operators(),
                                 ClassicalGame::two_strategy(4, std::vector<std::vector<double>>(16, {0, 0, 0, 0})));
    const auto ops = mixed_strategy_operators(model.assignment(), {kPi / 4, kPi / 4, kPi / 4, kPi / 4});
    const std::uint64_t shots = 100000;
    const auto counts = sample_round(model, ops, shots, 2024);
    const auto p = outcome_probabilities(model, ops);
    for (std::size_t j = 0; j < p.size(); ++j) {
        EXPECT_NEAR(p[j], 1.0 / 16.0, 1e-12);
        const double sigma = std::sqrt(shots * p[j] * (1 - p[j]));
        EXPECT_LE(std::abs(static_cast<double>(counts[j]) - shots * p[j]), 5 * sigma) << j;
    }
}
