#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qrepro {

/// Strategic game with per-player strategy counts m_i >= 2 and a flat payoff table
/// indexed by the joint strategy index (player 1 least significant).
class ClassicalGame {
public:
    /// Throws ValidationError unless payoffs has prod(m_i) rows of n_players finite values.
    ClassicalGame(int n_players, std::vector<int> strategy_counts,
                  std::vector<std::vector<double>> payoffs);

    /// N-player game with two strategies each.
    static ClassicalGame two_strategy(int n_players, std::vector<std::vector<double>> payoffs);

    int n_players() const { return n_players_; }
    const std::vector<int>& strategy_counts() const { return counts_; }
    std::size_t n_joint() const { return payoffs_.size(); }
    const std::vector<double>& payoff(std::size_t joint) const { return payoffs_.at(joint); }
    const std::vector<std::vector<double>>& payoffs() const { return payoffs_; }
    bool is_two_strategy() const;

private:
    int n_players_;
    std::vector<int> counts_;
    std::vector<std::vector<double>> payoffs_;
};

/// Per-player probability vectors over strategies.
struct MixedProfile {
    std::vector<std::vector<double>> probabilities;

    /// Two-strategy profile with P(strategy 1) = p[i] for player i.
    static MixedProfile from_first_strategy(const std::vector<double>& p);
    /// All mass on the given 1-based choices.
    static MixedProfile pure(const std::vector<int>& choices, const std::vector<int>& strategy_counts);
};

/// k = sum_i (l_i - 1) prod_{j<i} m_j with 1-based l_i.
std::size_t joint_index(const std::vector<int>& choices, const std::vector<int>& strategy_counts);

/// Inverse of joint_index (1-based choices).
std::vector<int> choices_from_joint(std::size_t k, const std::vector<int>& strategy_counts);

std::vector<double> pure_payoff(const ClassicalGame& game, const std::vector<int>& choices);

/// F_i = sum over joints of (prod_j q_j) * payoff_i.
std::vector<double> mixed_payoff(const ClassicalGame& game, const MixedProfile& profile);

// {"n_players": N, "strategy_counts": [m...], "payoffs": [[p_1..p_N] x prod m]}
ClassicalGame load_game(const std::filesystem::path& path);
void save_game(const ClassicalGame& game, const std::filesystem::path& path);
std::string game_to_json(const ClassicalGame& game);
ClassicalGame game_from_json(std::string_view text);

} // namespace qrepro
