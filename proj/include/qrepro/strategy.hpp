#pragma once

#include <cstddef>
#include <vector>

#include "qrepro/tensor.hpp"

namespace qrepro {

/// The two operators a player may apply: `first` plays classical strategy 1,
/// `second` plays strategy 2.
struct StrategyPair {
    LocalUnitary first;
    LocalUnitary second;

    const LocalUnitary& operator[](int choice) const { return choice == 0 ? first : second; }
    friend bool operator==(const StrategyPair&, const StrategyPair&) = default;
};

class StrategyAssignment {
public:
    StrategyAssignment() = default;
    explicit StrategyAssignment(std::vector<StrategyPair> pairs) : pairs_(std::move(pairs)) {}

    /// Same pair for all n players.
    static StrategyAssignment uniform(const StrategyPair& pair, int n_players);

    int n_players() const { return static_cast<int>(pairs_.size()); }
    const StrategyPair& operator[](std::size_t player) const { return pairs_[player]; }
    StrategyPair& operator[](std::size_t player) { return pairs_[player]; }
    const std::vector<StrategyPair>& pairs() const { return pairs_; }

    /// Operators x_k for the pure joint strategy with index k.
    std::vector<LocalUnitary> select(std::size_t strategy_index) const;

    friend bool operator==(const StrategyAssignment&, const StrategyAssignment&) = default;

private:
    std::vector<StrategyPair> pairs_;
};

// Strategy index vs. amplitude index.
//
// The joint strategy index is k = sum_i (l_i - 1) 2^(i-1): player 1 is the LEAST
// significant bit. Amplitude indices put player 1 in the MOST significant bit
// (see amplitude_bit). The helpers below are the only place the strategy
// index is decoded; they never touch amplitude indices.

/// 0-based choice (0 = strategy 1, 1 = strategy 2) of `player` in joint index k.
constexpr int choice_of(std::size_t strategy_index, int player) {
    return static_cast<int>((strategy_index >> player) & 1u);
}

/// Per-player 1-based selection l_i for joint index k.
std::vector<int> selection_from_index(std::size_t strategy_index, int n_players);

/// k from 1-based l_i in {1,2}; throws ValidationError on out-of-range entries.
std::size_t strategy_index(const std::vector<int>& selection);

} // namespace qrepro
