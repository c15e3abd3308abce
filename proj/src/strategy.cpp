#include "qrepro/strategy.hpp"

#include "qrepro/errors.hpp"

namespace qrepro {

StrategyAssignment StrategyAssignment::uniform(const StrategyPair& pair, int n_players) {
    return StrategyAssignment(std::vector<StrategyPair>(static_cast<std::size_t>(n_players), pair));
}

std::vector<LocalUnitary> StrategyAssignment::select(std::size_t strategy_index) const {
    std::vector<LocalUnitary> ops;
    ops.reserve(pairs_.size());
    for (int p = 0; p < n_players(); ++p)
        ops.push_back(pairs_[p][choice_of(strategy_index, p)]);
    return ops;
}

std::vector<int> selection_from_index(std::size_t strategy_index, int n_players) {
    std::vector<int> l(static_cast<std::size_t>(n_players));
    for (int p = 0; p < n_players; ++p)
        l[p] = choice_of(strategy_index, p) + 1;
    return l;
}

std::size_t strategy_index(const std::vector<int>& selection) {
    std::size_t k = 0;
    for (std::size_t p = 0; p < selection.size(); ++p) {
        if (selection[p] != 1 && selection[p] != 2)
            throw ValidationError("strategy choice for player " + std::to_string(p + 1) +
                                  " must be 1 or 2, got " + std::to_string(selection[p]));
        k |= static_cast<std::size_t>(selection[p] - 1) << p;
    }
    return k;
}

} // namespace qrepro
