#include "qrepro/classical.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qrepro/errors.hpp"

namespace qrepro {

using nlohmann::json;

ClassicalGame::ClassicalGame(int n_players, std::vector<int> strategy_counts,
                             std::vector<std::vector<double>> payoffs)
    : n_players_(n_players), counts_(std::move(strategy_counts)), payoffs_(std::move(payoffs)) {
    if (n_players_ < 1)
        throw ValidationError("game needs at least one player");
    if (counts_.size() != static_cast<std::size_t>(n_players_))
        throw DimensionError("strategy_counts has " + std::to_string(counts_.size()) +
                             " entries for " + std::to_string(n_players_) + " players");
    std::size_t joints = 1;
    for (int m : counts_) {
        if (m < 2)
            throw ValidationError("every player needs at least two strategies");
        joints *= static_cast<std::size_t>(m);
    }
    if (payoffs_.size() != joints)
        throw DimensionError("payoff table has " + std::to_string(payoffs_.size()) +
                             " rows, expected " + std::to_string(joints));
    for (const auto& row : payoffs_) {
        if (row.size() != static_cast<std::size_t>(n_players_))
            throw DimensionError("every payoff row needs one value per player");
        for (double v : row)
            if (!std::isfinite(v))
                throw ValidationError("payoff table has non-finite values");
    }
}

ClassicalGame ClassicalGame::two_strategy(int n_players, std::vector<std::vector<double>> payoffs) {
    return ClassicalGame(n_players, std::vector<int>(static_cast<std::size_t>(std::max(n_players, 0)), 2),
                         std::move(payoffs));
}

bool ClassicalGame::is_two_strategy() const {
    return std::all_of(counts_.begin(), counts_.end(), [](int m) { return m == 2; });
}

MixedProfile MixedProfile::from_first_strategy(const std::vector<double>& p) {
    MixedProfile out;
    for (double x : p)
        out.probabilities.push_back({x, 1.0 - x});
    return out;
}

MixedProfile MixedProfile::pure(const std::vector<int>& choices, const std::vector<int>& strategy_counts) {
    if (choices.size() != strategy_counts.size())
        throw DimensionError("one choice per player required");
    MixedProfile out;
    for (std::size_t i = 0; i < choices.size(); ++i) {
        std::vector<double> q(static_cast<std::size_t>(strategy_counts[i]), 0.0);
        q.at(static_cast<std::size_t>(choices[i] - 1)) = 1.0;
        out.probabilities.push_back(std::move(q));
    }
    return out;
}

std::size_t joint_index(const std::vector<int>& choices, const std::vector<int>& strategy_counts) {
    if (choices.size() != strategy_counts.size())
        throw DimensionError("joint_index: " + std::to_string(choices.size()) + " choices for " +
                             std::to_string(strategy_counts.size()) + " players");
    std::size_t k = 0, radix = 1;
    for (std::size_t i = 0; i < choices.size(); ++i) {
        if (choices[i] < 1 || choices[i] > strategy_counts[i])
            throw ValidationError("choice " + std::to_string(choices[i]) + " of player " +
                                  std::to_string(i + 1) + " is outside 1.." +
                                  std::to_string(strategy_counts[i]));
        k += static_cast<std::size_t>(choices[i] - 1) * radix;
        radix *= static_cast<std::size_t>(strategy_counts[i]);
    }
    return k;
}

std::vector<int> choices_from_joint(std::size_t k, const std::vector<int>& strategy_counts) {
    std::vector<int> l(strategy_counts.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        const auto m = static_cast<std::size_t>(strategy_counts[i]);
        l[i] = static_cast<int>(k % m) + 1;
        k /= m;
    }
    if (k != 0)
        throw ValidationError("joint index out of range");
    return l;
}

std::vector<double> pure_payoff(const ClassicalGame& game, const std::vector<int>& choices) {
    return game.payoff(joint_index(choices, game.strategy_counts()));
}

std::vector<double> mixed_payoff(const ClassicalGame& game, const MixedProfile& profile) {
    const auto& counts = game.strategy_counts();
    if (profile.probabilities.size() != counts.size())
        throw DimensionError("mixed profile has " + std::to_string(profile.probabilities.size()) +
                             " players, game has " + std::to_string(counts.size()));
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const auto& q = profile.probabilities[i];
        if (q.size() != static_cast<std::size_t>(counts[i]))
            throw DimensionError("player " + std::to_string(i + 1) + " profile length mismatch");
        double s = 0.0;
        for (double x : q) {
            if (!(x >= 0.0))
                throw ValidationError("negative probability for player " + std::to_string(i + 1));
            s += x;
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw ValidationError("probabilities of player " + std::to_string(i + 1) +
                                  " do not sum to 1");
    }

    std::vector<double> f(static_cast<std::size_t>(game.n_players()), 0.0);
    for (std::size_t k = 0; k < game.n_joint(); ++k) {
        const auto l = choices_from_joint(k, counts);
        double w = 1.0;
        for (std::size_t j = 0; j < l.size(); ++j)
            w *= profile.probabilities[j][static_cast<std::size_t>(l[j] - 1)];
        if (w == 0.0)
            continue;
        const auto& row = game.payoff(k);
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] += w * row[i];
    }
    return f;
}

std::string game_to_json(const ClassicalGame& game) {
    json j{{"n_players", game.n_players()},
           {"strategy_counts", game.strategy_counts()},
           {"payoffs", game.payoffs()}};
    return j.dump(2) + "\n";
}

ClassicalGame game_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
        return ClassicalGame(j.at("n_players").get<int>(), j.at("strategy_counts").get<std::vector<int>>(),
                             j.at("payoffs").get<std::vector<std::vector<double>>>());
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed game file: ") + e.what());
    }
}

ClassicalGame load_game(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return game_from_json(ss.str());
}

void save_game(const ClassicalGame& game, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << game_to_json(game);
}

} // namespace qrepro
