#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qrepro/strategy.hpp"
#include "qrepro/tensor.hpp"

namespace qrepro {

enum class StateFamily { bell, ghz, ghz_like_i, w, dicke, product_zero, custom };

struct StateKind {
    StateFamily family = StateFamily::custom;
    int m = 0; ///< number of ones, dicke only

    static StateKind bell() { return {StateFamily::bell}; }
    static StateKind ghz() { return {StateFamily::ghz}; }
    static StateKind ghz_like_i() { return {StateFamily::ghz_like_i}; }
    static StateKind w() { return {StateFamily::w}; }
    static StateKind dicke(int ones) { return {StateFamily::dicke, ones}; }
    static StateKind product_zero() { return {StateFamily::product_zero}; }
};

/// "bell", "ghz", "ghz_like_i", "w", "dicke", "product_zero"; throws ValidationError.
StateFamily parse_state_family(std::string_view name);
std::string to_string(StateFamily family);

/// Canonical fixture states:
///   bell          (|00> + |11>)/sqrt2, n must be 2
///   ghz           (|0..0> + |1..1>)/sqrt2, n >= 2
///   ghz_like_i    (|0..0> + i|1..1>)/sqrt2, n >= 2
///   w             Dicke(n, 1), n >= 3
///   dicke(m)      equal superposition of the C(n,m) kets with m ones
///   product_zero  |0..0>
PureState make_state(const StateKind& kind, int n);

/// {I, sigma_x} for player 1 and {I, i sigma_y} for player 2, projected into SU(2).
StrategyAssignment bell_operators();

/// Operator set for the four-party Dicke state |2,2>:
/// u^1 = I for all players, u^2 = i(sqrt2 sigma_z + sigma_x)/sqrt3 for players 1-3
/// and u^2 = i sigma_y for player 4.
StrategyAssignment dicke22_operators();

/// {I, i sigma_y} for every player.
StrategyAssignment flip_operators(int n_players);

// JSON file I/O. Complex numbers are [re, im] pairs; matrices are row-major.
//   state:     {"n_qubits": N, "amplitudes": [[re,im] x 2^N]}
//   operators: {"players": N, "pairs": [{"u1": [[[re,im] x2] x2], "u2": ...} x N]}

PureState load_state(const std::filesystem::path& path, double tol = kDefaultTol);
void save_state(const PureState& state, const std::filesystem::path& path);
std::string state_to_json(const PureState& state);
PureState state_from_json(std::string_view text, double tol = kDefaultTol);

/// Every matrix is checked for unitarity, then projected into SU(2).
StrategyAssignment load_ops(const std::filesystem::path& path, double tol = kDefaultTol);
void save_ops(const StrategyAssignment& ops, const std::filesystem::path& path);
std::string ops_to_json(const StrategyAssignment& ops);
StrategyAssignment ops_from_json(std::string_view text, double tol = kDefaultTol);

} // namespace qrepro
