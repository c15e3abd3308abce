#include "qrepro/states.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrepro/errors.hpp"

namespace qrepro {

using nlohmann::json;

StateFamily parse_state_family(std::string_view name) {
    if (name == "bell") return StateFamily::bell;
    if (name == "ghz") return StateFamily::ghz;
    if (name == "ghz_like_i") return StateFamily::ghz_like_i;
    if (name == "w") return StateFamily::w;
    if (name == "dicke") return StateFamily::dicke;
    if (name == "product_zero") return StateFamily::product_zero;
    throw ValidationError("unknown state kind '" + std::string(name) + "'");
}

std::string to_string(StateFamily family) {
    switch (family) {
    case StateFamily::bell: return "bell";
    case StateFamily::ghz: return "ghz";
    case StateFamily::ghz_like_i: return "ghz_like_i";
    case StateFamily::w: return "w";
    case StateFamily::dicke: return "dicke";
    case StateFamily::product_zero: return "product_zero";
    case StateFamily::custom: return "custom";
    }
    return "custom";
}

namespace {

PureState dicke_state(int n, int m) {
    std::vector<Complex> a(std::size_t{1} << n);
    std::size_t count = 0;
    for (std::size_t b = 0; b < a.size(); ++b)
        if (std::popcount(b) == m) {
            a[b] = 1.0;
            ++count;
        }
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (auto& x : a)
        x *= amp;
    return PureState(n, std::move(a));
}

PureState cat_state(int n, Complex phase) {
    std::vector<Complex> a(std::size_t{1} << n);
    a.front() = 1.0 / std::sqrt(2.0);
    a.back() = phase / std::sqrt(2.0);
    return PureState(n, std::move(a));
}

void require(bool cond, const std::string& msg) {
    if (!cond)
        throw ValidationError(msg);
}

} // namespace

PureState make_state(const StateKind& kind, int n) {
    require(n >= 1 && n <= kMaxQubits, "qubit count must be in [1, 16], got " + std::to_string(n));
    switch (kind.family) {
    case StateFamily::bell:
        require(n == 2, "bell state needs n = 2");
        return cat_state(2, 1.0);
    case StateFamily::ghz:
        require(n >= 2, "ghz state needs n >= 2");
        return cat_state(n, 1.0);
    case StateFamily::ghz_like_i:
        require(n >= 2, "ghz_like_i state needs n >= 2");
        return cat_state(n, Complex(0.0, 1.0));
    case StateFamily::w:
        require(n >= 3, "w state needs n >= 3");
        return dicke_state(n, 1);
    case StateFamily::dicke:
        require(kind.m >= 0 && kind.m <= n,
                "dicke state needs 0 <= m <= n, got m = " + std::to_string(kind.m));
        return dicke_state(n, kind.m);
    case StateFamily::product_zero:
        return PureState::zero(n);
    case StateFamily::custom:
        break;
    }
    throw ValidationError("custom states are loaded from files, not generated");
}

StrategyAssignment bell_operators() {
    const StrategyPair flip_x{LocalUnitary(), project_to_su2(pauli::x())};
    const StrategyPair flip_y{LocalUnitary(), LocalUnitary(Complex(0, 1) * pauli::y())};
    return StrategyAssignment({flip_x, flip_y});
}

StrategyAssignment dicke22_operators() {
    const Complex i(0.0, 1.0);
    const Matrix2 tilted = (i / std::sqrt(3.0)) * (std::sqrt(2.0) * pauli::z() + pauli::x());
    const StrategyPair tilted_pair{LocalUnitary(), LocalUnitary(tilted)};
    const StrategyPair flip_pair{LocalUnitary(), LocalUnitary(i * pauli::y())};
    return StrategyAssignment({tilted_pair, tilted_pair, tilted_pair, flip_pair});
}

StrategyAssignment flip_operators(int n_players) {
    return StrategyAssignment::uniform(
        {LocalUnitary(), LocalUnitary(Complex(0, 1) * pauli::y())}, n_players);
}

namespace {

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw IoError("complex number must be a [re, im] array");
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix2& m) {
    return json::array({json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1))}),
                        json::array({complex_to_json(m(1, 0)), complex_to_json(m(1, 1))})});
}

Matrix2 matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw IoError("operator must be a 2x2 array of [re, im] entries");
    return {complex_from_json(j[0][0]), complex_from_json(j[0][1]), complex_from_json(j[1][0]),
            complex_from_json(j[1][1])};
}

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
    if (!out)
        throw IoError("write failed for " + path.string());
}

} // namespace

std::string state_to_json(const PureState& state) {
    json amps = json::array();
    for (const auto& a : state.amplitudes())
        amps.push_back(complex_to_json(a));
    json j{{"n_qubits", state.n_qubits()}, {"amplitudes", std::move(amps)}};
    return j.dump(2) + "\n";
}

PureState state_from_json(std::string_view text, double tol) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("amplitudes") || !j["amplitudes"].is_array())
        throw IoError("state file needs an \"amplitudes\" array");
    std::vector<Complex> amps;
    for (const auto& a : j["amplitudes"])
        amps.push_back(complex_from_json(a));
    if (amps.empty() || !std::has_single_bit(amps.size()))
        throw DimensionError("amplitude count " + std::to_string(amps.size()) +
                             " is not a power of two");
    const int n = std::countr_zero(amps.size());
    if (j.contains("n_qubits")) {
        if (!j["n_qubits"].is_number_integer() || j["n_qubits"].get<int>() != n)
            throw DimensionError("n_qubits does not match the " + std::to_string(amps.size()) +
                                 " amplitudes in the file");
    }
    return PureState(n, std::move(amps), tol);
}

PureState load_state(const std::filesystem::path& path, double tol) {
    return state_from_json(read_file(path), tol);
}

void save_state(const PureState& state, const std::filesystem::path& path) {
    write_file(path, state_to_json(state));
}

std::string ops_to_json(const StrategyAssignment& ops) {
    json pairs = json::array();
    for (const auto& p : ops.pairs())
        pairs.push_back({{"u1", matrix_to_json(p.first.matrix())}, {"u2", matrix_to_json(p.second.matrix())}});
    json j{{"players", ops.n_players()}, {"pairs", std::move(pairs)}};
    return j.dump(2) + "\n";
}

StrategyAssignment ops_from_json(std::string_view text, double tol) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array())
        throw IoError("operators file needs a \"pairs\" array");
    const auto& arr = j["pairs"];
    if (j.contains("players") && (!j["players"].is_number_integer() ||
                                  j["players"].get<std::size_t>() != arr.size()))
        throw DimensionError("\"players\" does not match the number of pairs");
    std::vector<StrategyPair> pairs;
    for (std::size_t p = 0; p < arr.size(); ++p) {
        const auto& entry = arr[p];
        if (!entry.is_object() || !entry.contains("u1") || !entry.contains("u2"))
            throw IoError("pair for player " + std::to_string(p + 1) + " needs \"u1\" and \"u2\"");
        auto convert = [&](const char* key) {
            const Matrix2 m = matrix_from_json(entry[key]);
            if (!is_unitary(m, tol))
                throw ValidationError("operator " + std::string(key) + " of player " +
                                      std::to_string(p + 1) + " is not unitary");
            return project_to_su2(m, tol);
        };
        pairs.push_back({convert("u1"), convert("u2")});
    }
    if (pairs.empty())
        throw ValidationError("operators file has no players");
    return StrategyAssignment(std::move(pairs));
}

StrategyAssignment load_ops(const std::filesystem::path& path, double tol) {
    return ops_from_json(read_file(path), tol);
}

void save_ops(const StrategyAssignment& ops, const std::filesystem::path& path) {
    write_file(path, ops_to_json(ops));
}

} // namespace qrepro
