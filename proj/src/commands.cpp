#include "qrepro/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>
#include <openssl/evp.h>

#include "qrepro/analysis.hpp"
#include "qrepro/classical.hpp"
#include "qrepro/errors.hpp"
#include "qrepro/quantum.hpp"
#include "qrepro/search.hpp"
#include "qrepro/states.hpp"

namespace qrepro::cli {

using nlohmann::json;

double round_sig12(double x) {
    if (!std::isfinite(x) || x == 0.0)
        return x == 0.0 ? 0.0 : x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r; // no "-0"
}

double parse_angle(std::string_view text) {
    std::string s(text);
    auto fail = [&] { throw ValidationError("cannot parse angle '" + s + "'"); };
    if (s.empty())
        fail();
    double scale = 1.0;
    std::string body = s;
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
        scale = std::numbers::pi;
        body.resize(body.size() - 2);
        if (body.empty() || body == "+")
            return scale;
        if (body == "-")
            return -scale;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(body, &used);
    } catch (const std::exception&) {
        fail();
    }
    if (used != body.size() || !std::isfinite(v))
        fail();
    return v * scale;
}

std::vector<double> parse_angle_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse_angle(text.substr(start, end - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

namespace {

json num(double x) { return round_sig12(x); }

json cnum(const Complex& c) { return json::array({num(c.real()), num(c.imag())}); }

json vec(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v)
        a.push_back(num(x));
    return a;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 failed for " + path);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return hex.str();
}

json digest(const std::string& path) { return {{"path", path}, {"sha256", sha256_file(path)}}; }

json state_json(const PureState& s) {
    json amps = json::array();
    for (const auto& a : s.amplitudes())
        amps.push_back(cnum(a));
    return {{"n_qubits", s.n_qubits()}, {"amplitudes", amps}};
}

json matrix_json(const Matrix2& m) {
    return json::array({json::array({cnum(m(0, 0)), cnum(m(0, 1))}),
                        json::array({cnum(m(1, 0)), cnum(m(1, 1))})});
}

json repro_json(const ReproReport& r) {
    json spectra = json::array();
    for (std::size_t p = 0; p < r.spectra.size(); ++p) {
        const auto& s = r.spectra[p];
        spectra.push_back({{"player", p + 1},
                           {"ok", s.ok},
                           {"degenerate", s.degenerate},
                           {"eigenvalues", json::array({cnum(s.eigenvalues[0]), cnum(s.eigenvalues[1])})},
                           {"diagonalizer", matrix_json(s.diagonalizer)},
                           {"phi", num(s.phi)}});
    }
    json j{{"verdict", r.pass ? "pass" : "fail"},
           {"tol", num(r.tol)},
           {"max_offdiag", num(r.max_offdiag)},
           {"worst_pair", json::array({r.worst_pair.first, r.worst_pair.second})},
           {"spectrum_ok", r.spectrum_ok},
           {"spectra", spectra},
           {"sigma_z_residuals", vec(r.sigma_z_residuals)},
           {"magnitude_deviation", num(r.magnitude_deviation)},
           {"magnitudes_ok", r.magnitudes_ok},
           {"notes", r.notes}};
    j["canonical_state"] = r.canonical_state ? state_json(*r.canonical_state) : json(nullptr);
    return j;
}

struct Common {
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    std::string out_path;
    bool json_out = false;
    bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--tol", c.tol, "Tolerance for the distinguishability verdict")->capture_default_str();
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    sub->add_option("--out", c.out_path, "Output file");
    sub->add_flag("--json", c.json_out, "Print the machine-readable report to stdout");
    sub->add_flag("--timing", c.timing, "Include wall time in the report (breaks byte-identity)");
}

class Reporter {
public:
    Reporter(std::string command, const std::vector<std::string>& args, const Common& common)
        : common_(common), start_(std::chrono::steady_clock::now()) {
        report_["command"] = std::move(command);
        report_["args"] = args;
        report_["tool"] = {{"name", "qrepro"}, {"version", kVersion}};
        report_["inputs"] = json::object();
    }

    json& inputs() { return report_["inputs"]; }
    json& result() { return report_["result"]; }

    int finish(int code, std::ostream& out, std::vector<std::string> lines, bool write_report_file) {
        report_["exit_code"] = code;
        if (common_.timing) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
            report_["wall_time_s"] = num(dt.count());
        }
        const std::string text = report_.dump(2) + "\n";
        if (write_report_file && !common_.out_path.empty()) {
            std::ofstream f(common_.out_path, std::ios::binary);
            if (!f)
                throw IoError("cannot write " + common_.out_path);
            f << text;
        }
        if (common_.json_out)
            out << text;
        else
            for (const auto& l : lines)
                out << l << "\n";
        return code;
    }

private:
    const Common& common_;
    std::chrono::steady_clock::time_point start_;
    json report_;
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::string fmt(const std::vector<double>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + fmt(v[i]);
    return s + ")";
}

std::vector<int> parse_selection(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw ValidationError("");
        } catch (const std::exception&) {
            throw ValidationError("cannot parse selection '" + text + "'");
        }
    }
    return out;
}

/// "a,b,g;a,b,g;..." in parse_angle units, one triple per player.
std::vector<LocalUnitary> parse_operator_angles(const std::string& text) {
    std::vector<LocalUnitary> ops;
    std::stringstream ss(text);
    std::string triple;
    while (std::getline(ss, triple, ';')) {
        const auto a = parse_angle_list(triple);
        if (a.size() != 3)
            throw ValidationError("each operator needs three angles (alpha,beta,gamma)");
        ops.push_back(su2_from_angles(a[0], a[1], a[2]));
    }
    return ops;
}

// ---- subcommands ----------------------------------------------------------

struct GenArgs {
    std::string kind;
    int n = 0;
    int m = -1;
};

int cmd_gen(const GenArgs& a, const Common& c, std::ostream& out) {
    StateKind kind{parse_state_family(a.kind), 0};
    if (kind.family == StateFamily::dicke) {
        if (a.m < 0)
            throw ValidationError("dicke states need --m");
        kind.m = a.m;
    }
    const PureState s = make_state(kind, a.n);
    if (c.out_path.empty())
        out << state_to_json(s);
    else
        save_state(s, c.out_path);
    return kExitOk;
}

struct CheckArgs {
    std::string state, ops;
};

int cmd_check(const CheckArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
    Reporter rep("check", args, c);
    rep.inputs()["state"] = digest(a.state);
    rep.inputs()["ops"] = digest(a.ops);
    const PureState state = load_state(a.state);
    const StrategyAssignment ops = load_ops(a.ops);
    if (ops.n_players() != state.n_qubits())
        throw DimensionError("operators file has " + std::to_string(ops.n_players()) +
                             " players, state has " + std::to_string(state.n_qubits()) + " qubits");
    const ReproReport r = check_distinguishability(state, ops, c.tol);
    rep.result() = repro_json(r);
    std::vector<std::string> lines{
        std::string("verdict: ") + (r.pass ? "pass" : "fail"),
        "max_offdiag: " + fmt(r.max_offdiag) + " (pair " + std::to_string(r.worst_pair.first) + ", " +
            std::to_string(r.worst_pair.second) + ")",
        std::string("spectrum_ok: ") + (r.spectrum_ok ? "true" : "false"),
        "magnitude_deviation: " + fmt(r.magnitude_deviation)};
    return rep.finish(r.pass ? kExitOk : kExitAnalyticFail, out, lines, true);
}

struct SearchArgs {
    std::string state;
    int restarts = 32;
    int max_iters = SearchConfig{}.max_iters;
    int threads = 0;
    bool full = false;
};

int cmd_search(const SearchArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
    Reporter rep("search", args, c);
    rep.inputs()["state"] = digest(a.state);
    const PureState state = load_state(a.state);
    SearchConfig cfg;
    cfg.restarts = a.restarts;
    cfg.max_iters = a.max_iters;
    cfg.seed = c.seed;
    cfg.tol = c.tol;
    cfg.gauge_fixed = !a.full;
    if (a.threads > 0)
        omp_set_num_threads(a.threads);
    const SearchResult res = search_operators(state, cfg);

    json pairs = json::array();
    for (const auto& p : res.best_assignment.pairs())
        pairs.push_back({{"u1", matrix_json(p.first.matrix())}, {"u2", matrix_json(p.second.matrix())}});
    rep.result() = {{"converged", res.converged},
                    {"best_residual", num(res.best_residual)},
                    {"best_restart", res.best_restart},
                    {"restarts", cfg.restarts},
                    {"seed", cfg.seed},
                    {"tol", num(cfg.tol)},
                    {"gauge_fixed", cfg.gauge_fixed},
                    {"restart_residuals", vec(res.restart_residuals)},
                    {"best_assignment", pairs}};
    std::vector<std::string> lines{std::string("converged: ") + (res.converged ? "true" : "false"),
                                   "best_residual: " + fmt(res.best_residual)};
    if (res.converged) {
        if (!c.out_path.empty()) {
            save_ops(res.best_assignment, c.out_path);
            lines.push_back("operators written to " + c.out_path);
        }
    } else {
        lines.push_back("no witness found: best residual " + fmt(res.best_residual) + " after " +
                        std::to_string(cfg.restarts) + " restarts");
    }
    return rep.finish(res.converged ? kExitOk : kExitAnalyticFail, out, lines, false);
}

struct ModelArgs {
    std::string game, state, ops;
    std::string select, theta, angles;
    std::uint64_t shots = 0;
};

int cmd_payoff(const ModelArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    Reporter rep("payoff", args, c);
    rep.inputs()["game"] = digest(a.game);
    rep.inputs()["state"] = digest(a.state);
    rep.inputs()["ops"] = digest(a.ops);
    const ClassicalGame game = load_game(a.game);
    const PureState state = load_state(a.state);
    const StrategyAssignment assignment = load_ops(a.ops);

    const int given = !a.select.empty() + !a.theta.empty() + !a.angles.empty();
    if (given != 1)
        throw ValidationError("give exactly one of --select, --theta, --angles");

    std::optional<QuantumGameModel> model;
    try {
        model.emplace(state, assignment, game, c.tol);
    } catch (const DistinguishabilityError& e) {
        err << "error: " << e.what() << "\n";
        rep.result() = {{"error", e.what()},
                        {"max_offdiag", num(e.max_offdiag())},
                        {"worst_pair", json::array({e.worst_pair().first, e.worst_pair().second})}};
        return rep.finish(kExitAnalyticFail, out, {"distinguishability condition fails"}, true);
    }

    std::vector<LocalUnitary> ops;
    json choice;
    if (!a.select.empty()) {
        const auto sel = parse_selection(a.select);
        if (sel.size() != static_cast<std::size_t>(state.n_qubits()))
            throw DimensionError("--select needs one choice per player");
        ops = assignment.select(strategy_index(sel));
        choice = {{"select", sel}};
    } else if (!a.theta.empty()) {
        const auto th = parse_angle_list(a.theta);
        ops = mixed_strategy_operators(assignment, th, c.tol);
        choice = {{"theta", vec(th)}};
    } else {
        ops = parse_operator_angles(a.angles);
        if (ops.size() != static_cast<std::size_t>(state.n_qubits()))
            throw DimensionError("--angles needs one operator per player");
        choice = {{"angles", a.angles}};
    }

    const auto probs = outcome_probabilities(*model, ops);
    const auto pay = expected_payoff(*model, ops);
    rep.result() = {{"operators", choice}, {"probabilities", vec(probs)}, {"payoff", vec(pay)}};
    std::vector<std::string> lines{"payoff: " + fmt(pay), "probabilities: " + fmt(probs)};
    if (a.shots > 0) {
        const auto counts = sample_round(*model, ops, a.shots, c.seed);
        rep.result()["shots"] = a.shots;
        rep.result()["seed"] = c.seed;
        rep.result()["counts"] = counts;
        std::string s = "counts:";
        for (auto n : counts)
            s += " " + std::to_string(n);
        lines.push_back(s);
    }
    return rep.finish(kExitOk, out, lines, true);
}

int cmd_reproduce(const ModelArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out,
                  std::ostream& err) {
    Reporter rep("reproduce", args, c);
    rep.inputs()["game"] = digest(a.game);
    rep.inputs()["state"] = digest(a.state);
    rep.inputs()["ops"] = digest(a.ops);
    const ClassicalGame game = load_game(a.game);
    const PureState state = load_state(a.state);
    const StrategyAssignment assignment = load_ops(a.ops);
    if (a.theta.empty())
        throw ValidationError("reproduce needs --theta");
    const auto th = parse_angle_list(a.theta);

    MixedReproduction mr;
    try {
        mr = verify_mixed_reproduction(game, state, assignment, th, c.tol);
    } catch (const DistinguishabilityError& e) {
        const std::string msg = std::string("precondition fails, classical game cannot be reproduced: ") + e.what();
        err << "error: " << msg << "\n";
        rep.result() = {{"error", msg},
                        {"max_offdiag", num(e.max_offdiag())},
                        {"worst_pair", json::array({e.worst_pair().first, e.worst_pair().second})}};
        return rep.finish(kExitAnalyticFail, out, {msg}, true);
    }
    std::vector<double> q;
    for (double t : th)
        q.push_back(std::cos(t) * std::cos(t));
    const bool ok = mr.max_abs_diff < c.tol;
    rep.result() = {{"theta", vec(th)},
                    {"first_strategy_probability", vec(q)},
                    {"classical_payoff", vec(mr.classical)},
                    {"quantum_payoff", vec(mr.quantum)},
                    {"max_abs_diff", num(mr.max_abs_diff)},
                    {"reproduced", ok}};
    std::vector<std::string> lines{"classical payoff: " + fmt(mr.classical),
                                   "quantum payoff:   " + fmt(mr.quantum),
                                   "max difference:   " + fmt(mr.max_abs_diff)};
    return rep.finish(ok ? kExitOk : kExitAnalyticFail, out, lines, true);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qrepro: decide whether an entangled state and strategy operators reproduce a classical game"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a fixture state file");
    gen_cmd->add_option("--kind", gen.kind, "bell|ghz|ghz_like_i|w|dicke|product_zero")->required();
    gen_cmd->add_option("--n", gen.n, "Number of qubits")->required();
    gen_cmd->add_option("--m", gen.m, "Number of ones (dicke)");
    add_common(gen_cmd, common);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Check the distinguishability condition");
    check_cmd->add_option("--state", check.state, "State file")->required();
    check_cmd->add_option("--ops", check.ops, "Operators file")->required();
    add_common(check_cmd, common);

    SearchArgs search;
    auto* search_cmd = app.add_subcommand("search", "Search for operator pairs satisfying the condition");
    search_cmd->add_option("--state", search.state, "State file")->required();
    search_cmd->add_option("--restarts", search.restarts, "Number of random restarts")->capture_default_str();
    search_cmd->add_option("--max-iters", search.max_iters, "Sweeps per restart")->capture_default_str();
    search_cmd->add_option("--threads", search.threads, "OpenMP threads (0 = runtime default)");
    search_cmd->add_flag("--no-gauge", search.full, "Search both operators of every pair");
    add_common(search_cmd, common);

    ModelArgs model;
    auto* payoff_cmd = app.add_subcommand("payoff", "Expected payoffs and outcome probabilities");
    auto* repro_cmd = app.add_subcommand("reproduce", "Classical mixed payoff vs. quantum payoff side by side");
    for (auto* sub : {payoff_cmd, repro_cmd}) {
        sub->add_option("--game", model.game, "Game file")->required();
        sub->add_option("--state", model.state, "State file")->required();
        sub->add_option("--ops", model.ops, "Operators file")->required();
        sub->add_option("--theta", model.theta, "Mixing angles, e.g. 0.25pi,0.25pi");
        add_common(sub, common);
    }
    payoff_cmd->add_option("--select", model.select, "Pure selection l_i in {1,2}, e.g. 2,1");
    payoff_cmd->add_option("--angles", model.angles, "Raw SU(2) operators 'a,b,g;a,b,g' (angles, pi suffix ok)");
    payoff_cmd->add_option("--shots", model.shots, "Also sample this many measurement rounds");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (search.restarts < 1 && search_cmd->parsed())
            throw ValidationError("--restarts must be >= 1");
        if (gen_cmd->parsed())
            return cmd_gen(gen, common, out);
        if (check_cmd->parsed())
            return cmd_check(check, common, args, out);
        if (search_cmd->parsed())
            return cmd_search(search, common, args, out);
        if (payoff_cmd->parsed())
            return cmd_payoff(model, common, args, out, err);
        if (repro_cmd->parsed())
            return cmd_reproduce(model, common, args, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

} // namespace qrepro::cli
