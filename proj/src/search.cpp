#include "qrepro/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qrepro/analysis.hpp"
#include "qrepro/errors.hpp"
#include "qrepro/kernels.hpp"

namespace qrepro {

double residual(const PureState& state, const StrategyAssignment& assignment, Exec exec) {
    return gram_matrix(state, assignment, exec).max_offdiag();
}

namespace {

// Angle layout per player: gauge-fixed (a2, b2, g2); free (a1, b1, g1, a2, b2, g2).
struct Parameterization {
    int n_players;
    bool gauge_fixed;

    int per_player() const { return gauge_fixed ? 3 : 6; }
    int size() const { return n_players * per_player(); }

    StrategyPair pair(const std::vector<double>& x, int p) const {
        const double* a = x.data() + static_cast<std::ptrdiff_t>(p) * per_player();
        if (gauge_fixed)
            return {LocalUnitary(), su2_from_angles(a[0], a[1], a[2])};
        return {su2_from_angles(a[0], a[1], a[2]), su2_from_angles(a[3], a[4], a[5])};
    }

    StrategyAssignment assignment(const std::vector<double>& x) const {
        std::vector<StrategyPair> pairs;
        for (int p = 0; p < n_players; ++p)
            pairs.push_back(pair(x, p));
        return StrategyAssignment(std::move(pairs));
    }
};

// Sum of |G_ab|^2 over a < b: smooth surrogate of the max off-diagonal residual.
class Objective {
public:
    Objective(const PureState& state, Parameterization param)
        : state_(state), param_(param), dim_(state.dim()), outputs_(dim_, std::vector<Complex>(dim_)),
          mats_(static_cast<std::size_t>(param.n_players)) {}

    double operator()(const std::vector<double>& x) {
        const int n = param_.n_players;
        std::vector<std::array<Matrix2, 2>> ops(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) {
            const StrategyPair sp = param_.pair(x, p);
            ops[p] = {sp.first.matrix(), sp.second.matrix()};
        }
        for (std::size_t k = 0; k < dim_; ++k) {
            for (int p = 0; p < n; ++p)
                mats_[p] = ops[p][choice_of(k, p)];
            auto& v = outputs_[k];
            std::copy(state_.amplitudes().begin(), state_.amplitudes().end(), v.begin());
            kernels::serial::apply_local(v, n, mats_);
        }
        double f = 0.0;
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = a + 1; b < dim_; ++b)
                f += std::norm(inner(outputs_[a], outputs_[b]));
        return f;
    }

private:
    const PureState& state_;
    Parameterization param_;
    std::size_t dim_;
    std::vector<std::vector<Complex>> outputs_;
    std::vector<Matrix2> mats_;
};

struct RestartOutcome {
    std::vector<double> x;
    double residual = 1.0;
};

std::mt19937_64 restart_stream(std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart), 0x5eedu};
    return std::mt19937_64(seq);
}

RestartOutcome run_restart(const PureState& state, const Parameterization& param,
                           const SearchConfig& config, int restart) {
    auto rng = restart_stream(config.seed, restart);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<double> x(static_cast<std::size_t>(param.size()));
    for (auto& v : x)
        v = angle(rng);

    Objective objective(state, param);
    double f = objective(x);
    double step = config.initial_step;
    // Stop polishing once the surrogate is far below the reporting tolerance.
    const double floor = std::pow(config.tol * 1e-2, 2);
    std::vector<double> base = x, trial(x.size());
    for (int it = 0; it < config.max_iters && step >= config.min_step && f > floor; ++it) {
        bool improved = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (double s : {step, -step}) {
                const double saved = x[i];
                x[i] = saved + s;
                const double fy = objective(x);
                if (fy < f) {
                    f = fy;
                    improved = true;
                    break;
                }
                x[i] = saved;
            }
        }
        if (!improved) {
            step *= config.shrink;
            continue;
        }
        // Pattern move: extrapolate along the sweep displacement while it keeps paying off.
        for (double scale = 1.0;; scale *= 2.0) {
            for (std::size_t i = 0; i < x.size(); ++i)
                trial[i] = x[i] + scale * (x[i] - base[i]);
            const double ft = objective(trial);
            if (!(ft < f))
                break;
            f = ft;
            base = x;
            x = trial;
        }
        base = x;
    }
    return {x, residual(state, param.assignment(x), Exec::serial)};
}

} // namespace

SearchResult search_operators(const PureState& state, const SearchConfig& config) {
    if (config.restarts < 1)
        throw ValidationError("restarts must be >= 1");
    if (!(config.tol > 0.0))
        throw ValidationError("tol must be positive");
    if (config.max_iters < 1 || !(config.initial_step > 0.0) || !(config.shrink > 0.0 && config.shrink < 1.0))
        throw ValidationError("invalid step schedule");

    const Parameterization param{state.n_qubits(), config.gauge_fixed};
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
#pragma omp parallel for schedule(dynamic, 1) if (config.exec == Exec::parallel)
    for (int r = 0; r < config.restarts; ++r)
        outcomes[static_cast<std::size_t>(r)] = run_restart(state, param, config, r);

    SearchResult result;
    for (int r = 0; r < config.restarts; ++r) {
        const double res = outcomes[static_cast<std::size_t>(r)].residual;
        result.restart_residuals.push_back(res);
        if (r == 0 || res < result.best_residual) {
            result.best_residual = res;
            result.best_restart = r;
        }
    }
    result.best_assignment = param.assignment(outcomes[static_cast<std::size_t>(result.best_restart)].x);
    result.converged = result.best_residual < config.tol;
    return result;
}

} // namespace qrepro
