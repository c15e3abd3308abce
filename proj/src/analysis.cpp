#include "qrepro/analysis.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qrepro/errors.hpp"
#include "qrepro/kernels.hpp"
#include "qrepro/quantum.hpp"

namespace qrepro {

GramMatrix::GramMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), g_(std::move(entries)) {
    if (g_.size() != dim_ * dim_)
        throw DimensionError("Gram matrix storage does not match its dimension");
    for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = a + 1; b < dim_; ++b) {
            const double v = std::abs(g_[a * dim_ + b]);
            if (v > max_offdiag_) {
                max_offdiag_ = v;
                worst_ = {a, b};
            }
        }
    if (dim_ > 1 && max_offdiag_ == 0.0)
        worst_ = {0, 1};
}

GramMatrix gram_matrix(const PureState& state, const StrategyAssignment& assignment, Exec exec) {
    const auto outputs = output_states(state, assignment, exec);
    std::vector<std::vector<Complex>> vecs;
    vecs.reserve(outputs.size());
    for (const auto& phi : outputs)
        vecs.emplace_back(phi.amplitudes().begin(), phi.amplitudes().end());
    std::vector<Complex> g(vecs.size() * vecs.size());
    kernels::gram(exec, vecs, g);
    return GramMatrix(vecs.size(), std::move(g));
}

SpectrumCheck check_operator_spectrum(const Matrix2& u1, const Matrix2& u2, double tol) {
    const Matrix2 m = u1.adjoint() * u2;
    const Eigen2 e = eig2(m, tol);
    SpectrumCheck out;
    out.eigenvalues = e.values;
    out.degenerate = e.degenerate;
    out.phi = std::arg(e.values[0]);
    out.diagonalizer = Matrix2(std::conj(e.vectors[0][0]), std::conj(e.vectors[0][1]),
                               std::conj(e.vectors[1][0]), std::conj(e.vectors[1][1]));
    const Complex i(0.0, 1.0);
    out.ok = !e.degenerate && std::abs(e.values[0] - i) <= tol && std::abs(e.values[1] + i) <= tol;
    return out;
}

SpectrumCheck check_operator_spectrum(const StrategyPair& pair, double tol) {
    return check_operator_spectrum(pair.first.matrix(), pair.second.matrix(), tol);
}

PureState canonical_form(const PureState& state, const StrategyAssignment& assignment, double tol) {
    if (assignment.n_players() != state.n_qubits())
        throw DimensionError("assignment and state disagree on the number of players");
    std::vector<LocalUnitary> zs;
    for (int p = 0; p < assignment.n_players(); ++p) {
        const SpectrumCheck s = check_operator_spectrum(assignment[p], tol);
        if (!s.ok)
            throw ValidationError("player " + std::to_string(p + 1) +
                                  " violates the spectral condition: u1^dag u2 lacks eigenvalues {i, -i}");
        zs.push_back(project_to_su2(s.diagonalizer));
    }
    return apply_local(zs, state);
}

std::vector<double> sigma_z_correlations(const PureState& state) {
    const int n = state.n_qubits();
    const std::size_t dim = state.dim();
    std::vector<double> out;
    out.reserve(dim - 1);
    for (std::size_t t = 1; t < dim; ++t) {
        // Subset bit p (player p+1) sits at amplitude bit n-1-p.
        std::size_t mask = 0;
        for (int p = 0; p < n; ++p)
            if ((t >> p) & 1u)
                mask |= std::size_t{1} << amplitude_bit(p, n);
        double s = 0.0;
        for (std::size_t b = 0; b < dim; ++b) {
            const double w = std::norm(state[b]);
            s += (std::popcount(b & mask) % 2 == 0) ? w : -w;
        }
        out.push_back(s);
    }
    return out;
}

MagnitudeCheck uniform_magnitude_check(const PureState& state, double tol) {
    const double target = 1.0 / static_cast<double>(state.dim());
    MagnitudeCheck out;
    for (const auto& c : state.amplitudes())
        out.deviation = std::max(out.deviation, std::abs(std::norm(c) - target));
    out.ok = out.deviation < tol;
    return out;
}

std::vector<std::vector<double>> correlation_sign_matrix(int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<std::vector<double>> rows;
    for (std::size_t t = 1; t <= dim; ++t) {
        std::vector<double> row(dim, 1.0);
        if (t < dim) {
            for (std::size_t b = 0; b < dim; ++b) {
                int parity = 0;
                for (int p = 0; p < n_qubits; ++p)
                    if (((t >> p) & 1u) && ((b >> amplitude_bit(p, n_qubits)) & 1u))
                        parity ^= 1;
                row[b] = parity ? -1.0 : 1.0;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> magnitudes_from_correlations(const std::vector<double>& correlations, int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (correlations.size() != dim - 1)
        throw DimensionError("expected 2^N - 1 correlations");
    // Rows are mutually orthogonal with squared norm 2^N, so the inverse is S^T / 2^N.
    const auto s = correlation_sign_matrix(n_qubits);
    std::vector<double> rhs(correlations);
    rhs.push_back(1.0);
    std::vector<double> out(dim, 0.0);
    for (std::size_t b = 0; b < dim; ++b) {
        for (std::size_t r = 0; r < dim; ++r)
            out[b] += s[r][b] * rhs[r];
        out[b] /= static_cast<double>(dim);
    }
    return out;
}

ReproReport check_distinguishability(const PureState& state, const StrategyAssignment& assignment,
                                     double tol, Exec exec) {
    ReproReport r;
    r.tol = tol;
    const GramMatrix g = gram_matrix(state, assignment, exec);
    r.max_offdiag = g.max_offdiag();
    r.worst_pair = g.worst_pair();

    r.spectrum_ok = true;
    for (int p = 0; p < assignment.n_players(); ++p) {
        r.spectra.push_back(check_operator_spectrum(assignment[p], tol));
        if (!r.spectra.back().ok)
            r.spectrum_ok = false;
    }
    r.pass = r.max_offdiag < tol && r.spectrum_ok;

    if (r.spectrum_ok) {
        PureState canon = canonical_form(state, assignment, tol);
        r.sigma_z_residuals = sigma_z_correlations(canon);
        const MagnitudeCheck mag = uniform_magnitude_check(canon, tol);
        r.magnitude_deviation = mag.deviation;
        r.magnitudes_ok = mag.ok;
        if (r.pass)
            r.canonical_state = std::move(canon);
    }
    r.notes.push_back("mixed strategies use P(strategy 1) = cos^2(theta); uniform canonical "
                      "magnitudes are |c|^2 = 2^-N");
    if (!r.pass && r.max_offdiag > 1.0 - 1e-9)
        r.notes.push_back("two output states coincide up to a global phase");
    return r;
}

MixedReproduction verify_mixed_reproduction(const ClassicalGame& game, const PureState& state,
                                            const StrategyAssignment& assignment,
                                            const std::vector<double>& thetas, double tol) {
    const QuantumGameModel model(state, assignment, game, tol);
    if (thetas.size() != static_cast<std::size_t>(game.n_players()))
        throw DimensionError("need one angle per player");
    MixedReproduction out;
    out.quantum = expected_payoff(model, mixed_strategy_operators(assignment, thetas, tol));
    std::vector<double> p;
    for (double t : thetas)
        p.push_back(std::cos(t) * std::cos(t));
    out.classical = mixed_payoff(game, MixedProfile::from_first_strategy(p));
    for (std::size_t i = 0; i < out.quantum.size(); ++i)
        out.max_abs_diff = std::max(out.max_abs_diff, std::abs(out.quantum[i] - out.classical[i]));
    return out;
}

} // namespace qrepro
