#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrepro/classical.hpp"
#include "qrepro/strategy.hpp"
#include "qrepro/tensor.hpp"

namespace qrepro {

/// G_ab = <Phi_a|Phi_b> over all 2^N pure-strategy outputs.
class GramMatrix {
public:
    GramMatrix(std::size_t dim, std::vector<Complex> entries);

    std::size_t dim() const { return dim_; }
    const Complex& operator()(std::size_t a, std::size_t b) const { return g_[a * dim_ + b]; }

    double max_offdiag() const { return max_offdiag_; }
    /// (a, b) with a < b attaining max_offdiag; first in row-major order on ties.
    std::pair<std::size_t, std::size_t> worst_pair() const { return worst_; }

private:
    std::size_t dim_;
    std::vector<Complex> g_;
    double max_offdiag_ = 0.0;
    std::pair<std::size_t, std::size_t> worst_{0, 0};
};

GramMatrix gram_matrix(const PureState& state, const StrategyAssignment& assignment,
                       Exec exec = Exec::parallel);

struct SpectrumCheck {
    bool ok = false;
    bool degenerate = false;
    std::array<Complex, 2> eigenvalues{};
    /// Rows are conjugated eigenvectors: z (u1^dag u2) z^dag = diag(lambda_0, lambda_1).
    Matrix2 diagonalizer;
    /// Eigenphase of the first eigenvalue.
    double phi = 0.0;
};

/// ok iff the eigenvalues of u1^dag u2 are {i, -i} within tol. Takes raw unitaries so
/// that operators outside SU(2) (sigma_x, say) can be inspected as given.
SpectrumCheck check_operator_spectrum(const Matrix2& u1, const Matrix2& u2,
                                      double tol = kDefaultTol);
SpectrumCheck check_operator_spectrum(const StrategyPair& pair, double tol = kDefaultTol);

/// Psi' = (z_1 (x) ... (x) z_N)|Psi>. Throws ValidationError naming the first player
/// whose pair fails the spectral condition.
PureState canonical_form(const PureState& state, const StrategyAssignment& assignment,
                         double tol = kDefaultTol);

/// <Psi| (x)_k sigma_z^[k in T] |Psi> for every nonempty subset T of players.
/// Entry t-1 holds subset t, where bit p of t selects player p+1.
std::vector<double> sigma_z_correlations(const PureState& state);

struct MagnitudeCheck {
    bool ok = false;
    double deviation = 0.0; ///< max_b | |c_b|^2 - 2^-N |
};

MagnitudeCheck uniform_magnitude_check(const PureState& state, double tol = kDefaultTol);

/// Squared magnitudes |c_b|^2 from the 2^N - 1 sigma_z correlations plus normalisation,
/// by inverting the (orthogonal) sign matrix.
std::vector<double> magnitudes_from_correlations(const std::vector<double>& correlations,
                                                 int n_qubits);

/// The sign system rows: row t-1 is the diagonal of the subset-t sigma_z string
/// (t = 1..2^N-1), the last row is all ones (normalisation).
std::vector<std::vector<double>> correlation_sign_matrix(int n_qubits);

struct ReproReport {
    bool pass = false;
    double tol = kDefaultTol;
    double max_offdiag = 0.0;
    std::pair<std::size_t, std::size_t> worst_pair{0, 0};
    std::vector<SpectrumCheck> spectra;
    bool spectrum_ok = false;
    /// Present on pass.
    std::optional<PureState> canonical_state;
    /// Filled whenever every spectrum check passes.
    std::vector<double> sigma_z_residuals;
    double magnitude_deviation = 0.0;
    bool magnitudes_ok = false;
    std::vector<std::string> notes;
};

/// Verdict: pass iff max off-diagonal |G| < tol and every pair satisfies the
/// spectral condition. Failures are verdicts, never exceptions.
ReproReport check_distinguishability(const PureState& state, const StrategyAssignment& assignment,
                                     double tol = kDefaultTol, Exec exec = Exec::parallel);

struct MixedReproduction {
    std::vector<double> quantum;
    std::vector<double> classical;
    double max_abs_diff = 0.0;
};

/// Quantum side plays w_k(theta_k); classical side mixes with P(strategy 1) = cos^2 theta_k.
MixedReproduction verify_mixed_reproduction(const ClassicalGame& game, const PureState& state,
                                            const StrategyAssignment& assignment,
                                            const std::vector<double>& thetas,
                                            double tol = kDefaultTol);

} // namespace qrepro
