#include "qrepro/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrepro/errors.hpp"
#include "qrepro/kernels.hpp"

namespace qrepro {

DistinguishabilityError::DistinguishabilityError(double max_offdiag,
                                                 std::pair<std::size_t, std::size_t> worst_pair)
    : Error([&] {
          std::ostringstream os;
          os.precision(12);
          os << "output states are not distinguishable: |<Phi_" << worst_pair.first << "|Phi_"
             << worst_pair.second << ">| = " << max_offdiag;
          return os.str();
      }()),
      max_offdiag_(max_offdiag),
      worst_pair_(worst_pair) {}

Matrix2 Matrix2::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

double Matrix2::max_abs_diff(const Matrix2& other) const {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        d = std::max(d, std::abs(m_[i] - other.m_[i]));
    return d;
}

bool Matrix2::is_finite() const {
    return std::all_of(m_.begin(), m_.end(), [](const Complex& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2], a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3],
            a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2], a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3]};
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.m_[0] + b.m_[0], a.m_[1] + b.m_[1], a.m_[2] + b.m_[2], a.m_[3] + b.m_[3]};
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.m_[0] - b.m_[0], a.m_[1] - b.m_[1], a.m_[2] - b.m_[2], a.m_[3] - b.m_[3]};
}

Matrix2 operator*(Complex s, const Matrix2& a) {
    return {s * a.m_[0], s * a.m_[1], s * a.m_[2], s * a.m_[3]};
}

namespace pauli {
Matrix2 identity() { return Matrix2::identity(); }
Matrix2 x() { return {0.0, 1.0, 1.0, 0.0}; }
Matrix2 y() { return {0.0, Complex(0, -1), Complex(0, 1), 0.0}; }
Matrix2 z() { return {1.0, 0.0, 0.0, -1.0}; }
Matrix2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}
} // namespace pauli

double unitarity_error(const Matrix2& u) {
    return (u.adjoint() * u).max_abs_diff(Matrix2::identity());
}

bool is_unitary(const Matrix2& u, double tol) { return u.is_finite() && unitarity_error(u) <= tol; }

bool is_normal(const Matrix2& m, double tol) {
    return (m * m.adjoint()).max_abs_diff(m.adjoint() * m) <= tol;
}

LocalUnitary::LocalUnitary(const Matrix2& m, double tol) : m_(m) {
    if (!m.is_finite())
        throw ValidationError("operator has non-finite entries");
    const double uerr = unitarity_error(m);
    if (uerr > tol) {
        std::ostringstream os;
        os << "operator is not unitary: ||U^dag U - I||_max = " << uerr;
        throw ValidationError(os.str());
    }
    const double derr = std::abs(m.det() - 1.0);
    if (derr > tol) {
        std::ostringstream os;
        os << "operator is not in SU(2): |det U - 1| = " << derr;
        throw ValidationError(os.str());
    }
}

LocalUnitary LocalUnitary::adjoint() const { return LocalUnitary(m_.adjoint()); }

PureState::PureState(int n_qubits, std::vector<Complex> amplitudes, double tol)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_ < 1 || n_ > kMaxQubits)
        throw ValidationError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                              std::to_string(n_));
    if (amps_.size() != (std::size_t{1} << n_))
        throw DimensionError("expected " + std::to_string(std::size_t{1} << n_) +
                             " amplitudes for " + std::to_string(n_) + " qubits, got " +
                             std::to_string(amps_.size()));
    for (const auto& a : amps_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw ValidationError("state has non-finite amplitudes");
    const double nrm = norm();
    if (std::abs(nrm - 1.0) > tol) {
        std::ostringstream os;
        os.precision(12);
        os << "state is not normalised: norm = " << nrm;
        throw ValidationError(os.str());
    }
}

PureState PureState::zero(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw ValidationError("qubit count out of range");
    std::vector<Complex> a(std::size_t{1} << n_qubits);
    a[0] = 1.0;
    return PureState(n_qubits, std::move(a));
}

double PureState::norm() const {
    long double s = 0.0L;
    for (const auto& a : amps_)
        s += static_cast<long double>(a.real()) * a.real() + static_cast<long double>(a.imag()) * a.imag();
    return static_cast<double>(std::sqrt(s));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size())
        throw DimensionError("inner product of vectors with different lengths");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

Complex inner(const PureState& a, const PureState& b) { return inner(a.amplitudes(), b.amplitudes()); }

SquareMatrix::SquareMatrix(const Matrix2& m) : dim_(2), data_(m.entries().begin(), m.entries().end()) {}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m(i, i) = 1.0;
    return m;
}

std::vector<Complex> SquareMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != dim_)
        throw DimensionError("matrix-vector dimension mismatch");
    std::vector<Complex> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex s = 0.0;
        for (std::size_t c = 0; c < dim_; ++c)
            s += (*this)(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

SquareMatrix kron(const SquareMatrix& a, const SquareMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    SquareMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return out;
}

PureState apply_local(std::span<const LocalUnitary> ops, const PureState& state, Exec exec) {
    if (static_cast<int>(ops.size()) != state.n_qubits())
        throw DimensionError("apply_local: " + std::to_string(ops.size()) + " operators for " +
                             std::to_string(state.n_qubits()) + " qubits");
    std::vector<Matrix2> mats;
    mats.reserve(ops.size());
    for (const auto& op : ops)
        mats.push_back(op.matrix());
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    kernels::apply_local(exec, amps, state.n_qubits(), mats);
    return PureState(state.n_qubits(), std::move(amps));
}

LocalUnitary su2_from_angles(double alpha, double beta, double gamma) {
    const double c = std::cos(gamma), s = std::sin(gamma);
    const Complex ea = std::polar(1.0, alpha), eb = std::polar(1.0, beta);
    return LocalUnitary(Matrix2(ea * c, eb * s, -std::conj(eb) * s, std::conj(ea) * c));
}

namespace {

// Keep iff the argument lies in (-pi/2, pi/2]: Re > 0, or Re == 0 and Im > 0.
bool has_canonical_sign(const Complex& c) {
    const double scale = std::abs(c);
    if (c.real() > 1e-12 * scale)
        return true;
    if (c.real() < -1e-12 * scale)
        return false;
    return c.imag() > 0.0;
}

} // namespace

LocalUnitary project_to_su2(const Matrix2& u, double tol) {
    if (!is_unitary(u, tol))
        throw ValidationError("project_to_su2: input is not unitary (error " +
                              std::to_string(unitarity_error(u)) + ")");
    // det already 1 up to rounding: leave the entries untouched so the map is
    // idempotent bit-for-bit.
    const Complex det = u.det();
    Matrix2 v = std::abs(det - 1.0) <= 1e-14 ? u : (1.0 / std::sqrt(det)) * u;
    for (const auto& e : v.entries()) {
        if (std::abs(e) <= 1e-12)
            continue;
        if (!has_canonical_sign(e))
            v = Complex(-1.0) * v;
        break;
    }
    return LocalUnitary(v, tol);
}

namespace {

bool eig_before(const Complex& a, const Complex& b, double tol) {
    if (std::abs(a.imag() - b.imag()) > tol)
        return a.imag() > b.imag();
    return a.real() > b.real();
}

std::array<Complex, 2> normalized_with_phase(Complex x, Complex y) {
    const double n = std::sqrt(std::norm(x) + std::norm(y));
    x /= n;
    y /= n;
    const Complex& lead = std::abs(x) > 1e-12 ? x : y;
    const Complex phase = std::conj(lead) / std::abs(lead);
    return {x * phase, y * phase};
}

} // namespace

Eigen2 eig2(const Matrix2& m, double tol) {
    if (!m.is_finite() || !is_normal(m, tol))
        throw ValidationError("eig2: matrix is not normal");
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const Complex half_tr = 0.5 * (a + d);
    const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    Complex l0 = half_tr + disc, l1 = half_tr - disc;
    if (!eig_before(l0, l1, tol))
        std::swap(l0, l1);

    Eigen2 out;
    out.values = {l0, l1};
    if (std::abs(l0 - l1) <= tol) {
        out.degenerate = true;
        out.vectors = {{{1.0, 0.0}, {0.0, 1.0}}};
        return out;
    }
    // Eigenvector of l0 from whichever row of (m - l0 I) is better conditioned;
    // normality makes the second eigenvector its orthogonal complement.
    Complex x, y;
    if (std::abs(b) + std::abs(a - l0) >= std::abs(c) + std::abs(d - l0)) {
        x = b;
        y = l0 - a;
    } else {
        x = l0 - d;
        y = c;
    }
    out.vectors[0] = normalized_with_phase(x, y);
    out.vectors[1] = normalized_with_phase(-std::conj(out.vectors[0][1]), std::conj(out.vectors[0][0]));
    return out;
}

} // namespace qrepro
