#pragma once

// Dense complex linear algebra for small N-qubit pure states.
//
// Amplitude layout: the basis ket |i_1 i_2 ... i_N> lives at index
// b = sum_j i_j * 2^(N-j), i.e. player 1 is the MOST significant bit.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qrepro {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kMaxQubits = 16;

/// 2x2 complex matrix, row-major.
class Matrix2 {
public:
    constexpr Matrix2() = default;
    constexpr Matrix2(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {}

    static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Complex& operator()(std::size_t r, std::size_t c) { return m_[2 * r + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_[2 * r + c]; }

    Matrix2 adjoint() const;
    Complex det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    Complex trace() const { return m_[0] + m_[3]; }

    /// max |entry| of this - other
    double max_abs_diff(const Matrix2& other) const;
    bool is_finite() const;

    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator+(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator-(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator*(Complex s, const Matrix2& a);

    const std::array<Complex, 4>& entries() const { return m_; }

private:
    std::array<Complex, 4> m_{};
};

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
Matrix2 hadamard();
} // namespace pauli

/// ||U^dag U - I||_max
double unitarity_error(const Matrix2& u);
bool is_unitary(const Matrix2& u, double tol = kDefaultTol);
bool is_normal(const Matrix2& m, double tol = kDefaultTol);

/// A 2x2 special unitary: U^dag U = I and det U = 1, both within tolerance.
class LocalUnitary {
public:
    /// Identity.
    LocalUnitary() : m_(Matrix2::identity()) {}

    /// Validates unitarity and unit determinant; throws ValidationError.
    explicit LocalUnitary(const Matrix2& m, double tol = kDefaultTol);

    const Matrix2& matrix() const { return m_; }
    LocalUnitary adjoint() const;

    friend bool operator==(const LocalUnitary& a, const LocalUnitary& b) {
        return a.m_.entries() == b.m_.entries();
    }

private:
    Matrix2 m_;
};

/// Normalised amplitude vector for n qubits.
class PureState {
public:
    /// Validates length 2^n, finiteness and unit norm within tol.
    PureState(int n_qubits, std::vector<Complex> amplitudes, double tol = kDefaultTol);

    /// |0...0>
    static PureState zero(int n_qubits);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t b) const { return amps_[b]; }

    double norm() const;

    friend bool operator==(const PureState& a, const PureState& b) {
        return a.n_ == b.n_ && a.amps_ == b.amps_;
    }

private:
    int n_;
    std::vector<Complex> amps_;
};

/// <a|b>
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
Complex inner(const PureState& a, const PureState& b);

/// Bit position of a player's qubit inside an amplitude index (player is 0-based).
constexpr int amplitude_bit(int player, int n_qubits) { return n_qubits - 1 - player; }

/// Dense square matrix used for Kronecker products and test oracles.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    SquareMatrix(const Matrix2& m); // NOLINT: implicit promotion is intended

    std::size_t dim() const { return dim_; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    static SquareMatrix identity(std::size_t dim);

    std::vector<Complex> apply(std::span<const Complex> v) const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

SquareMatrix kron(const SquareMatrix& a, const SquareMatrix& b);

enum class Exec { serial, parallel };

/// (op_1 (x) ... (x) op_N)|state>, contracted one qubit at a time.
PureState apply_local(std::span<const LocalUnitary> ops, const PureState& state,
                      Exec exec = Exec::parallel);

/// [[e^{ia} cos g, e^{ib} sin g], [-e^{-ib} sin g, e^{-ia} cos g]]
LocalUnitary su2_from_angles(double alpha, double beta, double gamma);

/// Strips the global phase: u / sqrt(det u) with the principal root, sign chosen so the
/// first nonzero entry (row-major) has argument in (-pi/2, pi/2].
LocalUnitary project_to_su2(const Matrix2& u, double tol = kDefaultTol);

struct Eigen2 {
    std::array<Complex, 2> values;
    /// vectors[k] is the unit eigenvector of values[k]
    std::array<std::array<Complex, 2>, 2> vectors;
    bool degenerate = false;
};

/// Closed-form eigendecomposition of a normal 2x2 matrix.
///
/// Ordering: larger imaginary part first, ties broken by larger real part.
/// Each eigenvector's first nonzero component is real and positive. A repeated
/// eigenvalue (m proportional to I) sets `degenerate` and returns the standard basis.
Eigen2 eig2(const Matrix2& m, double tol = kDefaultTol);

} // namespace qrepro
