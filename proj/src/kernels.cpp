#include "qrepro/kernels.hpp"

#include <cstdint>

namespace qrepro::kernels {

namespace {

// Below this many amplitude pairs the OpenMP fork/join costs more than the loop.
constexpr std::int64_t kParallelThreshold = 1 << 11;

inline void rotate_pair(std::span<Complex> amps, std::size_t i0, std::size_t stride, const Matrix2& m) {
    const std::size_t i1 = i0 | stride;
    const Complex a0 = amps[i0], a1 = amps[i1];
    amps[i0] = m(0, 0) * a0 + m(0, 1) * a1;
    amps[i1] = m(1, 0) * a0 + m(1, 1) * a1;
}

// i-th index with a zero inserted at `bit`.
inline std::size_t insert_zero(std::size_t i, int bit) {
    const std::size_t low = i & ((std::size_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

} // namespace

namespace serial {

void apply_single(std::span<Complex> amps, int bit, const Matrix2& m) {
    const std::size_t stride = std::size_t{1} << bit;
    const std::size_t half = amps.size() / 2;
    for (std::size_t i = 0; i < half; ++i)
        rotate_pair(amps, insert_zero(i, bit), stride, m);
}

void apply_local(std::span<Complex> amps, int n_qubits, std::span<const Matrix2> ops) {
    for (int p = 0; p < n_qubits; ++p)
        apply_single(amps, amplitude_bit(p, n_qubits), ops[p]);
}

void gram(std::span<const std::vector<Complex>> vecs, std::span<Complex> out) {
    const std::size_t k = vecs.size();
    for (std::size_t a = 0; a < k; ++a) {
        out[a * k + a] = inner(vecs[a], vecs[a]);
        for (std::size_t b = a + 1; b < k; ++b) {
            const Complex g = inner(vecs[a], vecs[b]);
            out[a * k + b] = g;
            out[b * k + a] = std::conj(g);
        }
    }
}

} // namespace serial

namespace parallel {

void apply_single(std::span<Complex> amps, int bit, const Matrix2& m) {
    const std::size_t stride = std::size_t{1} << bit;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static) if (half >= kParallelThreshold)
    for (std::int64_t i = 0; i < half; ++i)
        rotate_pair(amps, insert_zero(static_cast<std::size_t>(i), bit), stride, m);
}

void apply_local(std::span<Complex> amps, int n_qubits, std::span<const Matrix2> ops) {
    for (int p = 0; p < n_qubits; ++p)
        apply_single(amps, amplitude_bit(p, n_qubits), ops[p]);
}

void gram(std::span<const std::vector<Complex>> vecs, std::span<Complex> out) {
    const auto k = static_cast<std::int64_t>(vecs.size());
    const std::int64_t work = k * k * (k > 0 ? static_cast<std::int64_t>(vecs[0].size()) : 0);
    // Each entry is computed by exactly one thread with the serial summation order.
#pragma omp parallel for schedule(dynamic, 1) if (work >= kParallelThreshold)
    for (std::int64_t a = 0; a < k; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        out[ua * k + ua] = inner(vecs[ua], vecs[ua]);
        for (std::size_t b = ua + 1; b < static_cast<std::size_t>(k); ++b) {
            const Complex g = inner(vecs[ua], vecs[b]);
            out[ua * k + b] = g;
            out[b * k + ua] = std::conj(g);
        }
    }
}

} // namespace parallel

} // namespace qrepro::kernels
