#pragma once

// Inner loops shared by the state-level API. Every kernel has a serial
// reference and an OpenMP version; both must produce identical results
// (the parallel ones only partition independent work).

#include <cstddef>
#include <span>
#include <vector>

#include "qrepro/tensor.hpp"

namespace qrepro::kernels {

namespace serial {

/// Applies m to the qubit at amplitude bit `bit`, in place.
void apply_single(std::span<Complex> amps, int bit, const Matrix2& m);

/// ops[p] acts on player p (amplitude bit n-1-p).
void apply_local(std::span<Complex> amps, int n_qubits, std::span<const Matrix2> ops);

/// out[a*K+b] = <vecs[a]|vecs[b]>, K = vecs.size().
void gram(std::span<const std::vector<Complex>> vecs, std::span<Complex> out);

} // namespace serial

namespace parallel {

void apply_single(std::span<Complex> amps, int bit, const Matrix2& m);
void apply_local(std::span<Complex> amps, int n_qubits, std::span<const Matrix2> ops);
void gram(std::span<const std::vector<Complex>> vecs, std::span<Complex> out);

} // namespace parallel

inline void apply_local(Exec exec, std::span<Complex> amps, int n_qubits,
                        std::span<const Matrix2> ops) {
    if (exec == Exec::parallel)
        parallel::apply_local(amps, n_qubits, ops);
    else
        serial::apply_local(amps, n_qubits, ops);
}

inline void gram(Exec exec, std::span<const std::vector<Complex>> vecs, std::span<Complex> out) {
    if (exec == Exec::parallel)
        parallel::gram(vecs, out);
    else
        serial::gram(vecs, out);
}

} // namespace qrepro::kernels
