#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qrepro {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a documented invariant (non-unitary matrix, bad norm, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Mismatched sizes between states, operator lists and games.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Unreadable, unwritable or malformed file.
class IoError : public Error {
public:
    using Error::Error;
};

/// The output states of a (state, assignment) pair are not pairwise orthogonal,
/// so no projective measurement can tell them apart.
class DistinguishabilityError : public Error {
public:
    DistinguishabilityError(double max_offdiag, std::pair<std::size_t, std::size_t> worst_pair);

    double max_offdiag() const noexcept { return max_offdiag_; }
    std::pair<std::size_t, std::size_t> worst_pair() const noexcept { return worst_pair_; }

private:
    double max_offdiag_;
    std::pair<std::size_t, std::size_t> worst_pair_;
};

} // namespace qrepro
