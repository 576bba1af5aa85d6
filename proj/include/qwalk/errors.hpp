#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Quadrature tolerance was not reached within the allowed refinements.
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evolution would bring probability within the safety margin of the ring
// wrap point, invalidating comparisons with infinite-lattice solutions.
struct LightConeOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A normalization bracket failed its positivity / reality checks.
struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A reduced density matrix lost hermiticity (upstream corruption).
struct NonHermitian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Least-squares fit attempted on degenerate abscissae.
struct DegenerateFit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed CLI token.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation not defined for the given model variant.
struct Unsupported : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace qwalk
