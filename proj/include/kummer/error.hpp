#pragma once

#include <stdexcept>
#include <string>

namespace kummer {

/// Argument outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// An iterative scheme (root solve, series, quadrature) failed to reach
/// its tolerance within the iteration budget. Never silent.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace kummer
