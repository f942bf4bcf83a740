#pragma once

#include <stdexcept>
#include <string>

namespace adp {

/// Invalid input: bad dimensions, out-of-range parameters, malformed files.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: non-finite values, failed residual checks.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear solve rejected; the message carries the condition diagnostic.
struct SolverError : NumericError {
    using NumericError::NumericError;
};

/// Kronecker-lifted computation exceeds the configured size cap.
struct OracleCapacityError : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace adp
