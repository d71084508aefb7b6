#pragma once

#include <stdexcept>
#include <string>

namespace netscale {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The caller supplied invalid input (bad graph, infeasible config, malformed
/// file). Maps to CLI exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

/// A numeric routine failed on input that passed validation (residual above
/// tolerance, no convergence). Maps to CLI exit code 1.
struct NumericError : Error {
    using Error::Error;
};

// -- graph construction --
struct EmptyGraph : ValidationError { using ValidationError::ValidationError; };
struct SelfLoop : ValidationError { using ValidationError::ValidationError; };
struct DuplicateEdge : ValidationError { using ValidationError::ValidationError; };
struct DisconnectedGraph : ValidationError { using ValidationError::ValidationError; };
struct NotASpanningTree : ValidationError { using ValidationError::ValidationError; };
struct NotATree : ValidationError { using ValidationError::ValidationError; };

// -- operators / analysis --
struct DimensionMismatch : ValidationError { using ValidationError::ValidationError; };
struct UnstablePair : ValidationError { using ValidationError::ValidationError; };
struct SingularTreeGram : NumericError { using NumericError::NumericError; };
struct SingularCycleGram : NumericError { using NumericError::NumericError; };
struct UnstableA : NumericError { using NumericError::NumericError; };
struct IllConditioned : NumericError { using NumericError::NumericError; };
struct RankDeficientZ : ValidationError { using ValidationError::ValidationError; };

// -- design --
struct InfeasibleMu : ValidationError { using ValidationError::ValidationError; };
struct NonConvergence : NumericError { using NumericError::NumericError; };

// -- simulation --
struct UnstableStep : ValidationError { using ValidationError::ValidationError; };
struct EmptyInput : ValidationError { using ValidationError::ValidationError; };

// -- file I/O --
struct ParseError : ValidationError { using ValidationError::ValidationError; };

}  // namespace netscale
