#pragma once

#include <stdexcept>
#include <string>

namespace magband {

/// Base class for all numerical errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter outside the supported evaluation range.
struct OutOfRange : Error { using Error::Error; };

/// No evaluation branch can reach the requested accuracy.
struct LossOfAccuracy : Error { using Error::Error; };

/// Gamma-function pole hit where the limit is not resolved.
struct PoleEncountered : Error { using Error::Error; };

/// Input outside the mathematical domain of the operation.
struct DomainError : Error { using Error::Error; };

/// Field pair (0,0) passed where a nonzero field is required.
struct ZeroFieldError : Error { using Error::Error; };

/// Gap formula for a non-split threshold applied to a split one.
struct SplitThresholdError : Error { using Error::Error; };

/// Splitting-pair formula applied to a field ratio not of the form
/// (2n-1)/(2m-1).
struct NotSplittingError : Error { using Error::Error; };

/// Splitting quadratic outside its validity region.
struct DiscriminantNonpositive : Error { using Error::Error; };

/// Iterative solve did not converge.
struct ConvergenceFailure : Error { using Error::Error; };

/// Root scan and oracle disagree on the root count.
struct BracketMiss : Error { using Error::Error; };

/// Discretization domain too small for the requested spectral window.
struct TruncationInadequate : Error { using Error::Error; };

} // namespace magband
