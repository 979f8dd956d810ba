#pragma once

#include <stdexcept>
#include <string>

namespace peculiar {

/// Iterative root finding or Newton refinement failed to reach tolerance.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// System construction refused: dense sigma expansion would be too large.
struct CapacityExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The prime divides the leading coefficient, so the mod-p degree drops.
struct BadPrime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bezout number exceeds the configured path budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failed paths remain after the automatic gamma retry, or a clustered
/// endpoint fails its independent residual re-check.
struct QualityFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two clusters sit within 10x dedup_tol of each other; the caller must
/// refine at higher precision instead of trusting the split.
struct AmbiguousClustering : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A census count exceeds its Proposition-2 bound. Signals a solver bug.
struct BoundViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace peculiar
