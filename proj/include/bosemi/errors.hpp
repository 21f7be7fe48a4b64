#pragma once

#include <stdexcept>
#include <string>

namespace bosemi {

/// Invalid input or parameter outside a function's stated domain.
/// The CLI maps this family to exit code 2.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Mode/site index outside [0, L-1].
struct index_error : domain_error {
    using domain_error::domain_error;
};

/// Subsystem size outside [1, L-1] (or [1, L] where a full block is legal).
struct partition_error : domain_error {
    using domain_error::domain_error;
};

/// Request for a documented-but-not-implemented analytic branch
/// (integer-order small-k expansion).
struct unsupported_branch_error : domain_error {
    using domain_error::domain_error;
};

/// Series evaluated at a point where it diverges, e.g. g_v(1) with v <= 1.
struct divergence_error : domain_error {
    using domain_error::domain_error;
};

/// Correlation-matrix eigenvalue below the roundoff clip window;
/// signals a genuinely invalid state or matrix rather than noise.
struct positivity_error : domain_error {
    using domain_error::domain_error;
};

/// Truncated probability spectrum left more than the allowed tail mass.
struct tail_mass_error : domain_error {
    using domain_error::domain_error;
};

/// Parameters do not fall into exactly one asymptotic regime.
struct classification_error : domain_error {
    using domain_error::domain_error;
};

/// Fewer data points than a fit requires. CLI exit code 3.
struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iteration/term cap reached before the tolerance; carries the last
/// estimate so callers can still inspect how far the computation got.
/// CLI exit code 4.
struct convergence_error : std::runtime_error {
    convergence_error(const std::string& what, double last)
        : std::runtime_error(what), last_estimate(last) {}
    double last_estimate;
};

}  // namespace bosemi
