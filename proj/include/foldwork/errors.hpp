#pragma once

#include <stdexcept>
#include <string>

namespace foldwork {

/// Malformed instance or arguments (CLI exit code 2).
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The crease pattern has no local flat folding at all.
struct NoLocalFolding : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exhaustive search would exceed its configured budget (exit code 3).
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecompositionInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Witness requested for an instance with no flat folding.
struct NoWitness : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RoutingInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputNotCubicBipartite : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// Side lengths outside the regime where the circle center is enclosed.
struct PreconditionViolated : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct ApexAngleExcess : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct PoleTooShort : InvalidInput {
    using InvalidInput::InvalidInput;
};

}  // namespace foldwork
