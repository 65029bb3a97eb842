#pragma once

#include <stdexcept>
#include <string>

namespace commidx {

// Error taxonomy mirrors the CLI exit-code contract:
//   InputError -> 1, PreconditionError -> 2, CapExceeded -> 3.
// Property-check failures (exit 4) are reported, not thrown.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed algebraic data: bad invariant factors, non-associative structure
// constants, matrices that are not homomorphisms, broken group tables.
struct BadDefinition : InputError {
    using InputError::InputError;
};

struct RankMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotASublattice : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct SingularMatrix : PreconditionError {
    using PreconditionError::PreconditionError;
};

// Carries which side of the map is infinite.
struct NotIsogeny : PreconditionError {
    bool kernel_infinite;
    bool cokernel_infinite;
    NotIsogeny(bool ker_inf, bool coker_inf)
        : PreconditionError(std::string("not an isogeny:") +
                            (ker_inf ? " infinite kernel" : "") +
                            (coker_inf ? " infinite cokernel" : "")),
          kernel_infinite(ker_inf),
          cokernel_infinite(coker_inf) {}
};

struct NotFinite : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct ObjectMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct EndpointMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotCommensurable : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct OrderNotSemisimple : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotInCommutant : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotSubmodule : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotPrimePower : PreconditionError {
    using PreconditionError::PreconditionError;
};

} // namespace commidx
