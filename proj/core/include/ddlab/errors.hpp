#pragma once

#include <stdexcept>
#include <string>

namespace ddlab {

// Bad arguments, malformed files, parameters outside a construction's range.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computation that should have succeeded did not (precision escalation
// exhausted, rejection sampling ran dry, inconsistent internal state).
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ddlab
