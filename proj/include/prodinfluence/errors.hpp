#pragma once

#include <stdexcept>

namespace prodinfluence {

/// Malformed user input: event-spec documents, rational strings, CLI values.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A broken internal contract. Always a bug, never a data problem.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace prodinfluence
