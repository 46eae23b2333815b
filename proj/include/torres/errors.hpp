#pragma once

#include <stdexcept>
#include <string>

namespace torres {

// Malformed input: bad job documents, parse errors, out-of-range indices.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical precondition does not hold for otherwise well-formed input
// (non-complete fan, non-ample class, sections with a common zero, ...).
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed; indicates a bug, never bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace torres
