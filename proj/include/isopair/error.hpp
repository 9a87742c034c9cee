#pragma once

#include <stdexcept>
#include <string>

namespace isopair {

/// Malformed input: bad dimensions, out-of-domain parameters, unparsable files.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A mathematical check on otherwise well-formed input failed (non-normal
/// cross-commutator, broken projection identity, ...).
class CheckFailure : public std::runtime_error {
public:
    explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace isopair
